#include "ivme/workload.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace ivme {

Skew parse_skew(const std::string& text) {
  if (text == "uniform") return {};
  if (text.rfind("zipf:", 0) == 0) {
    const std::string num = text.substr(5);
    std::size_t used = 0;
    double s = 0;
    try {
      s = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == num.size() && used > 0 && s >= 0) return {true, s};
  }
  throw std::invalid_argument("skew must be uniform or zipf:<s>, got '" + text + "'");
}

std::string to_string(const Skew& skew) {
  if (!skew.zipf) return "uniform";
  std::ostringstream out;
  out << "zipf:" << skew.s;
  return out.str();
}

namespace {

class ValueSampler {
 public:
  ValueSampler(std::uint32_t domain, const Skew& skew) : domain_(domain) {
    if (domain == 0) throw std::invalid_argument("domain must be positive");
    if (!skew.zipf) return;
    cdf_.resize(domain);
    double acc = 0;
    for (std::uint32_t k = 0; k < domain; ++k) {
      acc += 1.0 / std::pow(static_cast<double>(k + 1), skew.s);
      cdf_[k] = acc;
    }
    for (double& c : cdf_) c /= acc;
  }

  Value operator()(std::mt19937_64& rng) const {
    if (cdf_.empty()) return static_cast<Value>(rng() % domain_);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<Value>(std::min<std::size_t>(it - cdf_.begin(), domain_ - 1));
  }

 private:
  std::uint32_t domain_;
  std::vector<double> cdf_;
};

struct LiveKey {
  Rel rel;
  Value x, y;
  friend bool operator==(const LiveKey&, const LiveKey&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const LiveKey& k) {
    return H::combine(std::move(h), static_cast<int>(k.rel), k.x, k.y);
  }
};

}  // namespace

std::vector<Update> generate_workload(const WorkloadSpec& spec) {
  std::seed_seq seq{spec.seed};
  std::array<std::uint64_t, 4> seeds{};
  seq.generate(seeds.begin(), seeds.end());
  std::mt19937_64 control(seeds[3]);
  std::array<std::mt19937_64, 3> per_rel{std::mt19937_64(seeds[0]), std::mt19937_64(seeds[1]),
                                         std::mt19937_64(seeds[2])};
  const ValueSampler sample(spec.domain, spec.skew);
  const std::uint32_t max_mult = std::max<std::uint32_t>(1, spec.max_mult);

  // Live tuples with their multiplicities; a vector plus position map gives
  // uniform sampling and O(1) removal.
  std::vector<std::pair<LiveKey, Mult>> live;
  absl::flat_hash_map<LiveKey, std::size_t> pos;

  std::vector<Update> out;
  out.reserve(spec.updates);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < spec.updates; ++i) {
    const bool del = !live.empty() && coin(control) < spec.delete_frac;
    if (del) {
      std::size_t j = control() % live.size();
      auto& [key, m] = live[j];
      out.push_back(Update{key.rel, key.x, key.y, -1});
      if (--m == 0) {
        pos[live.back().first] = j;
        pos.erase(key);
        live[j] = live.back();
        live.pop_back();
      }
    } else {
      const int r = static_cast<int>(control() % 3);
      auto& rng = per_rel[r];
      const Value x = sample(rng);
      const Value y = sample(rng);
      const Mult m = max_mult == 1 ? 1 : static_cast<Mult>(1 + rng() % max_mult);
      LiveKey key{rel_at(r), x, y};
      out.push_back(Update{key.rel, x, y, m});
      auto [it, fresh] = pos.try_emplace(key, live.size());
      if (fresh)
        live.emplace_back(key, m);
      else
        live[it->second].second += m;
    }
  }
  return out;
}

namespace {

bool parse_uint(const std::string& tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

}  // namespace

std::vector<Update> parse_stream(std::istream& in) {
  std::vector<Update> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string s; ls >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    if (tok.size() < 4 || tok.size() > 5)
      throw ParseError(lineno, "expected `<+|-> <R|S|T> <a> <b> [m]`");
    if (tok[0] != "+" && tok[0] != "-") throw ParseError(lineno, "sign must be + or -");
    Update u;
    if (tok[1].size() != 1 || tok[1].find_first_of("RST") != 0)
      throw ParseError(lineno, "unknown relation '" + tok[1] + "'");
    u.rel = parse_rel(tok[1][0]);
    std::uint64_t a, b, m = 1;
    if (!parse_uint(tok[2], a) || !parse_uint(tok[3], b) || a > UINT32_MAX || b > UINT32_MAX)
      throw ParseError(lineno, "values must be unsigned 32-bit integers");
    if (tok.size() == 5 && (!parse_uint(tok[4], m) || m == 0 || m > (1ull << 62)))
      throw ParseError(lineno, "multiplicity must be a positive integer");
    u.x = static_cast<Value>(a);
    u.y = static_cast<Value>(b);
    u.m = tok[0] == "+" ? static_cast<Mult>(m) : -static_cast<Mult>(m);
    out.push_back(u);
  }
  return out;
}

std::vector<Update> read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_stream(in);
}

std::string format_update(const Update& u) {
  std::ostringstream out;
  out << (u.m > 0 ? '+' : '-') << ' ' << rel_name(u.rel) << ' ' << u.x << ' ' << u.y;
  Mult m = u.m > 0 ? u.m : -u.m;
  if (m != 1) out << ' ' << m;
  return out.str();
}

namespace {

// Reads one row of bits, either as separated tokens or as a run of digits.
BitVector parse_bits(const std::string& line, std::size_t lineno) {
  BitVector row;
  for (char ch : line) {
    if (ch == '0' || ch == '1')
      row.push_back(static_cast<std::uint8_t>(ch - '0'));
    else if (!std::isspace(static_cast<unsigned char>(ch)) && ch != ',')
      throw ParseError(lineno, std::string("unexpected character '") + ch + "' in bit row");
  }
  return row;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

BitMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "missing dimension");
  std::uint64_t n;
  std::istringstream ls(line);
  std::string tok;
  ls >> tok;
  if (!parse_uint(tok, n) || n == 0 || n > 1u << 16) throw ParseError(lineno, "bad dimension");
  BitMatrix M;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!next_content_line(in, line, lineno))
      throw ParseError(lineno, "expected " + std::to_string(n) + " matrix rows");
    BitVector row = parse_bits(line, lineno);
    if (row.size() != n) throw DimensionMismatch("matrix row " + std::to_string(i + 1) +
                                                 " has " + std::to_string(row.size()) + " bits");
    M.push_back(std::move(row));
  }
  return M;
}

std::vector<std::pair<BitVector, BitVector>> parse_vectors(std::istream& in, std::size_t n) {
  std::vector<BitVector> rows;
  std::string line;
  std::size_t lineno = 0;
  while (next_content_line(in, line, lineno)) {
    BitVector row = parse_bits(line, lineno);
    if (row.size() != n)
      throw DimensionMismatch("vector on line " + std::to_string(lineno) + " has " +
                              std::to_string(row.size()) + " bits, expected " + std::to_string(n));
    rows.push_back(std::move(row));
  }
  if (rows.size() % 2 != 0) throw ParseError(lineno, "vector rows must come in (u, v) pairs");
  std::vector<std::pair<BitVector, BitVector>> out;
  for (std::size_t i = 0; i < rows.size(); i += 2) out.emplace_back(rows[i], rows[i + 1]);
  return out;
}

OumvRun solve_oumv(const BitMatrix& M, const std::vector<std::pair<BitVector, BitVector>>& rounds,
                   double eps) {
  const std::size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw DimensionMismatch("matrix is not square");
  Engine e(QueryKind::nullary, eps);
  OumvRun run;
  // Matrix indices live in 1..n, the hub value is 0.
  const Value hub = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (M[i][j]) {
        e.on_update(Rel::S, static_cast<Value>(i + 1), static_cast<Value>(j + 1), 1);
        ++run.updates;
      }
  run.load_cost = e.meter().total();
  for (const auto& [u, v] : rounds) {
    if (u.size() != n || v.size() != n) throw DimensionMismatch("vector length differs from n");
    for (std::size_t i = 0; i < n; ++i) {
      const Value val = static_cast<Value>(i + 1);
      Mult du = Mult{u[i]} - e.partitions()[Rel::R].lookup(Tuple::of(hub, val));
      if (du) {
        e.on_update(Rel::R, hub, val, du);
        ++run.updates;
      }
      Mult dv = Mult{v[i]} - e.partitions()[Rel::T].lookup(Tuple::of(val, hub));
      if (dv) {
        e.on_update(Rel::T, val, hub, dv);
        ++run.updates;
      }
    }
    run.bits.push_back(e.count() != 0);
  }
  run.total_cost = e.meter().total();
  return run;
}

DelayStats measure_delay(const Engine& e) {
  DelayStats st;
  const CostMeter& m = e.meter();
  const std::uint64_t start = m.total();
  std::uint64_t last = start;
  auto cur = e.open();
  while (true) {
    auto row = cur->next();
    const std::uint64_t now = m.total();
    st.max_delay = std::max(st.max_delay, now - last);
    last = now;
    if (!row) break;
    ++st.rows;
  }
  st.total = last - start;
  return st;
}

StaticRun static_ternary(const PlainDatabase& db, double eps, bool preclassified) {
  StaticRun run;
  auto finish = [&](const Engine& e) {
    DelayStats d = measure_delay(e);
    run.max_delay = d.max_delay;
    run.total_cost = e.meter().total();
    run.rebalance_cost = e.meter().bucket(Phase::major) + e.meter().bucket(Phase::minor);
    run.result = e.result();
  };
  if (preclassified) {
    Engine e = Engine::preclassified(QueryKind::ternary, eps, db);
    finish(e);
    return run;
  }
  Engine e(QueryKind::ternary, eps);
  for (int i = 0; i < 3; ++i)
    db[rel_at(i)].for_each([&](const Tuple& t, Mult m) { e.on_update(rel_at(i), t[0], t[1], m); });
  finish(e);
  return run;
}

MetricsRow metrics_of(const Engine& e, std::size_t updates, std::uint64_t max_delay, double wall_ms) {
  MetricsRow r;
  r.query = query_name(e.query());
  r.epsilon = e.epsilon();
  r.db_size = e.db_size();
  r.updates = updates;
  const CostMeter& m = e.meter();
  r.total = m.total();
  r.apply = m.bucket(Phase::apply);
  r.major = m.bucket(Phase::major);
  r.minor = m.bucket(Phase::minor);
  r.enumerate = m.bucket(Phase::enumerate);
  r.max_update_cost = m.max_update_cost();
  r.max_enum_delay = max_delay;
  r.wall_ms = wall_ms;
  return r;
}

std::string metrics_header() {
  return "query,epsilon,db_size,updates,total,apply,major,minor,enumerate,other,max_update_cost,"
         "max_enum_delay,wall_ms";
}

std::string metrics_csv(const MetricsRow& r) {
  std::ostringstream out;
  const std::uint64_t other = r.total - r.apply - r.major - r.minor - r.enumerate;
  out << r.query << ',' << r.epsilon << ',' << r.db_size << ',' << r.updates << ',' << r.total
      << ',' << r.apply << ',' << r.major << ',' << r.minor << ',' << r.enumerate << ',' << other
      << ',' << r.max_update_cost << ',' << r.max_enum_delay << ',' << std::fixed
      << std::setprecision(3) << r.wall_ms;
  return out.str();
}

}  // namespace ivme
