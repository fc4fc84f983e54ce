// Acceptance runner: prints one PASS/FAIL line per criterion, followed by
// indented measurements.
#include "ivme/driver.hpp"
#include "ivme/workload.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace ivme;

namespace {

// Pinned tolerances.
constexpr int kStreamsPerCell = 200;
constexpr std::size_t kMaxUpdates = 2000;
constexpr std::uint32_t kMaxDomain = 32;
constexpr double kDeleteFrac = 0.3;
constexpr double kAmortizedLow = 4.0;
constexpr double kAmortizedHigh = 8.0 * 1.5;
constexpr double kStarGrowth = 2.0;
constexpr double kConstantDelaySpread = 1.2;
constexpr double kDelayGrowth = 2.0 * 1.5;
constexpr double kDelaySkew = 1.5;
constexpr int kDelaySeeds = 5;
constexpr double kStaticHigh = 8.0 * 1.5;
constexpr int kTransparencyRuns = 100;
constexpr int kOumvInstances = 50;
constexpr int kFamilies = 1000;

const QueryKind kQueries[] = {QueryKind::nullary, QueryKind::nullary_double, QueryKind::unary,
                              QueryKind::binary, QueryKind::ternary};
const double kEpsilons[] = {0.0, 0.25, 0.5, 0.75, 1.0};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    notes.emplace_back(buf);
  }
};

void report(int id, const char* title, const Outcome& o, double seconds) {
  std::printf("[%s] %d %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, seconds);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

// Checks the size invariant, the loose part conditions and, for a sample of
// stored keys, the index bookkeeping.
std::string quick_invariants(const Engine& e, std::mt19937_64& rng) {
  const std::uint64_t N = e.base();
  if (!(N / 4 <= e.db_size() && e.db_size() < N)) return "size invariant";
  const Threshold th = e.threshold();
  for (int i = 0; i < 3; ++i) {
    const PartitionedRelation& k = e.partitions().at(i);
    if (!k.violations(th).empty()) return std::string("loose condition in ") + rel_name(k.rel());
    for (int p = 0; p < k.part_count(); ++p) {
      const IndexedRelation& part = k.part(p);
      if (part.empty()) continue;
      // Sample one stored tuple and check it against every index.
      auto id = part.first();
      for (std::uint64_t steps = rng() % part.size(); steps > 0; --steps) id = part.next(id);
      const Tuple& t = part.tuple(id);
      if (part.mult(id) <= 0) return "non-positive multiplicity";
      for (int idx = 0; idx < part.index_count(); ++idx)
        if (!part.check_key(idx, part.project(idx, t))) return "index bookkeeping";
    }
  }
  for (const auto& [name, rel] : e.views().relations()) {
    if (rel->empty()) continue;
    auto id = rel->first();
    for (std::uint64_t steps = rng() % rel->size(); steps > 0; --steps) id = rel->next(id);
    if (rel->mult(id) == 0) return "zero multiplicity in " + name;
    for (int idx = 0; idx < rel->index_count(); ++idx)
      if (!rel->check_key(idx, rel->project(idx, rel->tuple(id)))) return "index bookkeeping in " + name;
  }
  return {};
}

// Criteria 1 and 2 share their runs.
void oracle_and_invariants(Outcome& c1, Outcome& c2) {
  std::size_t streams = 0, updates = 0, mismatches = 0, violations = 0, full_checks = 0;
  std::size_t majors = 0, minors = 0;
  std::mt19937_64 sampler(7);
  std::string first_mismatch, first_violation;
  for (QueryKind q : kQueries) {
    for (double eps : kEpsilons) {
      for (int s = 0; s < kStreamsPerCell; ++s) {
        std::mt19937_64 pick(1000003ull * (static_cast<int>(q) + 1) + 1009ull * s +
                             static_cast<std::uint64_t>(eps * 100));
        WorkloadSpec w;
        w.seed = pick();
        w.domain = 2 + static_cast<std::uint32_t>(pick() % (kMaxDomain - 1));
        // Stream lengths are log-uniform between 50 and the maximum.
        w.updates = static_cast<std::size_t>(
            50.0 * std::pow(kMaxUpdates / 50.0, std::uniform_real_distribution<double>(0, 1)(pick)));
        w.delete_frac = kDeleteFrac;
        w.max_mult = 1 + static_cast<std::uint32_t>(pick() % 2);
        if (s % 3 == 1) w.skew = Skew{true, 1.0};
        if (s % 3 == 2) w.skew = Skew{true, 1.5};

        Engine e(q, eps);
        PlainDatabase db;
        const int k = query_arity(q);
        bool stream_ok = true;
        const auto ups = generate_workload(w);
        for (std::size_t i = 0; i < ups.size(); ++i) {
          db.apply(ups[i]);
          e.on_update(ups[i]);
          ++updates;
          if (stream_ok && e.result() != oracle_triangle(db, k)) {
            stream_ok = false;
            ++mismatches;
            if (first_mismatch.empty())
              first_mismatch = std::string(query_name(q)) + " eps=" + std::to_string(eps) +
                               " seed=" + std::to_string(w.seed) + " update " + std::to_string(i + 1);
          }
          std::string inv = quick_invariants(e, sampler);
          if (i + 1 == ups.size()) {
            inv += e.check_invariants();
            ++full_checks;
          }
          if (!inv.empty()) {
            ++violations;
            if (first_violation.empty()) first_violation = std::string(query_name(q)) + ": " + inv;
          }
        }
        majors += e.major_count();
        minors += e.minor_count();
        ++streams;
      }
    }
  }
  c1.pass = mismatches == 0 && streams == 5 * 5 * kStreamsPerCell;
  c1.note("%zu streams, %zu updates, result compared with the oracle after every update", streams,
          updates);
  c1.note("%zu major and %zu minor rebalancing steps exercised", majors, minors);
  c1.note("mismatching streams: %zu%s%s", mismatches, first_mismatch.empty() ? "" : ", first: ",
          first_mismatch.c_str());
  c2.pass = violations == 0;
  c2.note("checked after each of %zu updates (sampled index keys), full check at %zu stream ends",
          updates, full_checks);
  c2.note("violations: %zu%s%s", violations, first_violation.empty() ? "" : ", first: ",
          first_violation.c_str());
}

std::vector<Update> uniform_inserts(std::size_t n, std::uint32_t domain, std::uint64_t seed) {
  WorkloadSpec w;
  w.seed = seed;
  w.domain = domain;
  w.updates = n;
  return generate_workload(w);
}

void amortized_scaling(Outcome& o) {
  const std::size_t sizes[] = {1u << 10, 1u << 12, 1u << 14};
  for (QueryKind q : kQueries) {
    double prev = 0;
    std::string line = std::string(query_name(q)) + ":";
    for (std::size_t n : sizes) {
      const auto dom = static_cast<std::uint32_t>(std::lround(std::sqrt(double(n))));
      Engine e(q, 0.5);
      for (const auto& u : uniform_inserts(n, dom, 31)) e.on_update(u);
      const double total = static_cast<double>(e.meter().total());
      char buf[96];
      if (prev > 0) {
        const double r = total / prev;
        if (r < kAmortizedLow || r > kAmortizedHigh) o.pass = false;
        std::snprintf(buf, sizeof buf, " n=%zu total=%.0f (x%.2f)", n, total, r);
      } else {
        std::snprintf(buf, sizeof buf, " n=%zu total=%.0f", n, total);
      }
      line += buf;
      prev = total;
    }
    o.note("%s", line.c_str());
  }
  o.note("eps=0.5 uniform inserts: required %.1f <= total(4n)/total(n) <= %.1f", kAmortizedLow,
         kAmortizedHigh);

  // Star around one hub: every probe update on R(hub, b0) joins n S-tuples
  // with n T-tuples.
  for (QueryKind q : kQueries) {
    double prev = 0, worst = 1e9;
    std::string line = std::string(query_name(q)) + ":";
    for (int lg = 10; lg <= 14; ++lg) {
      const Value n = Value{1} << lg;
      Engine e(q, 1.0);
      for (Value c = 1; c <= n; ++c) {
        e.on_update(Rel::S, 1, c, 1);
        e.on_update(Rel::T, c, 0, 1);
      }
      for (int k = 0; k < 8; ++k) e.on_update(Rel::R, 0, 1, k % 2 ? -1 : 1);
      const double mx = static_cast<double>(e.meter().max_update_cost());
      char buf[96];
      if (prev > 0) {
        worst = std::min(worst, mx / prev);
        std::snprintf(buf, sizeof buf, " %u:%.0f(x%.4f)", n, mx, mx / prev);
      } else {
        std::snprintf(buf, sizeof buf, " %u:%.0f", n, mx);
      }
      line += buf;
      prev = mx;
    }
    if (worst < kStarGrowth) o.pass = false;
    o.note("%s", line.c_str());
  }
  o.note("eps=1 star: required max per-update cost growth >= %.1fx per doubling", kStarGrowth);
}

// Inserts random tuples until the database holds target distinct tuples.
Engine fill_to(QueryKind q, double eps, std::size_t target, std::uint64_t seed, const Skew& skew) {
  Engine e(q, eps);
  WorkloadSpec w;
  w.seed = seed;
  w.domain = static_cast<std::uint32_t>(2 * std::ceil(std::sqrt(double(target))));
  w.updates = 200 * target;
  w.skew = skew;
  for (const auto& u : generate_workload(w)) {
    if (e.db_size() == target) break;
    if (e.partitions()[u.rel].lookup(Tuple::of(u.x, u.y)) == 0) e.on_update(u);
  }
  if (e.db_size() != target) throw std::runtime_error("could not reach the target size");
  return e;
}

// Zipf skew 1.5 keeps heavy parts non-empty at every measured size, so every
// enumeration path is exercised. The reported delay is the maximum over
// kDelaySeeds databases per size.
void enumeration_delay(Outcome& o) {
  const std::size_t sizes[] = {1u << 10, 1u << 12, 1u << 14};
  const Skew skew{true, kDelaySkew};
  struct Case {
    QueryKind q;
    double eps;
    bool constant;
  };
  const Case cases[] = {{QueryKind::nullary, 0.5, true},
                        {QueryKind::ternary, 0.5, true},
                        {QueryKind::binary, 0.5, false},
                        {QueryKind::unary, 0.25, false}};
  for (const auto& c : cases) {
    std::vector<double> delays;
    std::string line = std::string(query_name(c.q)) + " eps=" + std::to_string(c.eps).substr(0, 4) + ":";
    for (std::size_t n : sizes) {
      std::uint64_t worst = 0;
      for (int seed = 1; seed <= kDelaySeeds; ++seed)
        worst = std::max(worst, measure_delay(fill_to(c.q, c.eps, n, seed, skew)).max_delay);
      delays.push_back(static_cast<double>(worst));
      char buf[64];
      std::snprintf(buf, sizeof buf, " |D|=%zu delay=%llu", n, static_cast<unsigned long long>(worst));
      line += buf;
    }
    if (c.constant) {
      const double spread = *std::max_element(delays.begin(), delays.end()) /
                            *std::min_element(delays.begin(), delays.end());
      if (spread > kConstantDelaySpread) o.pass = false;
      char buf[48];
      std::snprintf(buf, sizeof buf, " spread=%.2f", spread);
      line += buf;
    } else {
      for (std::size_t i = 1; i < delays.size(); ++i) {
        const double r = delays[i] / delays[i - 1];
        if (r > kDelayGrowth) o.pass = false;
        char buf[48];
        std::snprintf(buf, sizeof buf, " x%.2f", r);
        line += buf;
      }
    }
    o.note("%s", line.c_str());
  }
  o.note("%s inserts, max over %d seeds per size", to_string(skew).c_str(), kDelaySeeds);
  o.note("required: constant-delay spread <= %.1f, growth per 4x size <= %.1f", kConstantDelaySpread,
         kDelayGrowth);
}

void rebalance_transparency(Outcome& o) {
  std::size_t events = 0, diffs = 0, majors = 0, minors = 0;
  for (int run = 0; run < kTransparencyRuns; ++run) {
    std::mt19937_64 pick(5000 + run);
    const QueryKind q = kQueries[run % 5];
    const double eps = kEpsilons[1 + (run / 5) % 3];
    WorkloadSpec w;
    w.seed = pick();
    w.domain = 4 + static_cast<std::uint32_t>(pick() % 16);
    w.updates = 1000;
    w.delete_frac = kDeleteFrac;
    w.skew = Skew{true, 1.2};
    Engine e(q, eps);
    ResultMap before;
    e.set_rebalance_hook([&](RebalanceKind kind, bool is_before) {
      if (is_before) {
        before = e.result();
        return;
      }
      ++events;
      (kind == RebalanceKind::major ? majors : minors) += 1;
      if (e.result() != before) ++diffs;
    });
    for (const auto& u : generate_workload(w)) e.on_update(u);
  }
  o.pass = diffs == 0 && minors > 0 && majors > 0;
  o.note("%d runs, %zu rebalancing steps (%zu major, %zu minor), differing snapshots: %zu",
         kTransparencyRuns, events, majors, minors, diffs);
}

void oumv(Outcome& o) {
  std::mt19937_64 rng(64);
  std::size_t rounds = 0, wrong = 0;
  std::uint64_t cost64 = 0;
  for (int inst = 0; inst < kOumvInstances; ++inst) {
    const std::size_t n = inst == 0 ? 64 : 1 + rng() % 64;
    const double density = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
    std::bernoulli_distribution bit(density), vbit(0.2);
    BitMatrix M(n, BitVector(n));
    for (auto& row : M)
      for (auto& b : row) b = bit(rng);
    std::vector<std::pair<BitVector, BitVector>> rs;
    for (std::size_t r = 0; r < n; ++r) {
      BitVector u(n), v(n);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = vbit(rng);
        v[i] = vbit(rng);
      }
      rs.emplace_back(std::move(u), std::move(v));
    }
    const OumvRun run = solve_oumv(M, rs);
    for (std::size_t r = 0; r < n; ++r) {
      ++rounds;
      if (run.bits[r] != oracle_oumv(M, rs[r].first, rs[r].second)) ++wrong;
    }
    if (n == 64) cost64 = std::max(cost64, run.total_cost);
  }
  o.pass = wrong == 0;
  o.note("%d instances, %zu rounds, wrong bits: %zu", kOumvInstances, rounds, wrong);
  o.note("advisory: total cost at n=64 is %llu vs n^3 = %d (%s)",
         static_cast<unsigned long long>(cost64), 64 * 64 * 64,
         cost64 < 64u * 64u * 64u ? "below" : "not below");
}

void static_ternary_check(Outcome& o) {
  double prev = 0;
  for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 12}) {
    PlainDatabase db;
    WorkloadSpec w;
    w.seed = 909;
    w.domain = static_cast<std::uint32_t>(std::lround(std::sqrt(double(n))));
    w.updates = 40 * n;
    for (const auto& u : generate_workload(w)) {
      if (db.size() == n) break;
      if (db.lookup(u.rel, u.x, u.y) == 0) db.apply(u);
    }
    const ResultMap expect = oracle_triangle(db, 3);
    const StaticRun normal = static_ternary(db, 0.5, false);
    const StaticRun pre = static_ternary(db, 0.5, true);
    const bool equal = normal.result == expect && pre.result == expect;
    if (!equal || pre.rebalance_cost != 0 || db.size() != n) o.pass = false;
    const double total = static_cast<double>(normal.total_cost);
    double ratio = prev > 0 ? total / prev : 0;
    if (prev > 0 && ratio > kStaticHigh) o.pass = false;
    o.note("|D|=%zu triangles=%zu equal=%s total=%.0f%s pre-classified rebalance cost=%llu", db.size(),
           expect.size(), equal ? "yes" : "no", total,
           prev > 0 ? (" (x" + std::to_string(ratio).substr(0, 5) + ")").c_str() : "",
           static_cast<unsigned long long>(pre.rebalance_cost));
    prev = total;
  }
  o.note("required: oracle equality, cost ratio <= %.1f, zero rebalancing cost when pre-classified",
         kStaticHigh);
}

std::vector<Elem> drain(SetIterator& it) {
  std::vector<Elem> out;
  while (auto e = it.next()) out.push_back(*e);
  return out;
}

void union_primitives(Outcome& o) {
  std::mt19937_64 rng(8);
  std::size_t bad_union = 0, bad_hop = 0;
  for (int f = 0; f < kFamilies; ++f) {
    std::vector<std::vector<Elem>> sets(1 + rng() % 6);
    const Elem universe = 1 + rng() % 24;
    std::set<Elem> expect;
    for (auto& s : sets) {
      std::vector<Elem> all(universe);
      for (Elem i = 0; i < universe; ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      s.assign(all.begin(), all.begin() + rng() % (universe + 1));
      expect.insert(s.begin(), s.end());
    }
    std::vector<std::unique_ptr<SetIterator>> owned;
    std::vector<SetIterator*> its;
    for (const auto& s : sets) {
      owned.push_back(std::make_unique<VectorSetIterator>(VectorCollection(s)));
      its.push_back(owned.back().get());
    }
    std::vector<Elem> u;
    while (auto e = union_next(its)) u.push_back(*e);
    if (u.size() != expect.size() || std::set<Elem>(u.begin(), u.end()) != expect) ++bad_union;

    HopUnionIterator<VectorBucketSource> h{VectorBucketSource(sets)};
    auto v = drain(h);
    if (v.size() != expect.size() || std::set<Elem>(v.begin(), v.end()) != expect) ++bad_hop;
  }

  const std::vector<std::vector<Elem>> buckets = {{1, 2, 3}, {4, 1, 5}, {2, 5, 3}, {6, 4}};
  VectorBucketSource src(buckets, nullptr, [buckets](Elem e, std::vector<Elem>& out) {
    for (std::size_t i = 0; i < buckets.size(); ++i)
      if (std::find(buckets[i].begin(), buckets[i].end(), e) != buckets[i].end()) out.push_back(i);
  });
  HopUnionIterator<VectorBucketSource> ex(std::move(src));
  const auto emitted = drain(ex);
  const bool example_ok = emitted == std::vector<Elem>{1, 2, 3, 4, 5, 6} && ex.bucket_excluded(2);

  o.pass = bad_union == 0 && bad_hop == 0 && example_ok;
  o.note("%d random families: union_next wrong on %zu, hop union wrong on %zu", kFamilies,
         bad_union, bad_hop);
  std::string seq;
  for (Elem e : emitted) seq += " b" + std::to_string(e);
  o.note("worked example emitted%s, third bucket skipped: %s", seq.c_str(),
         ex.bucket_excluded(2) ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
  // Criteria listed after --allow-fail are reported but do not change the
  // exit status.
  std::set<int> allowed;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--allow-fail") == 0 && i + 1 < argc) allowed.insert(std::atoi(argv[++i]));

  using clock = std::chrono::steady_clock;
  bool ok = true;
  auto run = [&](int id, const char* title, auto&& fn) {
    Outcome o;
    const auto t0 = clock::now();
    fn(o);
    report(id, title, o, std::chrono::duration<double>(clock::now() - t0).count());
    if (!o.pass && !allowed.contains(id)) ok = false;
  };

  Outcome c1, c2;
  const auto t0 = clock::now();
  oracle_and_invariants(c1, c2);
  const double shared = std::chrono::duration<double>(clock::now() - t0).count();
  report(1, "oracle equivalence", c1, shared);
  report(2, "invariants after every update", c2, shared);
  ok = ok && (c1.pass || allowed.contains(1)) && (c2.pass || allowed.contains(2));

  run(3, "amortized update scaling", amortized_scaling);
  run(4, "enumeration delay", enumeration_delay);
  run(5, "rebalance transparency", rebalance_transparency);
  run(6, "OuMv reduction", oumv);
  run(7, "static full query through inserts", static_ternary_check);
  run(8, "union and hop-union primitives", union_primitives);
  return ok ? 0 : 1;
}
