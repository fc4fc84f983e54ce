#include "ivme/driver.hpp"
#include "ivme/workload.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace ivme;

namespace {

struct Options {
  std::string query = "d0";
  double epsilon = 0.5;
  bool double_partition = false;
  std::uint64_t seed = 1;
  std::size_t updates = 1000;
  std::uint32_t domain = 32;
  double delete_frac = 0.0;
  std::string skew = "uniform";
  std::string stream;
  std::string out;
  std::size_t cadence = 0;
  std::vector<double> epsilons;
  std::vector<std::size_t> sizes;
  std::string matrix, vectors, db;
  bool preclassified = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Update> load_updates(const Options& o) {
  if (!o.stream.empty()) return read_stream_file(o.stream);
  WorkloadSpec spec;
  spec.seed = o.seed;
  spec.domain = o.domain;
  spec.updates = o.updates;
  spec.delete_frac = o.delete_frac;
  spec.skew = parse_skew(o.skew);
  return generate_workload(spec);
}

std::map<Tuple, Mult> sorted(const ResultMap& r) { return {r.begin(), r.end()}; }

void dump_result(const Engine& e, std::ostream& out) {
  if (query_arity(e.query()) == 0) {
    out << "count " << e.count() << "\n";
    return;
  }
  for (const auto& [t, m] : sorted(e.result())) out << to_string(t) << " " << m << "\n";
}

void write_metrics(const Options& o, const std::vector<MetricsRow>& rows) {
  std::ostringstream csv;
  csv << metrics_header() << "\n";
  for (const auto& r : rows) csv << metrics_csv(r) << "\n";
  if (o.out.empty()) {
    std::cerr << csv.str();
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << csv.str();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const Options& o) {
  const QueryKind q = parse_query(o.query, o.double_partition);
  const auto updates = load_updates(o);
  const auto t0 = std::chrono::steady_clock::now();
  Engine e(q, o.epsilon);
  std::size_t applied = 0, rejected = 0;
  for (const auto& u : updates) {
    try {
      e.on_update(u);
      ++applied;
    } catch (const RejectedDelete& err) {
      ++rejected;
      std::cerr << "warning: " << err.what() << "\n";
    }
  }
  const DelayStats d = measure_delay(e);
  const double wall = ms_since(t0);
  dump_result(e, std::cout);
  if (rejected) std::cerr << rejected << " rejected deletes skipped\n";
  write_metrics(o, {metrics_of(e, applied, d.max_delay, wall)});
  return 0;
}

int cmd_verify(const Options& o) {
  const QueryKind q = parse_query(o.query, o.double_partition);
  const auto updates = load_updates(o);
  const int k = query_arity(q);
  const auto t0 = std::chrono::steady_clock::now();
  Engine e(q, o.epsilon);
  PlainDatabase db;
  std::size_t applied = 0, rejected = 0, checks = 0;
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const Update& u = updates[i];
    try {
      db.apply(u);
    } catch (const RejectedDelete&) {
      ++rejected;
      bool engine_rejected = false;
      try {
        e.on_update(u);
      } catch (const RejectedDelete&) {
        engine_rejected = true;
      }
      if (!engine_rejected) {
        std::cout << "FAIL at update " << i + 1 << ": engine accepted an invalid delete\n";
        return 1;
      }
      continue;
    }
    e.on_update(u);
    ++applied;
    const bool due = o.cadence ? (i + 1) % o.cadence == 0 : (db.size() <= 200 || (i + 1) % 50 == 0);
    if (!due && i + 1 != updates.size()) continue;
    ++checks;
    if (sorted(e.result()) != sorted(oracle_triangle(db, k))) {
      std::cout << "FAIL at update " << i + 1 << " (" << format_update(u)
                << "): result differs from the oracle\n";
      return 1;
    }
    if (auto s = e.check_invariants(); !s.empty()) {
      std::cout << "FAIL at update " << i + 1 << ": " << s;
      return 1;
    }
  }
  std::cout << "PASS " << query_name(q) << " eps=" << o.epsilon << " updates=" << applied
            << " rejected=" << rejected << " checks=" << checks << "\n";
  if (!o.out.empty()) write_metrics(o, {metrics_of(e, applied, 0, ms_since(t0))});
  return 0;
}

int cmd_bench(const Options& o) {
  const QueryKind q = parse_query(o.query, o.double_partition);
  std::vector<double> eps = o.epsilons.empty() ? std::vector<double>{o.epsilon} : o.epsilons;
  std::vector<std::size_t> sizes = o.sizes.empty() ? std::vector<std::size_t>{o.updates} : o.sizes;
  std::sort(eps.begin(), eps.end());
  std::sort(sizes.begin(), sizes.end());
  std::vector<MetricsRow> rows;
  for (double ep : eps) {
    for (std::size_t n : sizes) {
      WorkloadSpec spec;
      spec.seed = o.seed;
      spec.domain = o.domain;
      spec.updates = n;
      spec.delete_frac = o.delete_frac;
      spec.skew = parse_skew(o.skew);
      const auto updates = generate_workload(spec);
      const auto t0 = std::chrono::steady_clock::now();
      Engine e(q, ep);
      for (const auto& u : updates) e.on_update(u);
      const DelayStats d = measure_delay(e);
      rows.push_back(metrics_of(e, updates.size(), d.max_delay, ms_since(t0)));
    }
  }
  std::ostringstream csv;
  csv << metrics_header() << "\n";
  for (const auto& r : rows) csv << metrics_csv(r) << "\n";
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << csv.str();
  }
  return 0;
}

int cmd_oumv(const Options& o) {
  std::ifstream mf(o.matrix), vf(o.vectors);
  if (!mf) throw UsageError("cannot open " + o.matrix);
  if (!vf) throw UsageError("cannot open " + o.vectors);
  const BitMatrix M = parse_matrix(mf);
  const auto rounds = parse_vectors(vf, M.size());
  if (rounds.size() > M.size()) throw DimensionMismatch("more than n rounds");
  const OumvRun run = solve_oumv(M, rounds, o.epsilon);
  bool ok = true;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    std::cout << (run.bits[r] ? 1 : 0) << "\n";
    ok = ok && run.bits[r] == oracle_oumv(M, rounds[r].first, rounds[r].second);
  }
  std::cerr << "updates=" << run.updates << " cost=" << run.total_cost << "\n";
  if (!ok) std::cerr << "FAIL: output differs from the direct evaluation\n";
  return ok ? 0 : 1;
}

int cmd_static(const Options& o) {
  PlainDatabase db;
  for (const auto& u : read_stream_file(o.db)) db.apply(u);
  const StaticRun run = static_ternary(db, o.epsilon, o.preclassified);
  for (const auto& [t, m] : sorted(run.result)) std::cout << to_string(t) << " " << m << "\n";
  std::cerr << "db_size=" << db.size() << " total=" << run.total_cost
            << " rebalance=" << run.rebalance_cost << " max_delay=" << run.max_delay << "\n";
  bool ok = sorted(run.result) == sorted(oracle_triangle(db, 3));
  if (o.preclassified && run.rebalance_cost != 0) ok = false;
  if (!ok) std::cerr << "FAIL\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental maintenance of triangle queries"};
  app.require_subcommand(1);
  Options o;

  auto add_query = [&](CLI::App* c) {
    c->add_option("--query", o.query, "d0, d1, d2 or d3")
        ->check(CLI::IsMember({"d0", "d1", "d2", "d3"}));
    c->add_option("--epsilon", o.epsilon, "heavy/light exponent in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    c->add_flag("--double-partition", o.double_partition, "double partitions (d0 only)");
  };
  auto add_workload = [&](CLI::App* c) {
    c->add_option("--seed", o.seed);
    c->add_option("--updates", o.updates);
    c->add_option("--domain", o.domain)->check(CLI::PositiveNumber);
    c->add_option("--delete-frac", o.delete_frac)->check(CLI::Range(0.0, 1.0));
    c->add_option("--skew", o.skew, "uniform or zipf:<s>");
    c->add_option("--out", o.out, "metrics CSV path");
  };

  auto* run = app.add_subcommand("run", "apply a stream and print the final result");
  add_query(run);
  add_workload(run);
  run->add_option("--stream", o.stream, "update stream file");

  auto* verify = app.add_subcommand("verify", "compare with the oracle while replaying a stream");
  add_query(verify);
  add_workload(verify);
  verify->add_option("--stream", o.stream, "update stream file");
  verify->add_option("--verify-cadence", o.cadence, "compare after every k-th update");

  auto* bench = app.add_subcommand("bench", "cost counters for insert-only workloads");
  add_query(bench);
  add_workload(bench);
  bench->add_option("--epsilons", o.epsilons, "list of epsilons")->delimiter(',');
  bench->add_option("--sizes", o.sizes, "list of update counts")->delimiter(',');

  auto* oumv = app.add_subcommand("oumv", "online vector-matrix-vector products");
  oumv->add_option("--matrix", o.matrix)->required();
  oumv->add_option("--vectors", o.vectors)->required();
  oumv->add_option("--epsilon", o.epsilon)->check(CLI::Range(0.0, 1.0));

  auto* st = app.add_subcommand("static", "full triangle query through inserts");
  st->add_option("--db", o.db, "database in stream format")->required();
  st->add_option("--epsilon", o.epsilon)->check(CLI::Range(0.0, 1.0));
  st->add_flag("--preclassified", o.preclassified, "assign final parts up front");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run) return cmd_run(o);
    if (*verify) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
    if (*oumv) return cmd_oumv(o);
    if (*st) return cmd_static(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
