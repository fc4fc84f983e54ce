#pragma once

#include "ivme/driver.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ivme {

struct Skew {
  bool zipf = false;
  double s = 0.0;
};

// Accepts "uniform" or "zipf:<s>".
Skew parse_skew(const std::string& text);
std::string to_string(const Skew& skew);

struct WorkloadSpec {
  std::uint64_t seed = 1;
  std::uint32_t domain = 32;
  std::size_t updates = 1000;
  double delete_frac = 0.0;
  Skew skew;
  std::uint32_t max_mult = 1;
};

// Reproducible random stream. Deletes remove one unit of a tuple that is
// currently present, so the stream never underflows.
std::vector<Update> generate_workload(const WorkloadSpec& spec);

// One update per line: `<+|-> <R|S|T> <a> <b> [m]`. Lines starting with '#'
// and blank lines are skipped. Throws ParseError.
std::vector<Update> parse_stream(std::istream& in);
std::vector<Update> read_stream_file(const std::string& path);
std::string format_update(const Update& u);

// n followed by n rows of n bits.
BitMatrix parse_matrix(std::istream& in);
// 2n rows of n bits holding u_1, v_1, u_2, v_2, ...
std::vector<std::pair<BitVector, BitVector>> parse_vectors(std::istream& in, std::size_t n);

struct OumvRun {
  std::vector<bool> bits;
  std::uint64_t load_cost = 0;
  std::uint64_t total_cost = 0;
  std::size_t updates = 0;
};

// Answers each round with the triangle count of an incrementally maintained
// nullary engine: S holds M, R and T hold u and v around a fixed hub value.
OumvRun solve_oumv(const BitMatrix& M, const std::vector<std::pair<BitVector, BitVector>>& rounds,
                   double eps = 0.5);

struct StaticRun {
  ResultMap result;
  std::uint64_t total_cost = 0;
  std::uint64_t rebalance_cost = 0;
  std::uint64_t max_delay = 0;
};

// Evaluates the full triangle query by inserting every tuple into an empty
// engine, then enumerating.
StaticRun static_ternary(const PlainDatabase& db, double eps = 0.5, bool preclassified = false);

struct DelayStats {
  std::size_t rows = 0;
  std::uint64_t max_delay = 0;
  std::uint64_t total = 0;
};

// Enumerates the current result, tracking the largest number of counted
// operations between consecutive emissions (including before the first and
// after the last).
DelayStats measure_delay(const Engine& e);

struct MetricsRow {
  std::string query;
  double epsilon = 0;
  std::size_t db_size = 0;
  std::size_t updates = 0;
  std::uint64_t total = 0, apply = 0, major = 0, minor = 0, enumerate = 0;
  std::uint64_t max_update_cost = 0;
  std::uint64_t max_enum_delay = 0;
  double wall_ms = 0;
};

MetricsRow metrics_of(const Engine& e, std::size_t updates, std::uint64_t max_delay, double wall_ms);
std::string metrics_header();
std::string metrics_csv(const MetricsRow& r);

}  // namespace ivme
