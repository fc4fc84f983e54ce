#pragma once

#include "ivme/indexed_relation.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace ivme {

struct Threshold {
  std::uint64_t N = 1;
  double eps = 0.5;
  double theta = 1.0;

  static Threshold make(std::uint64_t N, double eps) {
    return Threshold{N, eps, std::pow(static_cast<double>(N), eps)};
  }
  bool strict_heavy(std::size_t deg) const { return static_cast<double>(deg) >= theta; }
  // Loose conditions: heavy needs deg >= theta/2, light needs deg < 3 theta/2.
  bool heavy_too_small(std::size_t deg) const { return 2.0 * static_cast<double>(deg) < theta; }
  bool light_too_large(std::size_t deg) const {
    return 2.0 * static_cast<double>(deg) >= 3.0 * theta;
  }
};

// Part ids. Single partitions use kH/kL, double partitions kHH..kLL where the
// first letter refers to the first variable of the relation.
inline constexpr int kH = 0, kL = 1;
inline constexpr int kHH = 0, kHL = 1, kLH = 2, kLL = 3;

inline constexpr std::uint8_t part_bit(int p) { return static_cast<std::uint8_t>(1u << p); }
inline constexpr std::uint8_t kMaskH = part_bit(kH), kMaskL = part_bit(kL), kMaskAll1 = 0b11;
inline constexpr std::uint8_t kMaskHH = part_bit(kHH), kMaskHL = part_bit(kHL),
                              kMaskLH = part_bit(kLH), kMaskLL = part_bit(kLL);
inline constexpr std::uint8_t kMaskXH = kMaskHH | kMaskHL, kMaskXL = kMaskLH | kMaskLL,
                              kMaskAll2 = 0b1111;

const char* part_name(bool is_double, int p);

struct Violation {
  Var var;
  Value value;
  bool to_heavy;
  friend bool operator==(const Violation&, const Violation&) = default;
};

class PartitionedRelation {
 public:
  PartitionedRelation(Rel rel, bool is_double, CostMeter* meter = nullptr);

  Rel rel() const { return rel_; }
  bool is_double() const { return double_; }
  int part_count() const { return static_cast<int>(parts_.size()); }
  std::uint8_t all_mask() const { return double_ ? kMaskAll2 : kMaskAll1; }
  const Schema& schema() const { return schema_; }
  // Variable at position pos (0 = first, 1 = second) of the relation.
  Var var(int pos) const { return schema_[pos]; }

  IndexedRelation& part(int p) { return *parts_[p]; }
  const IndexedRelation& part(int p) const { return *parts_[p]; }

  Mult lookup(const Tuple& t) const;
  std::size_t size() const;
  // Degree of value v at position pos, summed over all parts.
  std::size_t degree(int pos, Value v) const;
  bool heavy_on(int pos, Value v) const;
  bool light_on(int pos, Value v) const;
  bool partitioned_on(int pos) const { return pos == 0 || double_; }

  static bool part_heavy_on(bool is_double, int p, int pos);
  static int part_for(bool is_double, bool first_heavy, bool second_heavy);

  void strict_repartition(const Threshold& th);
  std::vector<Violation> violations(const Threshold& th) const;
  // Returns an empty string iff every value of a partition variable lives on
  // one side only.
  std::string check_value_function() const;
  std::vector<std::pair<Tuple, Mult>> entries() const;
  void clear();

 private:
  Rel rel_;
  bool double_;
  Schema schema_;
  std::vector<std::unique_ptr<IndexedRelation>> parts_;
  CostMeter* meter_;
};

// Strict partitions of a plain relation with the schema of rel.
PartitionedRelation strict_partition_single(const IndexedRelation& k, Rel rel, double theta,
                                            CostMeter* meter = nullptr);
PartitionedRelation strict_partition_double(const IndexedRelation& k, Rel rel, double theta,
                                            CostMeter* meter = nullptr);

}  // namespace ivme
