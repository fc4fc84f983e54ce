#include "ivme/partition.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

namespace ivme {

const char* part_name(bool is_double, int p) {
  static const char* single[] = {"H", "L"};
  static const char* dbl[] = {"HH", "HL", "LH", "LL"};
  return is_double ? dbl[p] : single[p];
}

PartitionedRelation::PartitionedRelation(Rel rel, bool is_double, CostMeter* meter)
    : rel_(rel), double_(is_double), schema_(schema_of(rel)), meter_(meter) {
  int n = is_double ? 4 : 2;
  for (int p = 0; p < n; ++p)
    parts_.push_back(std::make_unique<IndexedRelation>(
        schema_, std::vector<Schema>{Schema{schema_[0]}, Schema{schema_[1]}}, meter));
}

Mult PartitionedRelation::lookup(const Tuple& t) const {
  Mult m = 0;
  for (const auto& p : parts_) m += p->lookup(t);
  return m;
}

std::size_t PartitionedRelation::size() const {
  std::size_t n = 0;
  for (const auto& p : parts_) n += p->size();
  return n;
}

std::size_t PartitionedRelation::degree(int pos, Value v) const {
  std::size_t d = 0;
  for (const auto& p : parts_) d += p->slice_count(pos, Tuple::of(v));
  return d;
}

bool PartitionedRelation::part_heavy_on(bool is_double, int p, int pos) {
  if (!is_double) return p == kH;
  return pos == 0 ? (p == kHH || p == kHL) : (p == kHH || p == kLH);
}

int PartitionedRelation::part_for(bool is_double, bool first_heavy, bool second_heavy) {
  if (!is_double) return first_heavy ? kH : kL;
  return (first_heavy ? 0 : 2) + (second_heavy ? 0 : 1);
}

bool PartitionedRelation::heavy_on(int pos, Value v) const {
  for (int p = 0; p < part_count(); ++p)
    if (part_heavy_on(double_, p, pos) && parts_[p]->project_contains(pos, Tuple::of(v)))
      return true;
  return false;
}

bool PartitionedRelation::light_on(int pos, Value v) const {
  for (int p = 0; p < part_count(); ++p)
    if (!part_heavy_on(double_, p, pos) && parts_[p]->project_contains(pos, Tuple::of(v)))
      return true;
  return false;
}

std::vector<std::pair<Tuple, Mult>> PartitionedRelation::entries() const {
  std::vector<std::pair<Tuple, Mult>> out;
  for (const auto& p : parts_) {
    auto e = p->entries();
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

void PartitionedRelation::clear() {
  for (auto& p : parts_) p->clear();
}

void PartitionedRelation::strict_repartition(const Threshold& th) {
  std::vector<std::pair<Tuple, Mult>> all;
  for (const auto& p : parts_) {
    p->for_each([&](const Tuple& t, Mult m) { all.emplace_back(t, m); });
  }
  absl::flat_hash_map<Value, std::size_t> deg[2];
  for (const auto& [t, m] : all) {
    ivme::tick(meter_, 2);
    ++deg[0][t[0]];
    ++deg[1][t[1]];
  }
  clear();
  for (const auto& [t, m] : all) {
    ivme::tick(meter_, 2);
    bool h0 = th.strict_heavy(deg[0][t[0]]);
    bool h1 = th.strict_heavy(deg[1][t[1]]);
    parts_[part_for(double_, h0, h1)]->apply_delta(t, m);
  }
}

std::vector<Violation> PartitionedRelation::violations(const Threshold& th) const {
  std::vector<Violation> out;
  absl::flat_hash_set<std::pair<int, Value>> seen;
  for (int p = 0; p < part_count(); ++p) {
    for (const auto& [t, m] : parts_[p]->entries()) {
      for (int pos = 0; pos < 2; ++pos) {
        if (!partitioned_on(pos) || !seen.insert({pos, t[pos]}).second) continue;
        std::size_t d = double_ ? degree(pos, t[pos]) : parts_[p]->slice_count(pos, Tuple::of(t[pos]));
        if (part_heavy_on(double_, p, pos)) {
          if (th.heavy_too_small(d)) out.push_back({var(pos), t[pos], false});
        } else if (th.light_too_large(d)) {
          out.push_back({var(pos), t[pos], true});
        }
      }
    }
  }
  return out;
}

std::string PartitionedRelation::check_value_function() const {
  for (int pos = 0; pos < 2; ++pos) {
    if (!partitioned_on(pos)) continue;
    for (int p = 0; p < part_count(); ++p) {
      for (const auto& [t, m] : parts_[p]->entries()) {
        if (heavy_on(pos, t[pos]) && light_on(pos, t[pos]))
          return std::string("value ") + std::to_string(t[pos]) + " of " + var_name(var(pos)) +
                 " in " + rel_name(rel_) + " is both heavy and light";
      }
    }
  }
  return {};
}

namespace {

PartitionedRelation strict_partition(const IndexedRelation& k, Rel rel, bool dbl, double theta,
                                     CostMeter* meter) {
  if (!(k.schema() == schema_of(rel)))
    throw std::invalid_argument("relation schema does not match partition target");
  PartitionedRelation out(rel, dbl, meter);
  k.for_each([&](const Tuple& t, Mult m) { out.part(0).apply_delta(t, m); });
  Threshold th{1, 0.0, theta};
  out.strict_repartition(th);
  return out;
}

}  // namespace

PartitionedRelation strict_partition_single(const IndexedRelation& k, Rel rel, double theta,
                                            CostMeter* meter) {
  return strict_partition(k, rel, false, theta, meter);
}

PartitionedRelation strict_partition_double(const IndexedRelation& k, Rel rel, double theta,
                                            CostMeter* meter) {
  return strict_partition(k, rel, true, theta, meter);
}

}  // namespace ivme
