#include <doctest.h>

#include "ivme/partition.hpp"

#include <set>

using namespace ivme;

namespace {

IndexedRelation plain(std::initializer_list<std::pair<Value, Value>> tuples) {
  IndexedRelation k(schema_of(Rel::R), {Schema{Var::A}, Schema{Var::B}});
  for (auto [a, b] : tuples) k.apply_delta(Tuple::of(a, b), 1);
  return k;
}

std::set<Tuple> part_set(const PartitionedRelation& p, int part) {
  std::set<Tuple> out;
  p.part(part).for_each([&](const Tuple& t, Mult) { out.insert(t); });
  return out;
}

Threshold theta(double th) { return Threshold{16, 0.5, th}; }

}  // namespace

TEST_CASE("strict single partition") {
  IndexedRelation k = plain({{1, 1}, {1, 2}, {1, 3}, {2, 1}});
  auto p = strict_partition_single(k, Rel::R, 2.0);
  CHECK(part_set(p, kH) == std::set<Tuple>{Tuple::of(1, 1), Tuple::of(1, 2), Tuple::of(1, 3)});
  CHECK(part_set(p, kL) == std::set<Tuple>{Tuple::of(2, 1)});

  auto all_heavy = strict_partition_single(k, Rel::R, 1.0);
  CHECK(all_heavy.part(kL).empty());
  auto all_light = strict_partition_single(k, Rel::R, 5.0);
  CHECK(all_light.part(kH).empty());
  CHECK(all_light.lookup(Tuple::of(1, 2)) == 1);
}

TEST_CASE("strict double partition") {
  auto p = strict_partition_double(plain({{1, 1}, {1, 2}}), Rel::R, 2.0);
  CHECK(part_set(p, kHL).size() == 2);
  CHECK(p.part(kHH).empty());
  CHECK(p.part(kLH).empty());
  CHECK(p.part(kLL).empty());

  auto q = strict_partition_double(plain({{1, 1}}), Rel::R, 1.0);
  CHECK(part_set(q, kHH) == std::set<Tuple>{Tuple::of(1, 1)});

  auto r = strict_partition_double(plain({{1, 1}, {2, 1}}), Rel::R, 2.0);
  CHECK(part_set(r, kLH).size() == 2);
  CHECK(r.check_value_function().empty());
}

TEST_CASE("loose condition violations") {
  PartitionedRelation p(Rel::R, false);
  for (Value b = 0; b < 6; ++b) p.part(kL).apply_delta(Tuple::of(1, b), 1);
  auto v = p.violations(theta(4.0));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == Violation{Var::A, 1, true});

  PartitionedRelation h(Rel::R, false);
  h.part(kH).apply_delta(Tuple::of(1, 1), 1);
  h.part(kH).apply_delta(Tuple::of(1, 2), 1);
  CHECK(h.violations(theta(4.0)).empty());
  h.part(kH).apply_delta(Tuple::of(1, 2), -1);
  v = h.violations(theta(4.0));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == Violation{Var::A, 1, false});

  IndexedRelation k = plain({{1, 1}, {1, 2}, {1, 3}, {2, 1}, {3, 3}});
  for (double th : {1.0, 2.0, 2.5, 4.0}) {
    CHECK(strict_partition_single(k, Rel::R, th).violations(theta(th)).empty());
    CHECK(strict_partition_double(k, Rel::R, th).violations(theta(th)).empty());
  }
}

TEST_CASE("double partition checks total degree across parts") {
  PartitionedRelation p(Rel::S, true);
  // b = 7 is light on B, its tuples are spread over LH and LL.
  p.part(kLH).apply_delta(Tuple::of(7, 1), 1);
  p.part(kLH).apply_delta(Tuple::of(7, 2), 1);
  p.part(kLL).apply_delta(Tuple::of(7, 3), 1);
  CHECK(p.degree(0, 7) == 3);
  CHECK(p.light_on(0, 7));
  CHECK_FALSE(p.heavy_on(0, 7));
  auto v = p.violations(theta(2.0));
  bool found = false;
  for (const auto& x : v) found = found || (x == Violation{Var::B, 7, true});
  CHECK(found);
}

TEST_CASE("strict repartition restores strict conditions") {
  PartitionedRelation p(Rel::T, true);
  for (Value c = 0; c < 5; ++c) p.part(kLL).apply_delta(Tuple::of(c, 0), 1);
  p.part(kLL).apply_delta(Tuple::of(9, 1), 1);
  Threshold th = Threshold::make(9, 0.5);
  p.strict_repartition(th);
  CHECK(p.size() == 6);
  CHECK(p.part(kLH).size() == 5);
  CHECK(p.part(kLL).size() == 1);
  CHECK(p.violations(th).empty());
  CHECK(p.check_value_function().empty());
}

TEST_CASE("part routing helpers") {
  CHECK(PartitionedRelation::part_for(false, true, false) == kH);
  CHECK(PartitionedRelation::part_for(false, false, true) == kL);
  CHECK(PartitionedRelation::part_for(true, true, false) == kHL);
  CHECK(PartitionedRelation::part_for(true, false, true) == kLH);
  CHECK(PartitionedRelation::part_heavy_on(true, kLH, 1));
  CHECK_FALSE(PartitionedRelation::part_heavy_on(true, kLH, 0));
  Threshold th = Threshold::make(16, 0.5);
  CHECK(th.theta == doctest::Approx(4.0));
  CHECK(th.light_too_large(6));
  CHECK_FALSE(th.light_too_large(5));
  CHECK(th.heavy_too_small(1));
  CHECK_FALSE(th.heavy_too_small(2));
}
