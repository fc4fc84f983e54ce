#include <doctest.h>

#include "ivme/indexed_relation.hpp"

using namespace ivme;

namespace {

IndexedRelation ab(CostMeter* meter = nullptr) {
  return IndexedRelation(Schema{Var::A, Var::B}, {Schema{Var::A}, Schema{Var::B}}, meter);
}

std::vector<Tuple> slice(const IndexedRelation& k, int idx, Value v) {
  std::vector<Tuple> out;
  k.for_each_slice(idx, Tuple::of(v), [&](const Tuple& t, Mult) { out.push_back(t); });
  return out;
}

}  // namespace

TEST_CASE("apply_delta inserts, cancels and rejects") {
  IndexedRelation k = ab();
  CHECK(k.apply_delta(Tuple::of(1, 1), 1) == 1);
  CHECK(k.apply_delta(Tuple::of(1, 1), 1) == 2);
  CHECK(k.apply_delta(Tuple::of(1, 1), -2) == 0);
  CHECK(k.empty());
  CHECK(k.slice_count(0, Tuple::of(1)) == 0);

  k.apply_delta(Tuple::of(1, 1), 1);
  CHECK_THROWS_AS(k.apply_delta(Tuple::of(1, 1), -2), RejectedDelete);
  CHECK(k.lookup(Tuple::of(1, 1)) == 1);
  CHECK_THROWS_AS(k.apply_delta(Tuple::of(9, 9), -1), RejectedDelete);
  CHECK_THROWS_AS(k.apply_delta(Tuple::of(1, 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(k.apply_delta(Tuple::of(1), 1), std::invalid_argument);
  CHECK(k.check_consistency().empty());
}

TEST_CASE("lookup") {
  IndexedRelation k = ab();
  CHECK(k.lookup(Tuple::of(1, 1)) == 0);
  k.apply_delta(Tuple::of(1, 1), 3);
  CHECK(k.lookup(Tuple::of(1, 1)) == 3);
  CHECK(k.lookup(Tuple::of(2, 1)) == 0);
}

TEST_CASE("slices follow insertion order and count distinct tuples") {
  IndexedRelation k = ab();
  k.apply_delta(Tuple::of(1, 1), 1);
  k.apply_delta(Tuple::of(1, 2), 5);
  k.apply_delta(Tuple::of(2, 1), 1);
  CHECK(slice(k, 0, 1) == std::vector<Tuple>{Tuple::of(1, 1), Tuple::of(1, 2)});
  CHECK(slice(k, 1, 1) == std::vector<Tuple>{Tuple::of(1, 1), Tuple::of(2, 1)});
  CHECK(slice(k, 0, 9).empty());
  CHECK(k.slice_count(0, Tuple::of(1)) == 2);
  CHECK(k.project_contains(0, Tuple::of(1)));
  CHECK_FALSE(k.project_contains(0, Tuple::of(9)));
  k.apply_delta(Tuple::of(1, 2), -5);
  CHECK(k.slice_count(0, Tuple::of(1)) == 1);
  CHECK(k.slice_count(Schema{Var::B}, Tuple::of(2)) == 0);
  CHECK_THROWS_AS(k.slice_count(Schema{Var::C}, Tuple::of(1)), MissingIndex);
  CHECK(k.check_consistency().empty());
}

TEST_CASE("entry iteration survives removals in the middle") {
  IndexedRelation k = ab();
  for (Value i = 0; i < 10; ++i) k.apply_delta(Tuple::of(i % 3, i), 1);
  for (Value i = 0; i < 10; i += 2) k.apply_delta(Tuple::of(i % 3, i), -1);
  std::vector<Value> seen;
  k.for_each([&](const Tuple& t, Mult m) {
    CHECK(m == 1);
    seen.push_back(t[1]);
  });
  CHECK(seen == std::vector<Value>{1, 3, 5, 7, 9});
  for (Value i = 10; i < 14; ++i) k.apply_delta(Tuple::of(0, i), 1);
  CHECK(k.size() == 9);
  CHECK(k.check_consistency().empty());
  k.clear();
  CHECK(k.empty());
  CHECK(k.first() == IndexedRelation::kNone);
}

TEST_CASE("every primitive costs one unit") {
  CostMeter meter;
  IndexedRelation k = ab(&meter);
  k.apply_delta(Tuple::of(1, 1), 1);
  CHECK(meter.total() == 1);
  k.lookup(Tuple::of(1, 1));
  CHECK(meter.total() == 2);
  k.slice_count(0, Tuple::of(1));
  CHECK(meter.total() == 3);
  auto id = k.slice_first(0, Tuple::of(1));
  CHECK(meter.total() == 4);
  k.slice_next(0, id);
  CHECK(meter.total() == 5);
  k.project_contains(1, Tuple::of(1));
  CHECK(meter.total() == 6);
}

TEST_CASE("cost meter phases") {
  CostMeter meter;
  {
    PhaseScope s(&meter, Phase::major);
    meter.tick(3);
    {
      PhaseScope inner(&meter, Phase::minor);
      meter.tick();
    }
    meter.tick();
  }
  meter.tick(2);
  CHECK(meter.bucket(Phase::major) == 4);
  CHECK(meter.bucket(Phase::minor) == 1);
  CHECK(meter.bucket(Phase::other) == 2);
  CHECK(meter.total() == 7);
  meter.record_update(5);
  meter.record_update(2);
  CHECK(meter.last_update_cost() == 2);
  CHECK(meter.max_update_cost() == 5);
}
