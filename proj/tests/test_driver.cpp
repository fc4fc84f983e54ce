#include <doctest.h>

#include "ivme/workload.hpp"
#include "test_util.hpp"

using namespace ivme;
using ivme::test::sorted;

namespace {

// Eight distinct S tuples bring N to 16 (theta = 4 at eps = 1/2) without
// touching R.
Engine engine_at_base_16(QueryKind q = QueryKind::nullary) {
  Engine e(q, 0.5);
  for (Value b = 0; b < 8; ++b) e.on_update(Rel::S, 100 + b, 0, 1);
  return e;
}

}  // namespace

TEST_CASE("affected part") {
  Engine zero(QueryKind::nullary, 0.0);
  CHECK(zero.affected_part(Rel::R, 1, 1) == kH);
  Engine half(QueryKind::nullary, 0.5);
  CHECK(half.affected_part(Rel::R, 1, 1) == kL);
  Engine dbl(QueryKind::nullary_double, 0.0);
  CHECK(dbl.affected_part(Rel::S, 1, 1) == kHH);

  Engine d(QueryKind::nullary_double, 0.5);
  for (Value c = 0; c < 8; ++c) d.on_update(Rel::R, 50 + c, 7, 1);
  // B-value 7 is heavy in R and light in S's first position.
  CHECK(d.partitions()[Rel::R].heavy_on(1, 7));
  CHECK(d.affected_part(Rel::R, 50, 7) == kLH);
  CHECK(d.affected_part(Rel::R, 99, 7) == kLH);
  CHECK(d.affected_part(Rel::R, 99, 98) == kLL);
}

TEST_CASE("first insert doubles the base") {
  Engine e(QueryKind::ternary, 0.5);
  CHECK(e.base() == 1);
  e.on_update(Rel::R, 1, 2, 1);
  CHECK(e.base() == 2);
  CHECK(e.major_count() == 1);
  CHECK(e.check_invariants().empty());
}

TEST_CASE("minor rebalancing promotes and demotes a value") {
  Engine e = engine_at_base_16();
  REQUIRE(e.base() == 16);
  REQUIRE(e.threshold().theta == doctest::Approx(4.0));
  const auto majors = e.major_count();
  for (Value b = 0; b < 5; ++b) e.on_update(Rel::R, 1, b, 1);
  CHECK(e.minor_count() == 0);
  CHECK(e.partitions()[Rel::R].light_on(0, 1));
  e.on_update(Rel::R, 1, 5, 1);
  CHECK(e.minor_count() == 1);
  CHECK(e.move_apply_calls() == 12);
  CHECK(e.partitions()[Rel::R].heavy_on(0, 1));
  CHECK(e.partitions()[Rel::R].part(kH).size() == 6);

  for (Value b = 0; b < 4; ++b) e.on_update(Rel::R, 1, b, -1);
  CHECK(e.minor_count() == 1);
  e.on_update(Rel::R, 1, 4, -1);
  CHECK(e.minor_count() == 2);
  CHECK(e.move_apply_calls() == 14);
  CHECK(e.partitions()[Rel::R].light_on(0, 1));
  CHECK(e.major_count() == majors);
  CHECK(e.check_invariants().empty());
  CHECK(e.check_views().empty());
}

TEST_CASE("move_tuples issues two apply calls per tuple and keeps views exact") {
  Engine e = engine_at_base_16(QueryKind::binary);
  for (Value b = 0; b < 3; ++b) {
    e.on_update(Rel::R, 1, 100 + b, 1);
    e.on_update(Rel::T, 0, 1, 1);
  }
  const auto before = sorted(e.result());
  REQUIRE_FALSE(before.empty());
  const auto calls = e.move_apply_calls();
  e.move_tuples(Rel::R, 0, 1, kL, kH);
  CHECK(e.move_apply_calls() - calls == 6);
  CHECK(sorted(e.result()) == before);
  CHECK(e.check_views().empty());
}

TEST_CASE("rejected deletes leave the state unchanged") {
  Engine e = ivme::test::engine_with(QueryKind::unary, 0.5, {{Rel::R, 1, 1, 1}});
  const auto version = e.version();
  const auto base = e.base();
  CHECK_THROWS_AS(e.on_update(Rel::R, 1, 1, -2), RejectedDelete);
  CHECK_THROWS_AS(e.on_update(Rel::S, 1, 1, -1), RejectedDelete);
  CHECK_THROWS_AS(e.on_update(Rel::S, 1, 1, 0), std::invalid_argument);
  CHECK(e.version() == version);
  CHECK(e.base() == base);
  CHECK(e.db_size() == 1);
}

TEST_CASE("shrinking halves the base") {
  Engine e(QueryKind::nullary, 0.5);
  for (Value i = 0; i < 20; ++i) e.on_update(Rel::R, i, i, 1);
  CHECK(e.base() == 32);
  for (Value i = 0; i < 20; ++i) {
    e.on_update(Rel::R, i, i, -1);
    CHECK(e.check_invariants().empty());
  }
  CHECK(e.db_size() == 0);
  CHECK(e.base() == 2);
}

TEST_CASE("invariants and transparency along random streams") {
  std::size_t minors = 0;
  for (QueryKind q : ivme::test::kAllQueries) {
    for (double eps : {0.25, 0.5, 0.75}) {
      WorkloadSpec w;
      w.seed = 11;
      w.domain = 12;
      w.updates = 600;
      w.delete_frac = 0.3;
      w.skew = Skew{true, 1.2};
      Engine e(q, eps);
      std::map<Tuple, Mult> snapshot;
      std::size_t diffs = 0;
      e.set_rebalance_hook([&](RebalanceKind, bool before) {
        auto now = sorted(e.result());
        if (before)
          snapshot = now;
        else if (now != snapshot)
          ++diffs;
      });
      std::size_t bad = 0;
      for (const auto& u : generate_workload(w)) {
        e.on_update(u);
        if (!e.check_invariants().empty()) ++bad;
      }
      CAPTURE(query_name(q));
      CHECK(bad == 0);
      CHECK(diffs == 0);
      minors += e.minor_count();
    }
  }
  CHECK(minors > 0);
}

TEST_CASE("building from a database") {
  WorkloadSpec w;
  w.seed = 3;
  w.domain = 10;
  w.updates = 300;
  PlainDatabase db;
  for (const auto& u : generate_workload(w)) db.apply(u);
  for (QueryKind q : ivme::test::kAllQueries) {
    Engine e = Engine::from_database(q, 0.5, db);
    CHECK(e.base() == 2 * db.size() + 1);
    CHECK(e.check_invariants().empty());
    CHECK(sorted(e.result()) == sorted(oracle_triangle(db, query_arity(q))));

    Engine p = Engine::preclassified(q, 0.5, db);
    CHECK(p.check_invariants().empty());
    CHECK(p.meter().bucket(Phase::major) + p.meter().bucket(Phase::minor) == 0);
    CHECK(sorted(p.result()) == sorted(oracle_triangle(db, query_arity(q))));
  }
}
