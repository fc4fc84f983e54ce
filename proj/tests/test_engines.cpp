#include <doctest.h>

#include "ivme/engines.hpp"
#include "ivme/workload.hpp"
#include "test_util.hpp"

#include <random>
#include <set>

using namespace ivme;
using ivme::test::sorted;

namespace {

const std::initializer_list<Update> kTriangle = {
    {Rel::R, 1, 1, 1}, {Rel::S, 1, 1, 1}, {Rel::T, 1, 1, 1}};
const std::initializer_list<Update> kWeighted = {
    {Rel::R, 1, 1, 2}, {Rel::S, 1, 1, 3}, {Rel::T, 1, 1, 1}};

Tuple canonical_prefix(int k) {
  switch (k) {
    case 0: return Tuple::of();
    case 1: return Tuple::of(1);
    case 2: return Tuple::of(1, 1);
    default: return Tuple::of(1, 1, 1);
  }
}

template <class V>
const V& views_as(const Engine& e) {
  return dynamic_cast<const V&>(e.views());
}

}  // namespace

TEST_CASE("empty engines") {
  for (QueryKind q : ivme::test::kAllQueries) {
    Engine e(q, 0.5);
    CHECK(e.base() == 1);
    CHECK(e.count() == 0);
    CHECK(e.result().empty());
    for (const auto& [name, rel] : e.views().relations()) CHECK(rel->empty());
  }
}

TEST_CASE("single triangle and multiplicities") {
  for (QueryKind q : ivme::test::kAllQueries) {
    CAPTURE(query_name(q));
    const int k = query_arity(q);
    for (double eps : {0.0, 0.5, 1.0}) {
      Engine e = ivme::test::engine_with(q, eps, kTriangle);
      CHECK(sorted(e.result()) == std::map<Tuple, Mult>{{canonical_prefix(k), 1}});
      e.on_update(Rel::T, 1, 1, -1);
      CHECK(e.result().empty());
      CHECK(e.count() == 0);

      Engine w = ivme::test::engine_with(q, eps, kWeighted);
      CHECK(sorted(w.result()) == std::map<Tuple, Mult>{{canonical_prefix(k), 6}});
      CHECK(w.count() == 6);
    }
  }
}

TEST_CASE("nullary count trace") {
  Engine e(QueryKind::nullary, 0.5);
  e.on_update(Rel::R, 1, 1, 1);
  e.on_update(Rel::S, 1, 1, 1);
  CHECK(e.count() == 0);
  e.on_update(Rel::T, 1, 1, 1);
  CHECK(e.count() == 1);
  e.on_update(Rel::T, 1, 1, -1);
  CHECK(e.count() == 0);
}

TEST_CASE("classical recovery: all tuples light at eps=1, heavy at eps=0") {
  Engine light = ivme::test::engine_with(QueryKind::ternary, 1.0, kTriangle);
  const auto& lv = views_as<TernaryViews>(light);
  CHECK(lv.lll().rel().size() == 1);
  CHECK(lv.hhh().rel().empty());

  Engine heavy = ivme::test::engine_with(QueryKind::ternary, 0.0, kTriangle);
  const auto& hv = views_as<TernaryViews>(heavy);
  CHECK(hv.hhh().rel().size() == 1);
  CHECK(hv.lll().rel().empty());

  Engine binary = ivme::test::engine_with(QueryKind::binary, 1.0, kTriangle);
  CHECK(views_as<BinaryViews>(binary).terms()[1].rel().lookup(Tuple::of(1, 1)) == 1);
  Engine unary = ivme::test::engine_with(QueryKind::unary, 1.0, kTriangle);
  CHECK(views_as<UnaryViews>(unary).terms()[1].rel().lookup(Tuple::of(1)) == 1);
}

TEST_CASE("binary: pairs sharing an edge") {
  // Two triangles over the same (a,b) with different C-values.
  Engine e = ivme::test::engine_with(QueryKind::binary, 0.5,
                                     {{Rel::R, 1, 1, 1},
                                      {Rel::S, 1, 1, 1},
                                      {Rel::S, 1, 2, 1},
                                      {Rel::T, 1, 1, 1},
                                      {Rel::T, 2, 1, 1}});
  CHECK(sorted(e.result()) == std::map<Tuple, Mult>{{Tuple::of(1, 1), 2}});
  Engine m = ivme::test::engine_with(QueryKind::binary, 0.5,
                                     {{Rel::R, 1, 1, 1}, {Rel::S, 1, 1, 2}, {Rel::T, 1, 1, 1}});
  CHECK(sorted(m.result()) == std::map<Tuple, Mult>{{Tuple::of(1, 1), 2}});
}

TEST_CASE("engines match the oracle on random streams") {
  std::mt19937_64 rng(99);
  for (QueryKind q : ivme::test::kAllQueries) {
    for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CAPTURE(query_name(q));
      CAPTURE(eps);
      for (int run = 0; run < 6; ++run) {
        WorkloadSpec w;
        w.seed = rng();
        w.domain = 2 + static_cast<std::uint32_t>(rng() % 8);
        w.updates = 250;
        w.delete_frac = 0.3;
        w.max_mult = 1 + static_cast<std::uint32_t>(rng() % 3);
        if (run % 2) w.skew = Skew{true, 1.0};
        Engine e(q, eps);
        PlainDatabase db;
        bool ok = true;
        for (const auto& u : generate_workload(w)) {
          db.apply(u);
          e.on_update(u);
          if (sorted(e.result()) != sorted(oracle_triangle(db, query_arity(q)))) {
            ok = false;
            break;
          }
        }
        CHECK(ok);
        CHECK(e.check_views().empty());
        CHECK(e.check_invariants().empty());
      }
    }
  }
}

TEST_CASE("enumeration has no duplicates") {
  WorkloadSpec w;
  w.seed = 5;
  w.domain = 6;
  w.updates = 400;
  w.skew = Skew{true, 1.5};
  for (QueryKind q : {QueryKind::unary, QueryKind::binary, QueryKind::ternary}) {
    Engine e(q, 0.5);
    for (const auto& u : generate_workload(w)) e.on_update(u);
    std::set<Tuple> seen;
    auto cur = e.open();
    std::size_t rows = 0;
    while (auto r = cur->next()) {
      CHECK(r->m > 0);
      seen.insert(r->t);
      ++rows;
    }
    CHECK(rows == seen.size());
    CHECK(rows > 0);
  }
}

TEST_CASE("cursors go stale after an update") {
  Engine e = ivme::test::engine_with(QueryKind::ternary, 0.5, kTriangle);
  auto cur = e.open();
  e.on_update(Rel::R, 2, 2, 1);
  CHECK_THROWS_AS(cur->next(), StaleIterator);
}
