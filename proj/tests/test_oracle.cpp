#include <doctest.h>

#include "ivme/oracle.hpp"

using namespace ivme;

TEST_CASE("oracle on tiny databases") {
  PlainDatabase db;
  db.apply(Rel::R, 1, 1, 1);
  db.apply(Rel::S, 1, 1, 1);
  db.apply(Rel::T, 1, 1, 1);
  CHECK(oracle_count(db) == 1);
  CHECK(oracle_triangle(db, 3) == ResultMap{{Tuple::of(1, 1, 1), 1}});

  PlainDatabase w;
  w.apply(Rel::R, 1, 1, 2);
  w.apply(Rel::S, 1, 1, 3);
  w.apply(Rel::T, 1, 1, 1);
  CHECK(oracle_triangle(w, 1) == ResultMap{{Tuple::of(1), 6}});
  CHECK(oracle_triangle(w, 0) == ResultMap{{Tuple::of(), 6}});

  // Two triangles sharing the R edge (1,1) through C-values 1 and 2.
  PlainDatabase two;
  two.apply(Rel::R, 1, 1, 1);
  two.apply(Rel::S, 1, 1, 1);
  two.apply(Rel::S, 1, 2, 1);
  two.apply(Rel::T, 1, 1, 1);
  two.apply(Rel::T, 2, 1, 1);
  CHECK(oracle_triangle(two, 2) == ResultMap{{Tuple::of(1, 1), 2}});

  CHECK(oracle_triangle(PlainDatabase(), 0).empty());
  CHECK_THROWS_AS(db.apply(Rel::R, 1, 1, -2), RejectedDelete);
}

TEST_CASE("count is invariant under rotating the relations") {
  PlainDatabase db, rot;
  const std::vector<std::tuple<int, Value, Value>> tuples = {
      {0, 1, 2}, {0, 2, 2}, {1, 2, 3}, {1, 2, 4}, {2, 3, 1}, {2, 4, 2}, {2, 3, 2}};
  for (auto [r, a, b] : tuples) {
    db.apply(rel_at(r), a, b, 1);
    rot.apply(rel_at(r + 2), a, b, 1);
  }
  CHECK(oracle_count(db) == oracle_count(rot));
  CHECK(oracle_count(db) == 3);
}

TEST_CASE("oumv oracle") {
  CHECK(oracle_oumv({{1, 0}, {0, 0}}, {1, 0}, {1, 0}));
  CHECK_FALSE(oracle_oumv({{1, 0}, {0, 0}}, {1, 0}, {0, 1}));
  CHECK(oracle_oumv({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {1, 0, 0}, {1, 0, 0}));
  CHECK_THROWS_AS(oracle_oumv({{1, 0}, {0, 0}}, {1}, {1, 0}), DimensionMismatch);
}
