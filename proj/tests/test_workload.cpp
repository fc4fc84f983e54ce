#include <doctest.h>

#include "ivme/workload.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace ivme;

TEST_CASE("workloads are reproducible and never underflow") {
  WorkloadSpec w;
  w.seed = 42;
  w.domain = 5;
  w.updates = 2000;
  w.delete_frac = 0.3;
  w.skew = parse_skew("zipf:1.3");
  auto a = generate_workload(w);
  auto b = generate_workload(w);
  REQUIRE(a.size() == 2000);
  std::size_t deletes = 0;
  PlainDatabase db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(format_update(a[i]) == format_update(b[i]));
    CHECK(a[i].x < 5);
    db.apply(a[i]);
    deletes += a[i].m < 0;
  }
  CHECK(deletes > 400);
  CHECK(deletes < 800);
  w.seed = 43;
  CHECK(format_update(generate_workload(w)[0]) != "");
}

TEST_CASE("skew parsing") {
  CHECK_FALSE(parse_skew("uniform").zipf);
  CHECK(parse_skew("zipf:0.8").s == doctest::Approx(0.8));
  CHECK_THROWS_AS(parse_skew("zipf:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_skew("gauss"), std::invalid_argument);
}

TEST_CASE("stream parsing") {
  std::istringstream in("# triangle\n+ R 1 2\n\n+ S 2 3 4  # weighted\n- T 3 1\n");
  auto ups = parse_stream(in);
  REQUIRE(ups.size() == 3);
  CHECK(ups[0].rel == Rel::R);
  CHECK(ups[1].m == 4);
  CHECK(ups[2].m == -1);
  CHECK(format_update(ups[1]) == "+ S 2 3 4");

  for (const char* bad : {"* R 1 2", "+ Q 1 2", "+ R 1", "+ R a 2", "+ R 1 2 0", "+ R 1 2 3 4"}) {
    std::istringstream b(std::string("+ R 1 1\n") + bad + "\n");
    try {
      parse_stream(b);
      FAIL("accepted " << bad);
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("oumv through the nullary engine") {
  std::istringstream m("2\n1 0\n0 0\n");
  BitMatrix M = parse_matrix(m);
  std::istringstream v("10\n10\n10\n01\n");
  auto rounds = parse_vectors(v, 2);
  REQUIRE(rounds.size() == 2);
  auto run = solve_oumv(M, rounds);
  CHECK(run.bits == std::vector<bool>{true, false});

  auto zero = solve_oumv({{0, 0}, {0, 0}}, rounds);
  CHECK(zero.bits == std::vector<bool>{false, false});

  std::istringstream short_row("2\n1\n0 0\n");
  CHECK_THROWS_AS(parse_matrix(short_row), DimensionMismatch);
  std::istringstream odd("10\n");
  CHECK_THROWS_AS(parse_vectors(odd, 2), ParseError);

  std::mt19937_64 rng(8);
  const std::size_t n = 32;
  BitMatrix R(n, BitVector(n));
  for (auto& row : R)
    for (auto& bit : row) bit = rng() % 10 == 0;
  std::vector<std::pair<BitVector, BitVector>> rr;
  for (std::size_t r = 0; r < n; ++r) {
    BitVector u(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = rng() % 8 == 0;
      w[i] = rng() % 8 == 0;
    }
    rr.emplace_back(u, w);
  }
  auto big = solve_oumv(R, rr);
  for (std::size_t r = 0; r < n; ++r) CHECK(big.bits[r] == oracle_oumv(R, rr[r].first, rr[r].second));
}

TEST_CASE("static ternary evaluation") {
  PlainDatabase one;
  one.apply(Rel::R, 1, 2, 1);
  one.apply(Rel::S, 2, 3, 1);
  one.apply(Rel::T, 3, 1, 1);
  auto run = static_ternary(one);
  CHECK(run.result == ResultMap{{Tuple::of(1, 2, 3), 1}});

  WorkloadSpec w;
  w.seed = 17;
  w.domain = 16;
  w.updates = 800;
  PlainDatabase db;
  for (const auto& u : generate_workload(w)) db.apply(u);
  auto normal = static_ternary(db);
  auto pre = static_ternary(db, 0.5, true);
  CHECK(ivme::test::sorted(normal.result) == ivme::test::sorted(oracle_triangle(db, 3)));
  CHECK(ivme::test::sorted(pre.result) == ivme::test::sorted(oracle_triangle(db, 3)));
  CHECK(normal.rebalance_cost > 0);
  CHECK(pre.rebalance_cost == 0);
}

TEST_CASE("metrics rows") {
  Engine e(QueryKind::nullary, 0.5);
  e.on_update(Rel::R, 1, 1, 1);
  auto row = metrics_of(e, 1, 0, 0.0);
  CHECK(row.total == e.meter().total());
  CHECK(row.apply + row.major + row.minor + row.enumerate <= row.total);
  std::string header = metrics_header();
  std::string line = metrics_csv(row);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(line.begin(), line.end(), ','));
  CHECK(line.rfind("d0,0.5,1,1,", 0) == 0);
}
