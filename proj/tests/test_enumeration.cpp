#include <doctest.h>

#include "ivme/enumeration.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace ivme;

namespace {

std::vector<Elem> drain_union(const std::vector<std::vector<Elem>>& sets) {
  std::vector<std::unique_ptr<SetIterator>> owned;
  std::vector<SetIterator*> its;
  for (const auto& s : sets) {
    owned.push_back(std::make_unique<VectorSetIterator>(VectorCollection(s)));
    its.push_back(owned.back().get());
  }
  std::vector<Elem> out;
  while (auto e = union_next(its)) out.push_back(*e);
  return out;
}

std::vector<Elem> drain(SetIterator& it) {
  std::vector<Elem> out;
  while (auto e = it.next()) out.push_back(*e);
  return out;
}

// Buckets named by the worked example: V(a_i, B) for i = 1..4 with b_j = j.
std::vector<std::vector<Elem>> example_buckets() {
  return {{1, 2, 3}, {4, 1, 5}, {2, 5, 3}, {6, 4}};
}

std::vector<std::vector<Elem>> random_family(std::mt19937_64& rng) {
  std::vector<std::vector<Elem>> sets(1 + rng() % 6);
  const Elem universe = 1 + rng() % 20;
  for (auto& s : sets) {
    std::vector<Elem> all(universe);
    for (Elem i = 0; i < universe; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    s.assign(all.begin(), all.begin() + rng() % (universe + 1));
  }
  return sets;
}

}  // namespace

TEST_CASE("union_next emits each element once") {
  CHECK(drain_union({{1, 2}, {2, 3}}) == std::vector<Elem>{1, 2, 3});
  CHECK(drain_union({{}, {7}}) == std::vector<Elem>{7});
  CHECK(drain_union({{1}, {1}, {1}}) == std::vector<Elem>{1});
  CHECK(drain_union({}).empty());
}

const std::optional<std::optional<Elem>> kToEnd{std::in_place};

TEST_CASE("hop iterator skips excluded elements") {
  HopIterator<VectorCollection> it(VectorCollection({4, 1, 5}));
  CHECK(it.exclude(1));
  CHECK(it.next_hop() == Elem{4});
  CHECK(it.next_hop() == Elem{5});
  CHECK_FALSE(it.next_hop());

  HopIterator<VectorCollection> same(VectorCollection({4, 1, 5}));
  CHECK_FALSE(same.exclude(9));
  CHECK(same.skip_count() == 0);

  // Adjacent exclusions collapse into one hop from 4's successor to EOF.
  HopIterator<VectorCollection> adj(VectorCollection({4, 1, 5}));
  adj.exclude(1);
  adj.exclude(5);
  CHECK(adj.skip_to(1) == kToEnd);
  CHECK(adj.next_hop() == Elem{4});
  CHECK_FALSE(adj.next_hop());
  CHECK_FALSE(adj.exclude(5));
  CHECK_FALSE(adj.is_empty());
  adj.exclude(4);
  CHECK(adj.is_empty());
}

TEST_CASE("hop union reproduces the worked example") {
  auto sets = example_buckets();
  VectorBucketSource src(sets, nullptr, [sets](Elem e, std::vector<Elem>& out) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (std::find(sets[i].begin(), sets[i].end(), e) != sets[i].end()) out.push_back(i);
  });
  HopUnionIterator<VectorBucketSource> it(std::move(src));

  std::vector<Elem> out;
  for (int i = 0; i < 3; ++i) out.push_back(*it.next());
  CHECK(out == std::vector<Elem>{1, 2, 3});
  // End of the first stage.
  CHECK(it.bucket(1).skip_to(1) == std::optional<std::optional<Elem>>(Elem{5}));
  CHECK(it.bucket(2).skip_to(2) == std::optional<std::optional<Elem>>(Elem{5}));
  CHECK(it.bucket(2).skip_to(3) == kToEnd);

  while (auto e = it.next()) out.push_back(*e);
  CHECK(out == std::vector<Elem>{1, 2, 3, 4, 5, 6});
  CHECK(it.bucket_excluded(2));
  CHECK(it.bucket(2).skip_to(2) == kToEnd);
  CHECK_FALSE(it.bucket_excluded(3));
}

TEST_CASE("hop union small cases") {
  HopUnionIterator<VectorBucketSource> one(VectorBucketSource({{3, 1, 2}}));
  CHECK(drain(one) == std::vector<Elem>{3, 1, 2});
  HopUnionIterator<VectorBucketSource> two(VectorBucketSource({{1}, {2}}));
  CHECK(drain(two) == std::vector<Elem>{1, 2});
  HopUnionIterator<VectorBucketSource> none(VectorBucketSource({}));
  CHECK(drain(none).empty());
}

TEST_CASE("random families: both unions emit exactly the distinct union") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 1000; ++round) {
    auto sets = random_family(rng);
    std::set<Elem> expect;
    for (const auto& s : sets) expect.insert(s.begin(), s.end());

    auto u = drain_union(sets);
    CHECK(std::set<Elem>(u.begin(), u.end()) == expect);
    CHECK(u.size() == expect.size());

    HopUnionIterator<VectorBucketSource> h{VectorBucketSource(sets)};
    auto v = drain(h);
    CHECK(std::set<Elem>(v.begin(), v.end()) == expect);
    CHECK(v.size() == expect.size());
    for (Elem e = 0; e < 21; ++e) CHECK(h.contains(e) == expect.contains(e));
  }
}
