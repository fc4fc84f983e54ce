#include "ivme/engines.hpp"

namespace ivme {

UnaryViews::UnaryViews(const Partitions* parts, CostMeter* meter) : QueryViews(parts, meter) {
  terms_.emplace_back("D1_HHH",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskXH}, Factor{Rel::S, kMaskH},
                                            Factor{Rel::T, kMaskXH}},
                      1, meter);
  terms_.emplace_back("D1_LLL",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskXL}, Factor{Rel::S, kMaskL},
                                            Factor{Rel::T, kMaskXL}},
                      1, meter);
  terms_.emplace_back("D1_LL_all_H",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskLL}, Factor{Rel::S, kMaskAll1},
                                            Factor{Rel::T, kMaskXH}},
                      1, meter);
  terms_.emplace_back("D1_LH_all_HH",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskLH}, Factor{Rel::S, kMaskAll1},
                                            Factor{Rel::T, kMaskHH}},
                      1, meter);

  ViewTreeSpec hl;
  hl.name = "V_HL";
  hl.frame = 0;
  hl.f1 = {Rel::R, kMaskXH};
  hl.f2 = {Rel::S, kMaskL};
  hl.f3 = {Rel::T, kMaskAll2};
  hl.w = RootMode::onto_x;

  ViewTreeSpec st;
  st.name = "V_ST";
  st.frame = 1;
  st.f1 = {Rel::S, kMaskH};
  st.f2 = {Rel::T, kMaskXL};
  st.f3 = {Rel::R, kMaskAll2};
  st.w = RootMode::onto_z;

  ViewTreeSpec lhhl;
  lhhl.name = "V_LHHL";
  lhhl.frame = 2;
  lhhl.f1 = {Rel::T, kMaskHL};
  lhhl.f2 = {Rel::R, kMaskLH};
  lhhl.f3 = {Rel::S, kMaskAll1};
  lhhl.keep_triple = true;
  lhhl.triple_indexes = {{0, 2}, {1}};
  lhhl.w = RootMode::pair;

  trees_.reserve(3);
  trees_.emplace_back(hl, meter);
  trees_.emplace_back(st, meter);
  trees_.emplace_back(lhhl, meter);
}

void UnaryViews::apply(Rel rel, int part, const Tuple& t, Mult m) {
  for (auto& term : terms_) term.on_update(parts(), rel, part, t, m);
  for (auto& tree : trees_) tree.on_update(parts(), rel, part, t, m);
}

void UnaryViews::rebuild() {
  for (auto& term : terms_) term.rebuild(parts());
  for (auto& tree : trees_) tree.rebuild(parts());
}

Mult UnaryViews::multiplicity(Value a) const {
  const Tuple ta = Tuple::of(a);
  Mult m = 0;
  for (const auto& term : terms_) m += term.rel().lookup(ta);
  m += tree_hl().root().lookup(ta);
  m += tree_st().root().lookup(ta);
  const PartitionedRelation& s = parts()[Rel::S];
  tree_lhhl().triple().for_each_slice(1, ta, [&](const Tuple& t, Mult p) {
    m += p * s.lookup(Tuple::of(t[2], t[0]));
  });
  return m;
}

std::unique_ptr<ResultCursor> UnaryViews::open(const std::uint64_t* version) const {
  std::vector<std::unique_ptr<SetIterator>> its;
  for (const auto& term : terms_) its.push_back(std::make_unique<RelationSetIterator>(&term.rel(), 1));
  its.push_back(std::make_unique<RelationSetIterator>(&tree_hl().root(), 1));
  its.push_back(std::make_unique<RelationSetIterator>(&tree_st().root(), 1));
  its.push_back(std::make_unique<HopUnionIterator<UnaryBucketSource>>(
      UnaryBucketSource(&tree_lhhl()), meter()));
  return std::make_unique<UnionCursor>(version, meter(), 1, std::move(its),
                                       [this](Elem e) { return multiplicity(static_cast<Value>(e)); });
}

std::vector<std::pair<std::string, const IndexedRelation*>> UnaryViews::relations() const {
  std::vector<std::pair<std::string, const IndexedRelation*>> out;
  for (const auto& term : terms_) out.emplace_back(term.name(), &term.rel());
  for (const auto& tree : trees_) {
    auto r = tree.relations();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace ivme
