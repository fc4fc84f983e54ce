#include "ivme/engines.hpp"

namespace ivme {

BinaryViews::BinaryViews(const Partitions* parts, CostMeter* meter) : QueryViews(parts, meter) {
  terms_.emplace_back("D2_HHH",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskH}, Factor{Rel::S, kMaskXH},
                                            Factor{Rel::T, kMaskXH}},
                      2, meter);
  terms_.emplace_back("D2_LLL",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskL}, Factor{Rel::S, kMaskXL},
                                            Factor{Rel::T, kMaskXL}},
                      2, meter);
  terms_.emplace_back("D2_H_LL_all",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskH}, Factor{Rel::S, kMaskLL},
                                            Factor{Rel::T, kMaskAll2}},
                      2, meter);
  terms_.emplace_back("D2_L_all_HH",
                      std::array<Factor, 3>{Factor{Rel::R, kMaskL}, Factor{Rel::S, kMaskAll2},
                                            Factor{Rel::T, kMaskHH}},
                      2, meter);

  ViewTreeSpec hlh;
  hlh.name = "V_HLH";
  hlh.frame = 0;
  hlh.f1 = {Rel::R, kMaskH};
  hlh.f2 = {Rel::S, kMaskLH};
  hlh.f3 = {Rel::T, kMaskAll2};
  hlh.keep_triple = true;
  hlh.triple_indexes = {{0, 2}, {0, 1}};
  hlh.w = RootMode::pair;
  hlh.w_hat = RootMode::onto_z;

  ViewTreeSpec st;
  st.name = "V_ST";
  st.frame = 1;
  st.f1 = {Rel::S, kMaskXH};
  st.f2 = {Rel::T, kMaskXL};
  st.f3 = {Rel::R, kMaskAll1};
  st.w = RootMode::pair;

  ViewTreeSpec lhl;
  lhl.name = "V_LHL";
  lhl.frame = 2;
  lhl.f1 = {Rel::T, kMaskHL};
  lhl.f2 = {Rel::R, kMaskL};
  lhl.f3 = {Rel::S, kMaskAll2};
  lhl.keep_triple = true;
  lhl.triple_indexes = {{0, 2}, {1, 2}};
  lhl.w = RootMode::pair;
  lhl.w_hat = RootMode::onto_x;

  trees_.reserve(3);
  trees_.emplace_back(hlh, meter);
  trees_.emplace_back(st, meter);
  trees_.emplace_back(lhl, meter);
}

void BinaryViews::apply(Rel rel, int part, const Tuple& t, Mult m) {
  for (auto& term : terms_) term.on_update(parts(), rel, part, t, m);
  for (auto& tree : trees_) tree.on_update(parts(), rel, part, t, m);
}

void BinaryViews::rebuild() {
  for (auto& term : terms_) term.rebuild(parts());
  for (auto& tree : trees_) tree.rebuild(parts());
}

Mult BinaryViews::multiplicity(Value a, Value b) const {
  const Tuple ab = Tuple::of(a, b);
  Mult m = 0;
  for (const auto& term : terms_) m += term.rel().lookup(ab);
  m += tree_st().root().lookup(Tuple::of(b, a));
  const PartitionedRelation& r = parts()[Rel::R];
  if (Mult rh = r.part(kH).lookup(ab))
    m += rh * closing_sum(parts(), Factor{Rel::S, kMaskLH}, Factor{Rel::T, kMaskAll2}, a, b);
  if (Mult rl = r.part(kL).lookup(ab))
    m += rl * closing_sum(parts(), Factor{Rel::S, kMaskAll2}, Factor{Rel::T, kMaskHL}, a, b);
  return m;
}

std::unique_ptr<ResultCursor> BinaryViews::open(const std::uint64_t* version) const {
  std::vector<std::unique_ptr<SetIterator>> its;
  for (const auto& term : terms_) its.push_back(std::make_unique<RelationSetIterator>(&term.rel(), 2));
  its.push_back(std::make_unique<RelationSetIterator>(&tree_st().root(), 2));
  its.push_back(std::make_unique<HopUnionIterator<BinaryBucketSource>>(
      BinaryBucketSource(&tree_hlh()), meter()));
  its.push_back(std::make_unique<HopUnionIterator<BinaryBucketSource>>(
      BinaryBucketSource(&tree_lhl()), meter()));
  return std::make_unique<UnionCursor>(version, meter(), 2, std::move(its),
                                       [this](Elem e) { return multiplicity(hi(e), lo(e)); });
}

std::vector<std::pair<std::string, const IndexedRelation*>> BinaryViews::relations() const {
  std::vector<std::pair<std::string, const IndexedRelation*>> out;
  for (const auto& term : terms_) out.emplace_back(term.name(), &term.rel());
  for (const auto& tree : trees_) {
    auto r = tree.relations();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace ivme
