#include "ivme/engines.hpp"

namespace ivme {

namespace {

using EntryId = IndexedRelation::EntryId;
constexpr EntryId kNone = IndexedRelation::kNone;

// Lists HHH, then LLL, then the three view-tree fragments. Multiplicities of
// fragment tuples are recomputed from the base parts.
class TernaryCursor : public ResultCursor {
 public:
  TernaryCursor(const std::uint64_t* version, CostMeter* meter, const TernaryViews* v,
                const Partitions* parts)
      : ResultCursor(version, meter), v_(v), parts_(parts) {}

 protected:
  std::optional<ResultRow> advance() override {
    while (frag_ < 5) {
      if (frag_ < 2) {
        const IndexedRelation& rel = frag_ == 0 ? v_->hhh().rel() : v_->lll().rel();
        outer_ = started_ ? rel.next(outer_) : rel.first();
        started_ = true;
        if (outer_ != kNone) return ResultRow{rel.tuple(outer_), rel.mult(outer_)};
      } else {
        const ViewTree& tree = v_->tree(frag_ - 2);
        const IndexedRelation& p = tree.triple();
        const IndexedRelation& w = tree.root();
        if (inner_ != kNone) inner_ = p.slice_next(0, inner_);
        if (inner_ == kNone) {
          outer_ = started_ ? w.next(outer_) : w.first();
          started_ = true;
          if (outer_ != kNone) inner_ = p.slice_first(0, w.tuple(outer_));
        }
        if (inner_ != kNone) return row(tree, p.tuple(inner_));
      }
      if (outer_ == kNone) {
        ++frag_;
        started_ = false;
        inner_ = kNone;
      }
    }
    return std::nullopt;
  }

 private:
  ResultRow row(const ViewTree& tree, const Tuple& loc) const {
    const ViewTreeSpec& s = tree.spec();
    Mult m = factor_lookup(*parts_, s.f1, Tuple::of(loc[0], loc[1])) *
             factor_lookup(*parts_, s.f2, Tuple::of(loc[1], loc[2])) *
             factor_lookup(*parts_, s.f3, Tuple::of(loc[2], loc[0]));
    return ResultRow{canonical_triple(s.frame, loc[0], loc[1], loc[2]), m};
  }

  const TernaryViews* v_;
  const Partitions* parts_;
  int frag_ = 0;
  bool started_ = false;
  EntryId outer_ = kNone;
  EntryId inner_ = kNone;
};

}  // namespace

TernaryViews::TernaryViews(const Partitions* parts, CostMeter* meter)
    : QueryViews(parts, meter),
      hhh_("D3_HHH", {Factor{Rel::R, kMaskH}, Factor{Rel::S, kMaskH}, Factor{Rel::T, kMaskH}}, 3,
           meter),
      lll_("D3_LLL", {Factor{Rel::R, kMaskL}, Factor{Rel::S, kMaskL}, Factor{Rel::T, kMaskL}}, 3,
           meter) {
  static const char* names[] = {"V_RS", "V_ST", "V_TR"};
  trees_.reserve(3);
  for (int i = 0; i < 3; ++i) {
    ViewTreeSpec spec;
    spec.name = names[i];
    spec.frame = i;
    spec.f1 = {rel_at(i), kMaskH};
    spec.f2 = {rel_at(i + 1), kMaskL};
    spec.f3 = {rel_at(i + 2), kMaskAll1};
    spec.keep_triple = true;
    spec.triple_indexes = {{0, 2}};
    spec.w = RootMode::pair;
    trees_.emplace_back(spec, meter);
  }
}

void TernaryViews::apply(Rel rel, int part, const Tuple& t, Mult m) {
  hhh_.on_update(parts(), rel, part, t, m);
  lll_.on_update(parts(), rel, part, t, m);
  for (auto& tree : trees_) tree.on_update(parts(), rel, part, t, m);
}

void TernaryViews::rebuild() {
  hhh_.rebuild(parts());
  lll_.rebuild(parts());
  for (auto& tree : trees_) tree.rebuild(parts());
}

std::unique_ptr<ResultCursor> TernaryViews::open(const std::uint64_t* version) const {
  return std::make_unique<TernaryCursor>(version, meter(), this, &parts());
}

std::vector<std::pair<std::string, const IndexedRelation*>> TernaryViews::relations() const {
  std::vector<std::pair<std::string, const IndexedRelation*>> out{{hhh_.name(), &hhh_.rel()},
                                                                   {lll_.name(), &lll_.rel()}};
  for (const auto& tree : trees_) {
    auto r = tree.relations();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace ivme
