#include "ivme/engines.hpp"

namespace ivme {

namespace {

class CountCursor : public ResultCursor {
 public:
  CountCursor(const std::uint64_t* version, CostMeter* meter, Mult count)
      : ResultCursor(version, meter), count_(count) {}

 protected:
  std::optional<ResultRow> advance() override {
    ivme::tick(meter());
    if (done_ || count_ == 0) return std::nullopt;
    done_ = true;
    return ResultRow{Tuple::of(), count_};
  }

 private:
  Mult count_;
  bool done_ = false;
};

}  // namespace

NullaryViews::NullaryViews(const Partitions* parts, CostMeter* meter, bool double_partition)
    : QueryViews(parts, meter), double_(double_partition) {
  static const char* names[] = {"V_RS", "V_ST", "V_TR"};
  const std::uint8_t heavy = double_ ? kMaskHL : kMaskH;
  const std::uint8_t light = double_ ? kMaskLH : kMaskL;
  const std::uint8_t all = double_ ? kMaskAll2 : kMaskAll1;
  trees_.reserve(3);
  for (int i = 0; i < 3; ++i) {
    ViewTreeSpec spec;
    spec.name = names[i];
    spec.frame = i;
    spec.f1 = {rel_at(i), heavy};
    spec.f2 = {rel_at(i + 1), light};
    spec.f3 = {rel_at(i + 2), all};
    trees_.emplace_back(spec, meter);
  }
  // Part pairs (s, t) of the two other relations that are evaluated directly;
  // the remaining pair is read from the pair view.
  if (double_) {
    terms_ = {{kMaskXH, kMaskXH}, {kMaskXL, kMaskXH}, {kMaskXL, kMaskXL},
              {kMaskHH, kMaskLH}, {kMaskHH, kMaskLL}, {kMaskHL, kMaskLL}};
  } else {
    terms_ = {{kMaskH, kMaskH}, {kMaskL, kMaskH}, {kMaskL, kMaskL}};
  }
}

void NullaryViews::apply(Rel rel, int part, const Tuple& t, Mult m) {
  const int i = rel_index(rel);
  const Rel rj = rel_at(i + 1), rk = rel_at(i + 2);
  const Value alpha = t[0], beta = t[1];
  Mult s = 0;
  for (const auto& [mj, mk] : terms_)
    s += closing_sum(parts(), Factor{rj, mj}, Factor{rk, mk}, alpha, beta);
  s += trees_[rel_index(rj)].pair().lookup(Tuple::of(beta, alpha));
  count_ += m * s;
  for (auto& tree : trees_) tree.on_update(parts(), rel, part, t, m);
}

void NullaryViews::rebuild() {
  for (auto& tree : trees_) tree.rebuild(parts());
  const std::uint8_t all = double_ ? kMaskAll2 : kMaskAll1;
  const Factor r{Rel::R, all}, s{Rel::S, all}, t{Rel::T, all};
  count_ = 0;
  factor_for_each(parts(), r, [&](const Tuple& ab, Mult m) {
    count_ += m * closing_sum(parts(), s, t, ab[0], ab[1]);
  });
}

std::unique_ptr<ResultCursor> NullaryViews::open(const std::uint64_t* version) const {
  return std::make_unique<CountCursor>(version, meter(), count_);
}

std::vector<std::pair<std::string, const IndexedRelation*>> NullaryViews::relations() const {
  std::vector<std::pair<std::string, const IndexedRelation*>> out;
  for (const auto& tree : trees_) {
    auto r = tree.relations();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace ivme
