#include "ivme/enumeration.hpp"

#include <functional>

namespace ivme {

std::optional<Elem> union_next(std::span<SetIterator* const> its) {
  if (its.empty()) return std::nullopt;
  std::optional<Elem> t = its[0]->next();
  for (std::size_t i = 1; i < its.size(); ++i) {
    if (!t || its[i]->contains(*t)) t = its[i]->next();
  }
  return t;
}

VectorCollection::VectorCollection(std::vector<Elem> items, CostMeter* meter) : meter_(meter) {
  auto pos = std::make_shared<absl::flat_hash_map<Elem, std::size_t>>();
  for (std::size_t i = 0; i < items.size(); ++i) pos->emplace(items[i], i);
  items_ = std::make_shared<const std::vector<Elem>>(std::move(items));
  pos_ = std::move(pos);
}

std::optional<Elem> VectorCollection::first() const {
  ivme::tick(meter_);
  if (!items_ || items_->empty()) return std::nullopt;
  return items_->front();
}

std::optional<Elem> VectorCollection::successor(Elem e) const {
  ivme::tick(meter_);
  auto it = pos_->find(e);
  if (it == pos_->end() || it->second + 1 >= items_->size()) return std::nullopt;
  return (*items_)[it->second + 1];
}

bool VectorCollection::contains(Elem e) const {
  ivme::tick(meter_);
  return pos_ && pos_->contains(e);
}

VectorBucketSource::VectorBucketSource(std::vector<std::vector<Elem>> sets, CostMeter* meter,
                                       CandidateFn candidates)
    : candidates_(std::move(candidates)), meter_(meter) {
  std::vector<Elem> ids;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sets_.emplace_back(std::move(sets[i]), meter);
    ids.push_back(i);
  }
  ids_ = VectorCollection(std::move(ids), meter);
}

void VectorBucketSource::candidate_buckets(Elem e, std::vector<Elem>& out) const {
  if (candidates_) {
    candidates_(e, out);
    return;
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    ivme::tick(meter_);
    out.push_back(i);
  }
}

}  // namespace ivme
