#pragma once

#include "ivme/cost_meter.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ivme {

// Elements are encoded as 64-bit keys: a single value, or two values packed
// as (first << 32) | second.
using Elem = std::uint64_t;

inline Elem pack(std::uint32_t a) { return a; }
inline Elem pack(std::uint32_t a, std::uint32_t b) { return (Elem{a} << 32) | b; }
inline std::uint32_t hi(Elem e) { return static_cast<std::uint32_t>(e >> 32); }
inline std::uint32_t lo(Elem e) { return static_cast<std::uint32_t>(e); }

class SetIterator {
 public:
  virtual ~SetIterator() = default;
  virtual std::optional<Elem> next() = 0;
  virtual bool contains(Elem e) const = 0;
};

// Emits every element of the union of the iterated sets exactly once.
std::optional<Elem> union_next(std::span<SetIterator* const> its);

// Ordered duplicate-free collection backed by a vector; used for plain sets
// and in tests.
class VectorCollection {
 public:
  VectorCollection() = default;
  VectorCollection(std::vector<Elem> items, CostMeter* meter = nullptr);

  std::optional<Elem> first() const;
  std::optional<Elem> successor(Elem e) const;
  bool contains(Elem e) const;
  const std::vector<Elem>& items() const { return *items_; }

 private:
  std::shared_ptr<const std::vector<Elem>> items_;
  std::shared_ptr<const absl::flat_hash_map<Elem, std::size_t>> pos_;
  CostMeter* meter_ = nullptr;
};

class VectorSetIterator : public SetIterator {
 public:
  explicit VectorSetIterator(VectorCollection c) : c_(std::move(c)) {}
  std::optional<Elem> next() override {
    if (done_) return std::nullopt;
    auto r = started_ ? c_.successor(cur_) : c_.first();
    started_ = true;
    if (!r) {
      done_ = true;
      return r;
    }
    cur_ = *r;
    return r;
  }
  bool contains(Elem e) const override { return c_.contains(e); }

 private:
  VectorCollection c_;
  Elem cur_ = 0;
  bool started_ = false;
  bool done_ = false;
};

// Iterator over a collection that can exclude arbitrary elements. Skip
// pointers jump over maximal runs of excluded elements, so excluded elements
// cost nothing while iterating.
//
// Coll must provide first(), successor(e) and contains(e).
template <class Coll>
class HopIterator {
 public:
  using Pos = std::optional<Elem>;  // nullopt stands for EOF

  explicit HopIterator(Coll c, CostMeter* meter = nullptr) : c_(std::move(c)), meter_(meter) {}

  Pos next_hop() {
    if (done_) return std::nullopt;
    Pos r = hop(started_ ? c_.successor(cur_) : c_.first());
    started_ = true;
    if (!r) {
      done_ = true;
      return r;
    }
    cur_ = *r;
    return r;
  }

  // Returns true when x was present and not excluded before.
  bool exclude(Elem x) {
    ivme::tick(meter_);
    if (excluded_.contains(x) || !c_.contains(x)) return false;
    Pos to = hop(c_.successor(x));
    Elem from = hop_back(x);
    ivme::tick(meter_, 2);
    skip_to_[from] = to;
    if (to)
      skipped_from_[*to] = from;
    else
      skipped_from_eof_ = from;
    excluded_.insert(x);
    return true;
  }

  bool is_empty() const { return !hop(c_.first()); }
  bool is_excluded(Elem x) const { return excluded_.contains(x); }
  bool exhausted() const { return done_; }

  // Skip pointer stored for x, if any (for inspection).
  std::optional<Pos> skip_to(Elem x) const {
    auto it = skip_to_.find(x);
    if (it == skip_to_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t skip_count() const { return skip_to_.size(); }
  const Coll& collection() const { return c_; }

 private:
  Pos hop(Pos x) const {
    if (!x) return x;
    ivme::tick(meter_);
    auto it = skip_to_.find(*x);
    return it == skip_to_.end() ? x : it->second;
  }
  Elem hop_back(Elem x) const {
    ivme::tick(meter_);
    auto it = skipped_from_.find(x);
    return it == skipped_from_.end() ? x : it->second;
  }

  Coll c_;
  CostMeter* meter_;
  Elem cur_ = 0;
  bool started_ = false;
  bool done_ = false;
  absl::flat_hash_map<Elem, Pos> skip_to_;
  absl::flat_hash_map<Elem, Elem> skipped_from_;
  std::optional<Elem> skipped_from_eof_;
  absl::flat_hash_set<Elem> excluded_;
};

// Enumerates the distinct elements of a family of buckets. After reporting an
// element it is excluded from every other bucket named by the source's
// candidate search, and buckets emptied that way are skipped entirely.
//
// Source must provide:
//   using BucketColl / BucketsColl;
//   BucketsColl buckets() const;               collection of bucket keys
//   BucketColl bucket(Elem key) const;         collection of one bucket
//   void candidate_buckets(Elem e, std::vector<Elem>& out) const;
template <class Source>
class HopUnionIterator : public SetIterator {
 public:
  using BucketIt = HopIterator<typename Source::BucketColl>;

  explicit HopUnionIterator(Source src, CostMeter* meter = nullptr)
      : src_(std::move(src)), meter_(meter), ib_(src_.buckets(), meter) {}

  std::optional<Elem> next() override {
    while (true) {
      if (!cur_) {
        auto b = ib_.next_hop();
        if (!b) return std::nullopt;
        cur_key_ = *b;
        cur_ = &bucket(*b);
      }
      auto t = cur_->next_hop();
      if (!t) {
        cur_ = nullptr;
        continue;
      }
      cands_.clear();
      src_.candidate_buckets(*t, cands_);
      for (Elem i : cands_) {
        if (i == cur_key_) continue;
        BucketIt& b = bucket(i);
        if (b.exclude(*t) && b.is_empty()) ib_.exclude(i);
      }
      return t;
    }
  }

  bool contains(Elem e) const override {
    std::vector<Elem> cands;
    src_.candidate_buckets(e, cands);
    for (Elem i : cands)
      if (src_.bucket(i).contains(e)) return true;
    return false;
  }

  const Source& source() const { return src_; }
  // Bucket state for inspection; opens the bucket if needed.
  BucketIt& bucket(Elem key) {
    auto it = open_.find(key);
    if (it == open_.end()) {
      ivme::tick(meter_);
      it = open_.emplace(key, std::make_unique<BucketIt>(src_.bucket(key), meter_)).first;
    }
    return *it->second;
  }
  bool bucket_excluded(Elem key) const { return ib_.is_excluded(key); }
  std::size_t last_candidate_count() const { return cands_.size(); }

 private:
  Source src_;
  CostMeter* meter_;
  HopIterator<typename Source::BucketsColl> ib_;
  absl::flat_hash_map<Elem, std::unique_ptr<BucketIt>> open_;
  BucketIt* cur_ = nullptr;
  Elem cur_key_ = 0;
  std::vector<Elem> cands_;
};

// Source over explicit vectors; bucket keys are 0..n-1. Without a candidate
// function every bucket is a candidate.
class VectorBucketSource {
 public:
  using BucketColl = VectorCollection;
  using BucketsColl = VectorCollection;
  using CandidateFn = std::function<void(Elem, std::vector<Elem>&)>;

  VectorBucketSource(std::vector<std::vector<Elem>> sets, CostMeter* meter = nullptr,
                     CandidateFn candidates = {});

  BucketsColl buckets() const { return ids_; }
  BucketColl bucket(Elem key) const { return sets_[key]; }
  void candidate_buckets(Elem e, std::vector<Elem>& out) const;

 private:
  std::vector<VectorCollection> sets_;
  VectorCollection ids_;
  CandidateFn candidates_;
  CostMeter* meter_;
};

}  // namespace ivme
