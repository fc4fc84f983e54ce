#pragma once

#include "ivme/cost_meter.hpp"
#include "ivme/types.hpp"

#include <absl/container/flat_hash_map.h>

#include <string>
#include <utility>
#include <vector>

namespace ivme {

// Multiplicity map with secondary indexes. Each index maps a projection key
// to an insertion-ordered doubly linked list of entries plus a counter.
class IndexedRelation {
 public:
  using EntryId = std::uint32_t;
  static constexpr EntryId kNone = 0xffffffffu;
  static constexpr int kMaxIndexes = 4;

  explicit IndexedRelation(Schema schema, std::vector<Schema> indexes = {},
                           CostMeter* meter = nullptr);

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  int index_count() const { return static_cast<int>(index_schemas_.size()); }
  const Schema& index_schema(int idx) const { return index_schemas_[idx]; }
  int index_id(const Schema& f) const;

  Mult apply_delta(const Tuple& t, Mult m);
  Mult lookup(const Tuple& t) const;

  std::size_t slice_count(int idx, const Tuple& key) const;
  std::size_t slice_count(const Schema& f, const Tuple& key) const {
    return slice_count(index_id(f), key);
  }
  bool project_contains(int idx, const Tuple& key) const {
    return slice_count(idx, key) > 0;
  }
  bool project_contains(const Schema& f, const Tuple& key) const {
    return slice_count(index_id(f), key) > 0;
  }

  // Cursor-level access. Every call below charges one unit.
  EntryId find(const Tuple& t) const;
  EntryId first() const;
  EntryId next(EntryId id) const;
  EntryId slice_first(int idx, const Tuple& key) const;
  EntryId slice_next(int idx, EntryId id) const;

  const Tuple& tuple(EntryId id) const { return nodes_[id].t; }
  Mult mult(EntryId id) const { return nodes_[id].m; }

  template <class F>
  void for_each(F&& f) const {
    for (EntryId id = first(); id != kNone; id = next(id)) f(nodes_[id].t, nodes_[id].m);
  }

  template <class F>
  void for_each_slice(int idx, const Tuple& key, F&& f) const {
    for (EntryId id = slice_first(idx, key); id != kNone; id = slice_next(idx, id))
      f(nodes_[id].t, nodes_[id].m);
  }

  template <class F>
  void for_each_slice(const Schema& fs, const Tuple& key, F&& f) const {
    for_each_slice(index_id(fs), key, std::forward<F>(f));
  }

  Tuple project(int idx, const Tuple& t) const;
  std::vector<std::pair<Tuple, Mult>> entries() const;
  void clear();

  // Full structural check; returns an empty string when consistent.
  std::string check_consistency() const;
  // Checks a single index key: list length, counter and key projection agree.
  bool check_key(int idx, const Tuple& key) const;

  CostMeter* meter() const { return meter_; }
  void set_meter(CostMeter* m) { meter_ = m; }

 private:
  struct Link {
    EntryId prev = kNone;
    EntryId next = kNone;
  };
  struct Node {
    Tuple t;
    Mult m = 0;
    std::array<Link, kMaxIndexes + 1> links;
  };
  struct Bucket {
    EntryId head = kNone;
    EntryId tail = kNone;
    std::uint32_t count = 0;
  };

  void link_tail(int list, Bucket& b, EntryId id);
  void unlink(int list, Bucket& b, EntryId id);

  Schema schema_;
  std::vector<Schema> index_schemas_;
  std::vector<std::array<std::uint8_t, 3>> index_pos_;
  std::vector<Node> nodes_;
  std::vector<EntryId> free_;
  absl::flat_hash_map<Tuple, EntryId> map_;
  Bucket all_;
  std::vector<absl::flat_hash_map<Tuple, Bucket>> indexes_;
  CostMeter* meter_ = nullptr;
};

}  // namespace ivme
