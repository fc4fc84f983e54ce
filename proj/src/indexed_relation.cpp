#include "ivme/indexed_relation.hpp"

namespace ivme {

IndexedRelation::IndexedRelation(Schema schema, std::vector<Schema> indexes, CostMeter* meter)
    : schema_(schema), index_schemas_(std::move(indexes)), meter_(meter) {
  if (static_cast<int>(index_schemas_.size()) > kMaxIndexes)
    throw std::invalid_argument("too many indexes");
  for (const Schema& f : index_schemas_) {
    std::array<std::uint8_t, 3> pos{};
    for (std::size_t i = 0; i < f.size(); ++i) {
      int p = schema_.position(f[i]);
      if (p < 0)
        throw std::invalid_argument("index " + to_string(f) + " not within " + to_string(schema_));
      pos[i] = static_cast<std::uint8_t>(p);
    }
    index_pos_.push_back(pos);
  }
  indexes_.resize(index_schemas_.size());
}

int IndexedRelation::index_id(const Schema& f) const {
  for (int i = 0; i < index_count(); ++i)
    if (index_schemas_[i] == f) return i;
  throw MissingIndex("no index on " + to_string(f) + " for relation over " + to_string(schema_));
}

Tuple IndexedRelation::project(int idx, const Tuple& t) const {
  const Schema& f = index_schemas_[idx];
  Tuple key;
  key.n = f.n;
  for (std::uint8_t i = 0; i < f.n; ++i) key.v[i] = t.v[index_pos_[idx][i]];
  return key;
}

void IndexedRelation::link_tail(int list, Bucket& b, EntryId id) {
  Link& l = nodes_[id].links[list];
  l.prev = b.tail;
  l.next = kNone;
  if (b.tail != kNone)
    nodes_[b.tail].links[list].next = id;
  else
    b.head = id;
  b.tail = id;
  ++b.count;
}

void IndexedRelation::unlink(int list, Bucket& b, EntryId id) {
  Link& l = nodes_[id].links[list];
  if (l.prev != kNone)
    nodes_[l.prev].links[list].next = l.next;
  else
    b.head = l.next;
  if (l.next != kNone)
    nodes_[l.next].links[list].prev = l.prev;
  else
    b.tail = l.prev;
  l = Link{};
  --b.count;
}

Mult IndexedRelation::apply_delta(const Tuple& t, Mult m) {
  ivme::tick(meter_);
  if (m == 0) throw std::invalid_argument("apply_delta with zero multiplicity");
  if (t.n != schema_.n) throw std::invalid_argument("tuple arity does not match schema");
  auto it = map_.find(t);
  if (it == map_.end()) {
    if (m < 0) throw RejectedDelete("delete of absent tuple " + to_string(t));
    EntryId id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
    } else {
      id = static_cast<EntryId>(nodes_.size());
      nodes_.emplace_back();
    }
    Node& node = nodes_[id];
    node.t = t;
    node.m = m;
    map_.emplace(t, id);
    link_tail(0, all_, id);
    for (int i = 0; i < index_count(); ++i) link_tail(i + 1, indexes_[i][project(i, t)], id);
    return m;
  }
  EntryId id = it->second;
  Node& node = nodes_[id];
  Mult r = node.m + m;
  if (r < 0)
    throw RejectedDelete("delete would make multiplicity of " + to_string(t) + " negative");
  if (r != 0) {
    node.m = r;
    return r;
  }
  unlink(0, all_, id);
  for (int i = 0; i < index_count(); ++i) {
    auto& index = indexes_[i];
    auto bit = index.find(project(i, t));
    unlink(i + 1, bit->second, id);
    if (bit->second.count == 0) index.erase(bit);
  }
  map_.erase(it);
  node.m = 0;
  free_.push_back(id);
  return 0;
}

Mult IndexedRelation::lookup(const Tuple& t) const {
  ivme::tick(meter_);
  auto it = map_.find(t);
  return it == map_.end() ? 0 : nodes_[it->second].m;
}

std::size_t IndexedRelation::slice_count(int idx, const Tuple& key) const {
  ivme::tick(meter_);
  const auto& index = indexes_[idx];
  auto it = index.find(key);
  return it == index.end() ? 0 : it->second.count;
}

IndexedRelation::EntryId IndexedRelation::find(const Tuple& t) const {
  ivme::tick(meter_);
  auto it = map_.find(t);
  return it == map_.end() ? kNone : it->second;
}

IndexedRelation::EntryId IndexedRelation::first() const {
  ivme::tick(meter_);
  return all_.head;
}

IndexedRelation::EntryId IndexedRelation::next(EntryId id) const {
  ivme::tick(meter_);
  return nodes_[id].links[0].next;
}

IndexedRelation::EntryId IndexedRelation::slice_first(int idx, const Tuple& key) const {
  ivme::tick(meter_);
  const auto& index = indexes_[idx];
  auto it = index.find(key);
  return it == index.end() ? kNone : it->second.head;
}

IndexedRelation::EntryId IndexedRelation::slice_next(int idx, EntryId id) const {
  ivme::tick(meter_);
  return nodes_[id].links[idx + 1].next;
}

std::vector<std::pair<Tuple, Mult>> IndexedRelation::entries() const {
  std::vector<std::pair<Tuple, Mult>> out;
  out.reserve(size());
  for (EntryId id = all_.head; id != kNone; id = nodes_[id].links[0].next)
    out.emplace_back(nodes_[id].t, nodes_[id].m);
  return out;
}

void IndexedRelation::clear() {
  ivme::tick(meter_);
  nodes_.clear();
  free_.clear();
  map_.clear();
  all_ = Bucket{};
  for (auto& index : indexes_) index.clear();
}

bool IndexedRelation::check_key(int idx, const Tuple& key) const {
  const auto& index = indexes_[idx];
  auto it = index.find(key);
  if (it == index.end()) return true;
  std::uint32_t seen = 0;
  EntryId prev = kNone;
  for (EntryId id = it->second.head; id != kNone; id = nodes_[id].links[idx + 1].next) {
    const Node& node = nodes_[id];
    if (node.m == 0 || project(idx, node.t) != key) return false;
    if (node.links[idx + 1].prev != prev) return false;
    auto mit = map_.find(node.t);
    if (mit == map_.end() || mit->second != id) return false;
    prev = id;
    if (++seen > it->second.count) return false;
  }
  return seen == it->second.count && seen > 0 && prev == it->second.tail;
}

std::string IndexedRelation::check_consistency() const {
  std::size_t listed = 0;
  for (EntryId id = all_.head; id != kNone; id = nodes_[id].links[0].next) {
    const Node& node = nodes_[id];
    if (node.m == 0) return "zero multiplicity entry " + to_string(node.t);
    auto it = map_.find(node.t);
    if (it == map_.end() || it->second != id) return "entry list and map disagree";
    if (++listed > map_.size()) return "entry list longer than map";
  }
  if (listed != map_.size() || listed != all_.count) return "entry count mismatch";
  for (int i = 0; i < index_count(); ++i) {
    std::size_t total = 0;
    for (const auto& [key, bucket] : indexes_[i]) {
      if (!check_key(i, key)) return "index " + to_string(index_schemas_[i]) + " broken at " + to_string(key);
      total += bucket.count;
    }
    if (total != map_.size()) return "index " + to_string(index_schemas_[i]) + " misses entries";
  }
  return {};
}

}  // namespace ivme
