#include "ivme/engine.hpp"

#include "ivme/engines.hpp"

namespace ivme {

int query_arity(QueryKind q) {
  switch (q) {
    case QueryKind::nullary:
    case QueryKind::nullary_double: return 0;
    case QueryKind::unary: return 1;
    case QueryKind::binary: return 2;
    case QueryKind::ternary: return 3;
  }
  return 0;
}

std::array<bool, 3> partition_scheme(QueryKind q) {
  switch (q) {
    case QueryKind::nullary: return {false, false, false};
    case QueryKind::nullary_double: return {true, true, true};
    case QueryKind::unary: return {true, false, true};
    case QueryKind::binary: return {false, true, true};
    case QueryKind::ternary: return {false, false, false};
  }
  return {false, false, false};
}

const char* query_name(QueryKind q) {
  switch (q) {
    case QueryKind::nullary: return "d0";
    case QueryKind::nullary_double: return "d0-double";
    case QueryKind::unary: return "d1";
    case QueryKind::binary: return "d2";
    case QueryKind::ternary: return "d3";
  }
  return "?";
}

QueryKind parse_query(const std::string& name, bool double_partition) {
  if (name == "d0") return double_partition ? QueryKind::nullary_double : QueryKind::nullary;
  if (double_partition) throw std::invalid_argument("double partitioning is only offered for d0");
  if (name == "d1") return QueryKind::unary;
  if (name == "d2") return QueryKind::binary;
  if (name == "d3") return QueryKind::ternary;
  throw std::invalid_argument("unknown query " + name);
}

std::optional<ResultRow> ResultCursor::next() {
  if (*version_ != opened_) throw StaleIterator("state changed since the cursor was opened");
  PhaseScope scope(meter_, Phase::enumerate);
  return advance();
}

std::unique_ptr<QueryViews> make_views(QueryKind q, const Partitions* parts, CostMeter* meter) {
  switch (q) {
    case QueryKind::nullary: return std::make_unique<NullaryViews>(parts, meter, false);
    case QueryKind::nullary_double: return std::make_unique<NullaryViews>(parts, meter, true);
    case QueryKind::unary: return std::make_unique<UnaryViews>(parts, meter);
    case QueryKind::binary: return std::make_unique<BinaryViews>(parts, meter);
    case QueryKind::ternary: return std::make_unique<TernaryViews>(parts, meter);
  }
  throw std::invalid_argument("unknown query kind");
}

RelationSetIterator::RelationSetIterator(const IndexedRelation* rel, int k) : rel_(rel), k_(k) {
  for (int j = 0; j < k; ++j) {
    pos_[j] = rel->schema().position(var_at(j));
    if (pos_[j] < 0 || static_cast<int>(rel->schema().size()) != k)
      throw std::invalid_argument("view schema is not a permutation of the free variables");
  }
}

Elem RelationSetIterator::encode(const Tuple& t) const {
  return k_ == 1 ? pack(t[pos_[0]]) : pack(t[pos_[0]], t[pos_[1]]);
}

Tuple RelationSetIterator::decode(Elem e) const {
  Tuple t;
  t.n = static_cast<std::uint8_t>(k_);
  if (k_ == 1) {
    t.v[0] = static_cast<Value>(e);
  } else {
    t.v[pos_[0]] = hi(e);
    t.v[pos_[1]] = lo(e);
  }
  return t;
}

std::optional<Elem> RelationSetIterator::next() {
  if (started_ && id_ == IndexedRelation::kNone) return std::nullopt;
  id_ = started_ ? rel_->next(id_) : rel_->first();
  started_ = true;
  if (id_ == IndexedRelation::kNone) return std::nullopt;
  return encode(rel_->tuple(id_));
}

bool RelationSetIterator::contains(Elem e) const { return rel_->lookup(decode(e)) != 0; }

UnionCursor::UnionCursor(const std::uint64_t* version, CostMeter* meter, int k,
                         std::vector<std::unique_ptr<SetIterator>> its, MultFn mult)
    : ResultCursor(version, meter), k_(k), owned_(std::move(its)), mult_(std::move(mult)) {
  for (auto& it : owned_) its_.push_back(it.get());
}

std::optional<ResultRow> UnionCursor::advance() {
  auto e = union_next(its_);
  if (!e) return std::nullopt;
  Tuple t = k_ == 1 ? Tuple::of(static_cast<Value>(*e)) : Tuple::of(hi(*e), lo(*e));
  return ResultRow{t, mult_(*e)};
}

namespace {

// Role (0 = x, 1 = y, 2 = z) of canonical variable v in a frame.
int role_of(int frame, int v) { return ((v - frame) % 3 + 3) % 3; }

Tuple local_of(int frame, Value a, Value b, Value c) {
  Value canon[3] = {a, b, c};
  return Tuple::of(canon[frame % 3], canon[(frame + 1) % 3], canon[(frame + 2) % 3]);
}

Elem pair_elem(int frame, const Tuple& local) {
  Value canon[3];
  for (int r = 0; r < 3; ++r) canon[(frame + r) % 3] = local[r];
  return pack(canon[0], canon[1]);
}

int root_index_for_c(int frame) { return role_of(frame, 2) == 0 ? 0 : 1; }

}  // namespace

std::optional<Elem> BinaryBucketSource::Bucket::start_at(IndexedRelation::EntryId wid) const {
  if (wid == IndexedRelation::kNone) return std::nullopt;
  const IndexedRelation& p = tree_->triple();
  auto pid = p.slice_first(0, tree_->root().tuple(wid));
  if (pid == IndexedRelation::kNone) return std::nullopt;
  return pair_elem(tree_->spec().frame, p.tuple(pid));
}

std::optional<Elem> BinaryBucketSource::Bucket::first() const {
  int widx = root_index_for_c(tree_->spec().frame);
  return start_at(tree_->root().slice_first(widx, Tuple::of(c_)));
}

std::optional<Elem> BinaryBucketSource::Bucket::successor(Elem e) const {
  const int frame = tree_->spec().frame;
  const IndexedRelation& p = tree_->triple();
  const IndexedRelation& w = tree_->root();
  Tuple loc = local_of(frame, hi(e), lo(e), c_);
  auto pid = p.find(loc);
  if (pid == IndexedRelation::kNone) return std::nullopt;
  auto nid = p.slice_next(0, pid);
  if (nid != IndexedRelation::kNone) return pair_elem(frame, p.tuple(nid));
  auto wid = w.find(Tuple::of(loc[0], loc[2]));
  if (wid == IndexedRelation::kNone) return std::nullopt;
  return start_at(w.slice_next(root_index_for_c(frame), wid));
}

bool BinaryBucketSource::Bucket::contains(Elem e) const {
  Tuple loc = local_of(tree_->spec().frame, hi(e), lo(e), c_);
  return tree_->triple().lookup(loc) != 0 && tree_->root().lookup(Tuple::of(loc[0], loc[2])) != 0;
}

std::optional<Elem> BinaryBucketSource::Keys::first() const {
  auto id = rel_->first();
  if (id == IndexedRelation::kNone) return std::nullopt;
  return pack(rel_->tuple(id)[0]);
}

std::optional<Elem> BinaryBucketSource::Keys::successor(Elem e) const {
  auto id = rel_->find(Tuple::of(static_cast<Value>(e)));
  if (id == IndexedRelation::kNone) return std::nullopt;
  id = rel_->next(id);
  if (id == IndexedRelation::kNone) return std::nullopt;
  return pack(rel_->tuple(id)[0]);
}

bool BinaryBucketSource::Keys::contains(Elem e) const {
  return rel_->lookup(Tuple::of(static_cast<Value>(e))) != 0;
}

void BinaryBucketSource::candidate_buckets(Elem e, std::vector<Elem>& out) const {
  const int c_role = role_of(tree_->spec().frame, 2);
  const IndexedRelation& root = tree_->root_hat();
  tree_->triple().for_each_slice(1, Tuple::of(hi(e), lo(e)), [&](const Tuple& t, Mult) {
    if (root.lookup(Tuple::of(t[c_role])) != 0) out.push_back(t[c_role]);
  });
}

// The unary view tree uses the frame (x,y,z) = (C,A,B).
std::optional<Elem> UnaryBucketSource::Bucket::first() const {
  const IndexedRelation& p = tree_->triple();
  auto pid = p.slice_first(0, Tuple::of(c_, b_));
  if (pid == IndexedRelation::kNone) return std::nullopt;
  return pack(p.tuple(pid)[1]);
}

std::optional<Elem> UnaryBucketSource::Bucket::successor(Elem e) const {
  const IndexedRelation& p = tree_->triple();
  auto pid = p.find(Tuple::of(c_, static_cast<Value>(e), b_));
  if (pid == IndexedRelation::kNone) return std::nullopt;
  auto nid = p.slice_next(0, pid);
  if (nid == IndexedRelation::kNone) return std::nullopt;
  return pack(p.tuple(nid)[1]);
}

bool UnaryBucketSource::Bucket::contains(Elem e) const {
  return tree_->triple().lookup(Tuple::of(c_, static_cast<Value>(e), b_)) != 0;
}

std::optional<Elem> UnaryBucketSource::Keys::first() const {
  auto id = rel_->first();
  if (id == IndexedRelation::kNone) return std::nullopt;
  const Tuple& t = rel_->tuple(id);
  return pack(t[1], t[0]);
}

std::optional<Elem> UnaryBucketSource::Keys::successor(Elem e) const {
  auto id = rel_->find(Tuple::of(lo(e), hi(e)));
  if (id == IndexedRelation::kNone) return std::nullopt;
  id = rel_->next(id);
  if (id == IndexedRelation::kNone) return std::nullopt;
  const Tuple& t = rel_->tuple(id);
  return pack(t[1], t[0]);
}

bool UnaryBucketSource::Keys::contains(Elem e) const {
  return rel_->lookup(Tuple::of(lo(e), hi(e))) != 0;
}

void UnaryBucketSource::candidate_buckets(Elem e, std::vector<Elem>& out) const {
  const IndexedRelation& root = tree_->root();
  tree_->triple().for_each_slice(1, Tuple::of(static_cast<Value>(e)), [&](const Tuple& t, Mult) {
    if (root.lookup(Tuple::of(t[0], t[2])) != 0) out.push_back(pack(t[2], t[0]));
  });
}

}  // namespace ivme
