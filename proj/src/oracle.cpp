#include "ivme/oracle.hpp"

namespace ivme {

namespace {

IndexedRelation plain_relation(Rel r) {
  Schema s = schema_of(r);
  return IndexedRelation(s, {Schema{s[0]}, Schema{s[1]}});
}

}  // namespace

PlainDatabase::PlainDatabase() {
  for (int i = 0; i < 3; ++i) rels_.push_back(plain_relation(rel_at(i)));
}

PlainDatabase::PlainDatabase(const PlainDatabase& other) : PlainDatabase() { *this = other; }

PlainDatabase& PlainDatabase::operator=(const PlainDatabase& other) {
  if (this == &other) return *this;
  for (int i = 0; i < 3; ++i) {
    rels_[i].clear();
    other.rels_[i].for_each([&](const Tuple& t, Mult m) { rels_[i].apply_delta(t, m); });
  }
  return *this;
}

void PlainDatabase::apply(Rel rel, Value x, Value y, Mult m) {
  IndexedRelation& k = rels_[rel_index(rel)];
  Tuple t = Tuple::of(x, y);
  if (k.lookup(t) + m < 0)
    throw RejectedDelete("delete of " + to_string(t) + " from " + rel_name(rel) +
                         " exceeds its multiplicity");
  k.apply_delta(t, m);
}

std::size_t PlainDatabase::size() const {
  return rels_[0].size() + rels_[1].size() + rels_[2].size();
}

ResultMap oracle_triangle(const PlainDatabase& db, int k) {
  ResultMap out;
  const IndexedRelation& r = db[Rel::R];
  const IndexedRelation& s = db[Rel::S];
  const IndexedRelation& t = db[Rel::T];
  Mult count = 0;
  r.for_each([&](const Tuple& ab, Mult mr) {
    s.for_each_slice(0, Tuple::of(ab[1]), [&](const Tuple& bc, Mult ms) {
      Mult mt = t.lookup(Tuple::of(bc[1], ab[0]));
      if (mt == 0) return;
      Mult m = mr * ms * mt;
      switch (k) {
        case 0: count += m; break;
        case 1: out[Tuple::of(ab[0])] += m; break;
        case 2: out[Tuple::of(ab[0], ab[1])] += m; break;
        default: out[Tuple::of(ab[0], ab[1], bc[1])] += m; break;
      }
    });
  });
  if (k == 0 && count != 0) out[Tuple::of()] = count;
  absl::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

Mult oracle_count(const PlainDatabase& db) {
  ResultMap r = oracle_triangle(db, 0);
  return r.empty() ? 0 : r.begin()->second;
}

bool oracle_oumv(const BitMatrix& M, const BitVector& u, const BitVector& v) {
  const std::size_t n = M.size();
  if (u.size() != n || v.size() != n)
    throw DimensionMismatch("vector length does not match the matrix dimension");
  for (const auto& row : M)
    if (row.size() != n) throw DimensionMismatch("matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (M[i][j] && v[j]) return true;
  }
  return false;
}

}  // namespace ivme
