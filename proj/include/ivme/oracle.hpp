#pragma once

#include "ivme/indexed_relation.hpp"

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <vector>

namespace ivme {

using ResultMap = absl::flat_hash_map<Tuple, Mult>;

// Unpartitioned database R(A,B), S(B,C), T(C,A) with an index on each
// variable of each relation.
class PlainDatabase {
 public:
  PlainDatabase();
  PlainDatabase(const PlainDatabase& other);
  PlainDatabase& operator=(const PlainDatabase& other);

  // Throws RejectedDelete if a multiplicity would become negative.
  void apply(Rel rel, Value x, Value y, Mult m);
  void apply(const Update& u) { apply(u.rel, u.x, u.y, u.m); }

  const IndexedRelation& operator[](Rel r) const { return rels_[rel_index(r)]; }
  Mult lookup(Rel r, Value x, Value y) const { return (*this)[r].lookup(Tuple::of(x, y)); }
  // Number of distinct tuples.
  std::size_t size() const;

 private:
  std::vector<IndexedRelation> rels_;
};

// Sum over the bound variables of R(a,b) S(b,c) T(c,a), grouped by the first k
// of (A,B,C). For k = 0 the map holds the empty tuple when the count is nonzero.
ResultMap oracle_triangle(const PlainDatabase& db, int k);
Mult oracle_count(const PlainDatabase& db);

using BitMatrix = std::vector<std::vector<std::uint8_t>>;
using BitVector = std::vector<std::uint8_t>;

// u^T M v over the Boolean semiring.
bool oracle_oumv(const BitMatrix& M, const BitVector& u, const BitVector& v);

}  // namespace ivme
