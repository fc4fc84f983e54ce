#pragma once

#include "ivme/partition.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ivme {

class Partitions {
 public:
  Partitions(std::array<bool, 3> is_double, CostMeter* meter);

  PartitionedRelation& operator[](Rel r) { return *rels_[rel_index(r)]; }
  const PartitionedRelation& operator[](Rel r) const { return *rels_[rel_index(r)]; }
  PartitionedRelation& at(int i) { return *rels_[i]; }
  const PartitionedRelation& at(int i) const { return *rels_[i]; }

  std::size_t size() const;

 private:
  std::array<std::unique_ptr<PartitionedRelation>, 3> rels_;
};

// A union of parts of one base relation.
struct Factor {
  Rel rel;
  std::uint8_t mask;
};

bool factor_has(const Factor& f, Rel rel, int part);
Mult factor_lookup(const Partitions& p, const Factor& f, const Tuple& t);
std::size_t factor_slice_count(const Partitions& p, const Factor& f, int pos, Value v);

template <class F>
void factor_for_each_slice(const Partitions& p, const Factor& f, int pos, Value v, F&& fn) {
  const PartitionedRelation& k = p[f.rel];
  for (int q = 0; q < k.part_count(); ++q)
    if (f.mask & part_bit(q)) k.part(q).for_each_slice(pos, Tuple::of(v), fn);
}

template <class F>
void factor_for_each(const Partitions& p, const Factor& f, F&& fn) {
  const PartitionedRelation& k = p[f.rel];
  for (int q = 0; q < k.part_count(); ++q)
    if (f.mask & part_bit(q)) k.part(q).for_each(fn);
}

// For an update (alpha, beta) to relation i, calls fn(c, fj(beta,c) * fk(c,alpha))
// for every value c of the third variable with a nonzero product, where
// fj ranges over relation i+1 and fk over relation i+2. Iterates the smaller
// of the two slices and looks up the other side.
template <class F>
void for_each_closing(const Partitions& p, const Factor& fj, const Factor& fk, Value alpha,
                      Value beta, F&& fn) {
  std::size_t cj = factor_slice_count(p, fj, 0, beta);
  if (cj == 0) return;
  std::size_t ck = factor_slice_count(p, fk, 1, alpha);
  if (ck == 0) return;
  if (cj <= ck) {
    factor_for_each_slice(p, fj, 0, beta, [&](const Tuple& t, Mult mj) {
      Mult mk = factor_lookup(p, fk, Tuple::of(t[1], alpha));
      if (mk) fn(t[1], mj * mk);
    });
  } else {
    factor_for_each_slice(p, fk, 1, alpha, [&](const Tuple& t, Mult mk) {
      Mult mj = factor_lookup(p, fj, Tuple::of(beta, t[0]));
      if (mj) fn(t[0], mj * mk);
    });
  }
}

Mult closing_sum(const Partitions& p, const Factor& fj, const Factor& fk, Value alpha, Value beta);

// Canonical (A,B,C) triple from the values of relation i's variables and the
// remaining variable.
inline Tuple canonical_triple(int i, Value alpha, Value beta, Value gamma) {
  Tuple t = Tuple::of(0, 0, 0);
  t.v[i] = alpha;
  t.v[(i + 1) % 3] = beta;
  t.v[(i + 2) % 3] = gamma;
  return t;
}

inline Tuple prefix(const Tuple& t, int k) {
  Tuple r = t;
  for (int i = k; i < 3; ++i) r.v[i] = 0;
  r.n = static_cast<std::uint8_t>(k);
  return r;
}

// Skew-aware view: sum over the bound variables of R^r S^s T^t, grouped by the
// first k of (A,B,C). k = 0 keeps a scalar.
class TermView {
 public:
  TermView(std::string name, std::array<Factor, 3> factors, int k, CostMeter* meter);

  const std::string& name() const { return name_; }
  int arity() const { return k_; }
  const std::array<Factor, 3>& factors() const { return f_; }
  const IndexedRelation& rel() const { return rel_; }
  Mult scalar() const { return scalar_; }

  void on_update(const Partitions& p, Rel rel, int part, const Tuple& t, Mult m);
  void rebuild(const Partitions& p);

 private:
  std::string name_;
  std::array<Factor, 3> f_;
  int k_;
  IndexedRelation rel_;
  Mult scalar_ = 0;
};

// Three-level view tree over a frame (x, y, z) = (var_at(frame), +1, +2) with
// F1 over (x,y), F2 over (y,z), F3 over (z,x):
//   P(x,y,z)  = F1(x,y) F2(y,z)                   (optional)
//   Q(x,z)    = sum_y P(x,y,z)
//   W         = Q(x,z) F3(z,x), kept as (x,z) or summed onto x or onto z
//   W_hat     = W summed onto x or onto z          (optional)
enum class RootMode { none, pair, onto_x, onto_z };

struct ViewTreeSpec {
  std::string name;
  int frame = 0;
  Factor f1, f2, f3;
  bool keep_triple = false;
  // Extra indexes on P given as role lists (0 = x, 1 = y, 2 = z).
  std::vector<std::vector<int>> triple_indexes;
  RootMode w = RootMode::none;
  RootMode w_hat = RootMode::none;
};

class ViewTree {
 public:
  ViewTree(ViewTreeSpec spec, CostMeter* meter);

  const ViewTreeSpec& spec() const { return spec_; }
  Var role(int r) const { return var_at(spec_.frame + r); }

  const IndexedRelation& triple() const { return *p_; }
  const IndexedRelation& pair() const { return q_; }
  const IndexedRelation& root() const { return *w_; }
  const IndexedRelation& root_hat() const { return *w_hat_; }
  bool has_triple() const { return static_cast<bool>(p_); }
  bool has_root() const { return static_cast<bool>(w_); }
  bool has_root_hat() const { return static_cast<bool>(w_hat_); }

  void on_update(const Partitions& p, Rel rel, int part, const Tuple& t, Mult m);
  void rebuild(const Partitions& p);

  std::vector<std::pair<std::string, const IndexedRelation*>> relations() const;

 private:
  void add_pair(const Partitions& p, Value x, Value y, Value z, Mult d, bool with_root);
  void add_root(Value x, Value z, Mult d);

  ViewTreeSpec spec_;
  std::unique_ptr<IndexedRelation> p_;
  IndexedRelation q_;
  std::unique_ptr<IndexedRelation> w_;
  std::unique_ptr<IndexedRelation> w_hat_;
};

}  // namespace ivme
