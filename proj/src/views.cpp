#include "ivme/views.hpp"

namespace ivme {

Partitions::Partitions(std::array<bool, 3> is_double, CostMeter* meter) {
  for (int i = 0; i < 3; ++i)
    rels_[i] = std::make_unique<PartitionedRelation>(rel_at(i), is_double[i], meter);
}

std::size_t Partitions::size() const {
  return rels_[0]->size() + rels_[1]->size() + rels_[2]->size();
}

bool factor_has(const Factor& f, Rel rel, int part) {
  return f.rel == rel && (f.mask & part_bit(part));
}

Mult factor_lookup(const Partitions& p, const Factor& f, const Tuple& t) {
  const PartitionedRelation& k = p[f.rel];
  Mult m = 0;
  for (int q = 0; q < k.part_count(); ++q)
    if (f.mask & part_bit(q)) m += k.part(q).lookup(t);
  return m;
}

std::size_t factor_slice_count(const Partitions& p, const Factor& f, int pos, Value v) {
  const PartitionedRelation& k = p[f.rel];
  std::size_t n = 0;
  for (int q = 0; q < k.part_count(); ++q)
    if (f.mask & part_bit(q)) n += k.part(q).slice_count(pos, Tuple::of(v));
  return n;
}

Mult closing_sum(const Partitions& p, const Factor& fj, const Factor& fk, Value alpha,
                 Value beta) {
  Mult s = 0;
  for_each_closing(p, fj, fk, alpha, beta, [&](Value, Mult prod) { s += prod; });
  return s;
}

TermView::TermView(std::string name, std::array<Factor, 3> factors, int k, CostMeter* meter)
    : name_(std::move(name)), f_(factors), k_(k), rel_(free_schema(k), {}, meter) {
  for (int i = 0; i < 3; ++i)
    if (f_[i].rel != rel_at(i)) throw std::invalid_argument("term factors must be R, S, T");
}

namespace {

void term_delta(const Partitions& p, const std::array<Factor, 3>& f, int k, int i, Value alpha,
                Value beta, Mult m, IndexedRelation& rel, Mult& scalar) {
  const Factor& fj = f[(i + 1) % 3];
  const Factor& fk = f[(i + 2) % 3];
  int third = (i + 2) % 3;
  if (k == 0) {
    scalar += m * closing_sum(p, fj, fk, alpha, beta);
  } else if (third < k) {
    for_each_closing(p, fj, fk, alpha, beta, [&](Value c, Mult prod) {
      rel.apply_delta(prefix(canonical_triple(i, alpha, beta, c), k), m * prod);
    });
  } else {
    Mult s = closing_sum(p, fj, fk, alpha, beta);
    if (s) rel.apply_delta(prefix(canonical_triple(i, alpha, beta, 0), k), m * s);
  }
}

}  // namespace

void TermView::on_update(const Partitions& p, Rel rel, int part, const Tuple& t, Mult m) {
  int i = rel_index(rel);
  if (!(f_[i].mask & part_bit(part))) return;
  term_delta(p, f_, k_, i, t[0], t[1], m, rel_, scalar_);
}

void TermView::rebuild(const Partitions& p) {
  rel_.clear();
  scalar_ = 0;
  factor_for_each(p, f_[0], [&](const Tuple& t, Mult m) {
    term_delta(p, f_, k_, 0, t[0], t[1], m, rel_, scalar_);
  });
}

namespace {

Schema roles_schema(int frame, std::initializer_list<int> roles) {
  Schema s;
  for (int r : roles) s.vars[s.n++] = var_at(frame + r);
  return s;
}

}  // namespace

ViewTree::ViewTree(ViewTreeSpec spec, CostMeter* meter)
    : spec_(std::move(spec)), q_(roles_schema(spec_.frame, {0, 2}), {}, meter) {
  const int fr = spec_.frame;
  if (spec_.f1.rel != rel_at(fr) || spec_.f2.rel != rel_at(fr + 1) ||
      spec_.f3.rel != rel_at(fr + 2))
    throw std::invalid_argument("view tree factors do not match the frame");
  if (spec_.keep_triple) {
    std::vector<Schema> idx;
    for (const auto& roles : spec_.triple_indexes) {
      Schema s;
      for (int r : roles) s.vars[s.n++] = var_at(fr + r);
      idx.push_back(s);
    }
    p_ = std::make_unique<IndexedRelation>(roles_schema(fr, {0, 1, 2}), idx, meter);
  }
  switch (spec_.w) {
    case RootMode::none: break;
    case RootMode::pair:
      w_ = std::make_unique<IndexedRelation>(
          roles_schema(fr, {0, 2}),
          std::vector<Schema>{roles_schema(fr, {0}), roles_schema(fr, {2})}, meter);
      break;
    case RootMode::onto_x:
      w_ = std::make_unique<IndexedRelation>(roles_schema(fr, {0}), std::vector<Schema>{}, meter);
      break;
    case RootMode::onto_z:
      w_ = std::make_unique<IndexedRelation>(roles_schema(fr, {2}), std::vector<Schema>{}, meter);
      break;
  }
  if (spec_.w_hat != RootMode::none) {
    if (spec_.w != RootMode::pair) throw std::invalid_argument("second root needs a pair root");
    w_hat_ = std::make_unique<IndexedRelation>(
        roles_schema(fr, {spec_.w_hat == RootMode::onto_x ? 0 : 2}), std::vector<Schema>{}, meter);
  }
}

void ViewTree::add_root(Value x, Value z, Mult d) {
  switch (spec_.w) {
    case RootMode::none: return;
    case RootMode::pair: w_->apply_delta(Tuple::of(x, z), d); break;
    case RootMode::onto_x: w_->apply_delta(Tuple::of(x), d); break;
    case RootMode::onto_z: w_->apply_delta(Tuple::of(z), d); break;
  }
  if (w_hat_) w_hat_->apply_delta(Tuple::of(spec_.w_hat == RootMode::onto_x ? x : z), d);
}

void ViewTree::add_pair(const Partitions& p, Value x, Value y, Value z, Mult d, bool with_root) {
  if (p_) p_->apply_delta(Tuple::of(x, y, z), d);
  q_.apply_delta(Tuple::of(x, z), d);
  if (with_root && w_) {
    Mult f3 = factor_lookup(p, spec_.f3, Tuple::of(z, x));
    if (f3) add_root(x, z, d * f3);
  }
}

void ViewTree::on_update(const Partitions& p, Rel rel, int part, const Tuple& t, Mult m) {
  if (factor_has(spec_.f1, rel, part)) {
    Value x = t[0], y = t[1];
    factor_for_each_slice(p, spec_.f2, 0, y, [&](const Tuple& s, Mult m2) {
      add_pair(p, x, y, s[1], m * m2, true);
    });
  } else if (factor_has(spec_.f2, rel, part)) {
    Value y = t[0], z = t[1];
    factor_for_each_slice(p, spec_.f1, 1, y, [&](const Tuple& s, Mult m1) {
      add_pair(p, s[0], y, z, m1 * m, true);
    });
  } else if (w_ && factor_has(spec_.f3, rel, part)) {
    Value z = t[0], x = t[1];
    Mult q = q_.lookup(Tuple::of(x, z));
    if (q) add_root(x, z, q * m);
  }
}

void ViewTree::rebuild(const Partitions& p) {
  if (p_) p_->clear();
  q_.clear();
  if (w_) w_->clear();
  if (w_hat_) w_hat_->clear();
  factor_for_each(p, spec_.f1, [&](const Tuple& t, Mult m1) {
    factor_for_each_slice(p, spec_.f2, 0, t[1], [&](const Tuple& s, Mult m2) {
      add_pair(p, t[0], t[1], s[1], m1 * m2, false);
    });
  });
  if (!w_) return;
  q_.for_each([&](const Tuple& t, Mult q) {
    Mult f3 = factor_lookup(p, spec_.f3, Tuple::of(t[1], t[0]));
    if (f3) add_root(t[0], t[1], q * f3);
  });
}

std::vector<std::pair<std::string, const IndexedRelation*>> ViewTree::relations() const {
  std::vector<std::pair<std::string, const IndexedRelation*>> out;
  if (p_) out.emplace_back(spec_.name + ".triple", p_.get());
  out.emplace_back(spec_.name + ".pair", &q_);
  if (w_) out.emplace_back(spec_.name + ".root", w_.get());
  if (w_hat_) out.emplace_back(spec_.name + ".root_hat", w_hat_.get());
  return out;
}

}  // namespace ivme
