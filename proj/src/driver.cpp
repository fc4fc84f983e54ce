#include "ivme/driver.hpp"

#include "ivme/engines.hpp"

#include <map>
#include <sstream>

namespace ivme {

Engine::Engine(QueryKind query, double eps)
    : query_(query),
      eps_(eps),
      meter_(std::make_unique<CostMeter>()),
      parts_(std::make_unique<Partitions>(partition_scheme(query), meter_.get())),
      views_(make_views(query, parts_.get(), meter_.get())) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("epsilon must lie in [0,1]");
}

Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;
Engine::~Engine() = default;

Engine Engine::from_database(QueryKind query, double eps, const PlainDatabase& db) {
  Engine e(query, eps);
  e.N_ = 2 * db.size() + 1;
  e.db_size_ = db.size();
  for (int i = 0; i < 3; ++i) {
    PartitionedRelation& k = e.parts_->at(i);
    db[rel_at(i)].for_each([&](const Tuple& t, Mult m) { k.part(0).apply_delta(t, m); });
    k.strict_repartition(e.threshold());
  }
  e.views_->rebuild();
  return e;
}

Engine Engine::preclassified(QueryKind query, double eps, const PlainDatabase& db) {
  Engine e(query, eps);
  e.N_ = 2 * db.size() + 1;
  const Threshold th = e.threshold();
  for (int i = 0; i < 3; ++i) {
    const Rel rel = rel_at(i);
    const IndexedRelation& k = db[rel];
    const bool dbl = e.parts_->at(i).is_double();
    k.for_each([&](const Tuple& t, Mult m) {
      bool first = eps == 0.0 || th.strict_heavy(k.slice_count(0, Tuple::of(t[0])));
      bool second = eps == 0.0 || th.strict_heavy(k.slice_count(1, Tuple::of(t[1])));
      int part = PartitionedRelation::part_for(dbl, first, second);
      const std::uint64_t start = e.meter_->total();
      {
        PhaseScope scope(e.meter_.get(), Phase::apply);
        e.apply_part(rel, part, t, m);
      }
      ++e.db_size_;
      ++e.version_;
      e.meter_->record_update(e.meter_->total() - start);
    });
  }
  return e;
}

int Engine::affected_part(Rel rel, Value x, Value y) const {
  const PartitionedRelation& k = (*parts_)[rel];
  if (!k.is_double()) return (eps_ == 0.0 || k.heavy_on(0, x)) ? kH : kL;
  if (eps_ == 0.0) return kHH;
  return PartitionedRelation::part_for(true, k.heavy_on(0, x), k.heavy_on(1, y));
}

void Engine::apply_part(Rel rel, int part, const Tuple& t, Mult m) {
  views_->apply(rel, part, t, m);
  (*parts_)[rel].part(part).apply_delta(t, m);
}

void Engine::on_update(Rel rel, Value x, Value y, Mult m) {
  if (m == 0) throw std::invalid_argument("update multiplicity must be nonzero");
  const std::uint64_t start = meter_->total();
  const Tuple t = Tuple::of(x, y);
  {
    PhaseScope scope(meter_.get(), Phase::apply);
    const Mult cur = (*parts_)[rel].lookup(t);
    if (cur + m < 0)
      throw RejectedDelete("delete of " + to_string(t) + " from " + rel_name(rel) +
                           " exceeds its multiplicity");
    apply_part(rel, affected_part(rel, x, y), t, m);
    if (cur == 0) ++db_size_;
    if (cur + m == 0) --db_size_;
  }
  ++version_;
  if (db_size_ == N_) {
    N_ *= 2;
    major_rebalance();
  } else if (db_size_ < N_ / 4) {
    N_ = N_ / 2 >= 2 ? N_ / 2 - 1 : 1;
    major_rebalance();
  } else {
    minor_checks(rel, x, y);
  }
  meter_->record_update(meter_->total() - start);
}

void Engine::major_rebalance() {
  if (hook_) hook_(RebalanceKind::major, true);
  {
    PhaseScope scope(meter_.get(), Phase::major);
    const Threshold th = threshold();
    for (int i = 0; i < 3; ++i) parts_->at(i).strict_repartition(th);
    views_->rebuild();
  }
  ++majors_;
  ++version_;
  if (hook_) hook_(RebalanceKind::major, false);
}

void Engine::move_tuples(Rel rel, int pos, Value v, int src, int dst) {
  if (src == dst) throw std::invalid_argument("move_tuples needs distinct parts");
  IndexedRelation& from = (*parts_)[rel].part(src);
  std::vector<std::pair<Tuple, Mult>> moved;
  from.for_each_slice(pos, Tuple::of(v), [&](const Tuple& t, Mult m) { moved.emplace_back(t, m); });
  for (const auto& [t, m] : moved) {
    apply_part(rel, dst, t, m);
    apply_part(rel, src, t, -m);
    move_applies_ += 2;
  }
}

bool Engine::minor_single(Rel rel, Value x) {
  const PartitionedRelation& k = (*parts_)[rel];
  const Threshold th = threshold();
  const std::size_t d = k.degree(0, x);
  if (k.heavy_on(0, x) && th.heavy_too_small(d)) {
    move_tuples(rel, 0, x, kH, kL);
    return true;
  }
  if (k.light_on(0, x) && th.light_too_large(d)) {
    move_tuples(rel, 0, x, kL, kH);
    return true;
  }
  return false;
}

void Engine::minor_double(Rel rel, Value x, Value y) {
  const PartitionedRelation& k = (*parts_)[rel];
  const Threshold th = threshold();
  int x_dir = 0, y_dir = 0;
  std::size_t d = k.degree(0, x);
  if (k.heavy_on(0, x) && th.heavy_too_small(d)) {
    x_dir = -1;
  } else if (k.light_on(0, x) && th.light_too_large(d)) {
    x_dir = 1;
  }
  if (x_dir < 0) {
    move_tuples(rel, 0, x, kHH, kLH);
    move_tuples(rel, 0, x, kHL, kLL);
  } else if (x_dir > 0) {
    move_tuples(rel, 0, x, kLH, kHH);
    move_tuples(rel, 0, x, kLL, kHL);
  }
  d = k.degree(1, y);
  if (k.heavy_on(1, y) && th.heavy_too_small(d)) {
    y_dir = -1;
  } else if (k.light_on(1, y) && th.light_too_large(d)) {
    y_dir = 1;
  }
  if (x_dir * y_dir < 0)
    throw std::logic_error("minor rebalancing moved values in opposite directions");
  if (y_dir < 0) {
    move_tuples(rel, 1, y, kHH, kHL);
    move_tuples(rel, 1, y, kLH, kLL);
  } else if (y_dir > 0) {
    move_tuples(rel, 1, y, kHL, kHH);
    move_tuples(rel, 1, y, kLL, kLH);
  }
}

void Engine::minor_checks(Rel rel, Value x, Value y) {
  const PartitionedRelation& k = (*parts_)[rel];
  const Threshold th = threshold();
  auto violated = [&](int pos, Value v) {
    if (!k.partitioned_on(pos)) return false;
    std::size_t d = k.degree(pos, v);
    return (k.heavy_on(pos, v) && th.heavy_too_small(d)) ||
           (k.light_on(pos, v) && th.light_too_large(d));
  };
  bool any;
  {
    PhaseScope scope(meter_.get(), Phase::minor);
    any = violated(0, x) || violated(1, y);
  }
  if (!any) return;
  if (hook_) hook_(RebalanceKind::minor, true);
  {
    PhaseScope scope(meter_.get(), Phase::minor);
    if (k.is_double())
      minor_double(rel, x, y);
    else
      minor_single(rel, x);
  }
  ++minors_;
  ++version_;
  if (hook_) hook_(RebalanceKind::minor, false);
}

ResultMap Engine::result() const {
  ResultMap out;
  auto cur = open();
  while (auto row = cur->next()) out[row->t] += row->m;
  return out;
}

Mult Engine::count() const {
  if (auto* n = dynamic_cast<const NullaryViews*>(views_.get())) return n->count();
  Mult s = 0;
  for (const auto& [t, m] : result()) s += m;
  return s;
}

std::string Engine::check_invariants() const {
  std::ostringstream err;
  if (!(N_ / 4 <= db_size_ && db_size_ < N_))
    err << "size invariant broken: N=" << N_ << " |D|=" << db_size_ << "\n";
  if (parts_->size() != db_size_)
    err << "distinct tuple count " << parts_->size() << " differs from |D|=" << db_size_ << "\n";
  const Threshold th = threshold();
  for (int i = 0; i < 3; ++i) {
    const PartitionedRelation& k = parts_->at(i);
    for (const auto& v : k.violations(th))
      err << rel_name(k.rel()) << ": " << var_name(v.var) << "=" << v.value << " should be "
          << (v.to_heavy ? "heavy" : "light") << "\n";
    if (auto s = k.check_value_function(); !s.empty()) err << s << "\n";
    for (int p = 0; p < k.part_count(); ++p)
      if (auto s = k.part(p).check_consistency(); !s.empty())
        err << rel_name(k.rel()) << "^" << part_name(k.is_double(), p) << ": " << s << "\n";
  }
  for (const auto& [name, rel] : views_->relations())
    if (auto s = rel->check_consistency(); !s.empty()) err << name << ": " << s << "\n";
  return err.str();
}

std::string Engine::check_views() const {
  CostMeter scratch;
  auto fresh = make_views(query_, parts_.get(), &scratch);
  fresh->rebuild();
  auto mine = views_->relations();
  auto theirs = fresh->relations();
  std::ostringstream err;
  for (std::size_t i = 0; i < mine.size(); ++i) {
    auto a = mine[i].second->entries();
    auto b = theirs[i].second->entries();
    std::map<Tuple, Mult> ma(a.begin(), a.end()), mb(b.begin(), b.end());
    if (ma != mb) err << "view " << mine[i].first << " differs from its recomputation\n";
  }
  if (views_->scalars() != fresh->scalars()) err << "scalar views differ from recomputation\n";
  return err.str();
}

}  // namespace ivme
