#pragma once

#include "ivme/engine.hpp"
#include "ivme/oracle.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ivme {

enum class RebalanceKind { major, minor };

// Called around every rebalancing step with before = true, then false.
using RebalanceHook = std::function<void(RebalanceKind kind, bool before)>;

// Query-agnostic maintenance state: threshold base, partitions, views and the
// cost meter.
class Engine {
 public:
  Engine(QueryKind query, double eps);
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;
  ~Engine();

  // Builds the state for an existing database with N = 2|D|+1.
  static Engine from_database(QueryKind query, double eps, const PlainDatabase& db);
  // Fixes N = 2|D|+1 up front, assigns each tuple its final part and inserts
  // through the view maintenance path without any rebalancing.
  static Engine preclassified(QueryKind query, double eps, const PlainDatabase& db);

  // Throws RejectedDelete (state unchanged) if a multiplicity would become
  // negative.
  void on_update(Rel rel, Value x, Value y, Mult m);
  void on_update(const Update& u) { on_update(u.rel, u.x, u.y, u.m); }

  int affected_part(Rel rel, Value x, Value y) const;

  QueryKind query() const { return query_; }
  double epsilon() const { return eps_; }
  std::uint64_t base() const { return N_; }
  Threshold threshold() const { return Threshold::make(N_, eps_); }
  std::size_t db_size() const { return db_size_; }
  std::uint64_t version() const { return version_; }

  const Partitions& partitions() const { return *parts_; }
  const QueryViews& views() const { return *views_; }
  CostMeter& meter() { return *meter_; }
  const CostMeter& meter() const { return *meter_; }

  std::unique_ptr<ResultCursor> open() const { return views_->open(&version_); }
  // Drains a fresh cursor.
  ResultMap result() const;
  Mult count() const;

  std::uint64_t major_count() const { return majors_; }
  std::uint64_t minor_count() const { return minors_; }
  std::uint64_t move_apply_calls() const { return move_applies_; }
  void set_rebalance_hook(RebalanceHook hook) { hook_ = std::move(hook); }

  // Empty string iff the size invariant and all loose part conditions hold
  // and every stored relation is internally consistent.
  std::string check_invariants() const;
  // Empty string iff every view equals its recomputation from the parts.
  std::string check_views() const;

  void major_rebalance();
  void move_tuples(Rel rel, int pos, Value v, int src, int dst);

 private:
  void apply_part(Rel rel, int part, const Tuple& t, Mult m);
  void minor_checks(Rel rel, Value x, Value y);
  bool minor_single(Rel rel, Value x);
  void minor_double(Rel rel, Value x, Value y);

  QueryKind query_;
  double eps_;
  std::uint64_t N_ = 1;
  std::size_t db_size_ = 0;
  std::uint64_t version_ = 0;
  std::unique_ptr<CostMeter> meter_;
  std::unique_ptr<Partitions> parts_;
  std::unique_ptr<QueryViews> views_;
  std::uint64_t majors_ = 0, minors_ = 0, move_applies_ = 0;
  RebalanceHook hook_;
};

}  // namespace ivme
