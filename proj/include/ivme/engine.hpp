#pragma once

#include "ivme/enumeration.hpp"
#include "ivme/views.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ivme {

enum class QueryKind { nullary, nullary_double, unary, binary, ternary };

int query_arity(QueryKind q);
std::array<bool, 3> partition_scheme(QueryKind q);
const char* query_name(QueryKind q);
QueryKind parse_query(const std::string& name, bool double_partition = false);

struct ResultRow {
  Tuple t;
  Mult m;
};

// Pull-based result enumeration. Charges its work to the enumerate phase and
// refuses to continue once the owning state changed.
class ResultCursor {
 public:
  ResultCursor(const std::uint64_t* version, CostMeter* meter)
      : version_(version), opened_(*version), meter_(meter) {}
  virtual ~ResultCursor() = default;

  std::optional<ResultRow> next();

 protected:
  virtual std::optional<ResultRow> advance() = 0;
  CostMeter* meter() const { return meter_; }

 private:
  const std::uint64_t* version_;
  std::uint64_t opened_;
  CostMeter* meter_;
};

class QueryViews {
 public:
  QueryViews(const Partitions* parts, CostMeter* meter) : parts_(parts), meter_(meter) {}
  virtual ~QueryViews() = default;

  virtual QueryKind kind() const = 0;
  // Maintains the views under an update to one part. Called before the part
  // itself changes.
  virtual void apply(Rel rel, int part, const Tuple& t, Mult m) = 0;
  virtual void rebuild() = 0;
  virtual std::unique_ptr<ResultCursor> open(const std::uint64_t* version) const = 0;
  virtual std::vector<std::pair<std::string, const IndexedRelation*>> relations() const = 0;
  virtual std::vector<std::pair<std::string, Mult>> scalars() const { return {}; }

 protected:
  const Partitions& parts() const { return *parts_; }
  CostMeter* meter() const { return meter_; }

 private:
  const Partitions* parts_;
  CostMeter* meter_;
};

std::unique_ptr<QueryViews> make_views(QueryKind q, const Partitions* parts, CostMeter* meter);

// Set iterator over a materialized view whose schema is a permutation of the
// first k query variables.
class RelationSetIterator : public SetIterator {
 public:
  RelationSetIterator(const IndexedRelation* rel, int k);
  std::optional<Elem> next() override;
  bool contains(Elem e) const override;

 private:
  Elem encode(const Tuple& t) const;
  Tuple decode(Elem e) const;

  const IndexedRelation* rel_;
  int k_;
  std::array<int, 2> pos_{};
  IndexedRelation::EntryId id_ = IndexedRelation::kNone;
  bool started_ = false;
};

// Cursor over the union of several sets of encoded result tuples; the
// multiplicity of each distinct tuple is computed by a callback.
class UnionCursor : public ResultCursor {
 public:
  using MultFn = std::function<Mult(Elem)>;
  UnionCursor(const std::uint64_t* version, CostMeter* meter, int k,
              std::vector<std::unique_ptr<SetIterator>> its, MultFn mult);

 protected:
  std::optional<ResultRow> advance() override;

 private:
  int k_;
  std::vector<std::unique_ptr<SetIterator>> owned_;
  std::vector<SetIterator*> its_;
  MultFn mult_;
};

// Buckets of a view tree for the binary query: one bucket per C-value of the
// second root, holding (A,B)-pairs.
class BinaryBucketSource {
 public:
  class Bucket {
   public:
    Bucket(const ViewTree* tree, Value c) : tree_(tree), c_(c) {}
    std::optional<Elem> first() const;
    std::optional<Elem> successor(Elem e) const;
    bool contains(Elem e) const;

   private:
    std::optional<Elem> start_at(IndexedRelation::EntryId wid) const;
    const ViewTree* tree_;
    Value c_;
  };
  class Keys {
   public:
    explicit Keys(const IndexedRelation* rel) : rel_(rel) {}
    std::optional<Elem> first() const;
    std::optional<Elem> successor(Elem e) const;
    bool contains(Elem e) const;

   private:
    const IndexedRelation* rel_;
  };
  using BucketColl = Bucket;
  using BucketsColl = Keys;

  explicit BinaryBucketSource(const ViewTree* tree) : tree_(tree) {}
  Keys buckets() const { return Keys(&tree_->root_hat()); }
  Bucket bucket(Elem key) const { return Bucket(tree_, static_cast<Value>(key)); }
  void candidate_buckets(Elem e, std::vector<Elem>& out) const;

 private:
  const ViewTree* tree_;
};

// Buckets of the unary query's view tree: one bucket per (B,C)-pair of the
// root, holding A-values.
class UnaryBucketSource {
 public:
  class Bucket {
   public:
    Bucket(const ViewTree* tree, Value b, Value c) : tree_(tree), b_(b), c_(c) {}
    std::optional<Elem> first() const;
    std::optional<Elem> successor(Elem e) const;
    bool contains(Elem e) const;

   private:
    const ViewTree* tree_;
    Value b_, c_;
  };
  class Keys {
   public:
    explicit Keys(const IndexedRelation* rel) : rel_(rel) {}
    std::optional<Elem> first() const;
    std::optional<Elem> successor(Elem e) const;
    bool contains(Elem e) const;

   private:
    const IndexedRelation* rel_;
  };
  using BucketColl = Bucket;
  using BucketsColl = Keys;

  explicit UnaryBucketSource(const ViewTree* tree) : tree_(tree) {}
  Keys buckets() const { return Keys(&tree_->root()); }
  Bucket bucket(Elem key) const { return Bucket(tree_, hi(key), lo(key)); }
  void candidate_buckets(Elem e, std::vector<Elem>& out) const;

 private:
  const ViewTree* tree_;
};

}  // namespace ivme
