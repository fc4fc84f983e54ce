#pragma once

#include "ivme/engine.hpp"

namespace ivme {

// Triangle count with single (or double) partitions and the three pair views
// V_RS, V_ST, V_TR.
class NullaryViews : public QueryViews {
 public:
  NullaryViews(const Partitions* parts, CostMeter* meter, bool double_partition);

  QueryKind kind() const override {
    return double_ ? QueryKind::nullary_double : QueryKind::nullary;
  }
  void apply(Rel rel, int part, const Tuple& t, Mult m) override;
  void rebuild() override;
  std::unique_ptr<ResultCursor> open(const std::uint64_t* version) const override;
  std::vector<std::pair<std::string, const IndexedRelation*>> relations() const override;
  std::vector<std::pair<std::string, Mult>> scalars() const override { return {{"count", count_}}; }

  Mult count() const { return count_; }
  const ViewTree& pair_view(Rel first) const { return trees_[rel_index(first)]; }

 private:
  bool double_;
  std::vector<ViewTree> trees_;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> terms_;
  Mult count_ = 0;
};

class TernaryViews : public QueryViews {
 public:
  TernaryViews(const Partitions* parts, CostMeter* meter);

  QueryKind kind() const override { return QueryKind::ternary; }
  void apply(Rel rel, int part, const Tuple& t, Mult m) override;
  void rebuild() override;
  std::unique_ptr<ResultCursor> open(const std::uint64_t* version) const override;
  std::vector<std::pair<std::string, const IndexedRelation*>> relations() const override;

  const TermView& hhh() const { return hhh_; }
  const TermView& lll() const { return lll_; }
  const ViewTree& tree(int i) const { return trees_[i]; }

 private:
  TermView hhh_, lll_;
  std::vector<ViewTree> trees_;
};

class BinaryViews : public QueryViews {
 public:
  BinaryViews(const Partitions* parts, CostMeter* meter);

  QueryKind kind() const override { return QueryKind::binary; }
  void apply(Rel rel, int part, const Tuple& t, Mult m) override;
  void rebuild() override;
  std::unique_ptr<ResultCursor> open(const std::uint64_t* version) const override;
  std::vector<std::pair<std::string, const IndexedRelation*>> relations() const override;

  // Multiplicity of (a,b) in the query result.
  Mult multiplicity(Value a, Value b) const;
  const std::vector<TermView>& terms() const { return terms_; }
  const ViewTree& tree_hlh() const { return trees_[0]; }
  const ViewTree& tree_st() const { return trees_[1]; }
  const ViewTree& tree_lhl() const { return trees_[2]; }

 private:
  std::vector<TermView> terms_;
  std::vector<ViewTree> trees_;
};

class UnaryViews : public QueryViews {
 public:
  UnaryViews(const Partitions* parts, CostMeter* meter);

  QueryKind kind() const override { return QueryKind::unary; }
  void apply(Rel rel, int part, const Tuple& t, Mult m) override;
  void rebuild() override;
  std::unique_ptr<ResultCursor> open(const std::uint64_t* version) const override;
  std::vector<std::pair<std::string, const IndexedRelation*>> relations() const override;

  Mult multiplicity(Value a) const;
  const std::vector<TermView>& terms() const { return terms_; }
  const ViewTree& tree_hl() const { return trees_[0]; }
  const ViewTree& tree_st() const { return trees_[1]; }
  const ViewTree& tree_lhhl() const { return trees_[2]; }

 private:
  std::vector<TermView> terms_;
  std::vector<ViewTree> trees_;
};

}  // namespace ivme
