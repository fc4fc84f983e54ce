#pragma once

#include <absl/hash/hash.h>

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace ivme {

using Value = std::uint32_t;
using Mult = std::int64_t;

enum class Var : std::uint8_t { A = 0, B = 1, C = 2 };
enum class Rel : std::uint8_t { R = 0, S = 1, T = 2 };

inline constexpr Var var_at(int i) { return static_cast<Var>(((i % 3) + 3) % 3); }
inline constexpr int var_index(Var v) { return static_cast<int>(v); }
inline constexpr int rel_index(Rel r) { return static_cast<int>(r); }
inline constexpr Rel rel_at(int i) { return static_cast<Rel>(((i % 3) + 3) % 3); }

char var_name(Var v);
char rel_name(Rel r);
Rel parse_rel(char c);

// A tuple of at most three domain values. Unused slots stay zero so that
// equality and hashing only depend on the stored prefix.
struct Tuple {
  std::array<Value, 3> v{};
  std::uint8_t n = 0;

  static Tuple of() { return Tuple{}; }
  static Tuple of(Value a) { return Tuple{{a, 0, 0}, 1}; }
  static Tuple of(Value a, Value b) { return Tuple{{a, b, 0}, 2}; }
  static Tuple of(Value a, Value b, Value c) { return Tuple{{a, b, c}, 3}; }

  Value operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return n; }

  friend bool operator==(const Tuple& x, const Tuple& y) {
    return x.n == y.n && x.v == y.v;
  }
  friend std::strong_ordering operator<=>(const Tuple& x, const Tuple& y) {
    if (auto c = x.n <=> y.n; c != 0) return c;
    return x.v <=> y.v;
  }
  template <typename H>
  friend H AbslHashValue(H h, const Tuple& t) {
    return H::combine(std::move(h), t.v[0], t.v[1], t.v[2], t.n);
  }
};

std::string to_string(const Tuple& t);

struct Schema {
  std::array<Var, 3> vars{};
  std::uint8_t n = 0;

  Schema() = default;
  Schema(std::initializer_list<Var> vs);

  std::size_t size() const { return n; }
  Var operator[](std::size_t i) const { return vars[i]; }
  int position(Var v) const;
  bool contains(Var v) const { return position(v) >= 0; }

  friend bool operator==(const Schema& x, const Schema& y) {
    if (x.n != y.n) return false;
    for (std::uint8_t i = 0; i < x.n; ++i)
      if (x.vars[i] != y.vars[i]) return false;
    return true;
  }
};

std::string to_string(const Schema& s);

// R(A,B), S(B,C), T(C,A): relation i ranges over (var_at(i), var_at(i+1)).
inline Schema schema_of(Rel r) {
  int i = rel_index(r);
  return Schema{var_at(i), var_at(i + 1)};
}

// Schema over the first k variables of (A,B,C).
Schema free_schema(int k);

struct Update {
  Rel rel = Rel::R;
  Value x = 0;
  Value y = 0;
  Mult m = 1;
};

class RejectedDelete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingIndex : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StaleIterator : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ivme
