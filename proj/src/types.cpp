#include "ivme/types.hpp"

#include "ivme/cost_meter.hpp"

namespace ivme {

char var_name(Var v) { return "ABC"[var_index(v)]; }
char rel_name(Rel r) { return "RST"[rel_index(r)]; }

Rel parse_rel(char c) {
  switch (c) {
    case 'R': return Rel::R;
    case 'S': return Rel::S;
    case 'T': return Rel::T;
    default: throw std::invalid_argument(std::string("unknown relation ") + c);
  }
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.n; ++i) {
    if (i) out += ",";
    out += std::to_string(t.v[i]);
  }
  return out + ")";
}

Schema::Schema(std::initializer_list<Var> vs) {
  if (vs.size() > 3) throw std::invalid_argument("schema arity above 3");
  for (Var v : vs) vars[n++] = v;
}

int Schema::position(Var v) const {
  for (std::uint8_t i = 0; i < n; ++i)
    if (vars[i] == v) return i;
  return -1;
}

std::string to_string(const Schema& s) {
  std::string out;
  for (std::size_t i = 0; i < s.n; ++i) out += var_name(s.vars[i]);
  return out;
}

Schema free_schema(int k) {
  Schema s;
  for (int i = 0; i < k; ++i) s.vars[s.n++] = var_at(i);
  return s;
}

ParseError::ParseError(std::size_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::apply: return "apply";
    case Phase::major: return "major";
    case Phase::minor: return "minor";
    case Phase::enumerate: return "enumerate";
    case Phase::other: return "other";
  }
  return "?";
}

}  // namespace ivme
