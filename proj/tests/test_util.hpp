#pragma once

#include "ivme/driver.hpp"

#include <map>

namespace ivme::test {

inline std::map<Tuple, Mult> sorted(const ResultMap& r) { return {r.begin(), r.end()}; }

inline Engine engine_with(QueryKind q, double eps, std::initializer_list<Update> ups) {
  Engine e(q, eps);
  for (const auto& u : ups) e.on_update(u);
  return e;
}

inline const QueryKind kAllQueries[] = {QueryKind::nullary, QueryKind::nullary_double,
                                        QueryKind::unary, QueryKind::binary, QueryKind::ternary};

}  // namespace ivme::test
