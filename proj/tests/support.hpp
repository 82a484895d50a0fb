#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mixmult/maps.hpp"
#include "mixmult/multiplicity.hpp"
#include "mixmult/ring.hpp"

namespace testing {

using namespace mixmult;

inline IntPolynomial var(std::size_t n, std::size_t i) {
  return IntPolynomial::monomial(Monomial::variable(n, i));
}

/// Binomial coefficient by Pascal's rule, independent of any library code.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::vector<std::int64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = std::min(i, k); j >= 1; --j)
      row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  return row[static_cast<std::size_t>(k)];
}

/// k[x0..xm], standard graded.
inline std::shared_ptr<const MultigradedRing> polynomialRing(std::size_t nvars,
                                                             std::uint32_t prime = kDefaultPrime) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < nvars; ++i) vars.push_back({"x" + std::to_string(i), Multidegree{1}});
  return std::make_shared<MultigradedRing>(prime, 1, std::move(vars), std::vector<IntPolynomial>{});
}

/// k[x1..x3, y1..y3] / (x3*(y1,y2,y3), y3*(x1,x2,x3)), bigraded; variables
/// ordered x1 x2 x3 y1 y2 y3.
inline std::shared_ptr<const MultigradedRing> isomorphismRing(std::uint32_t prime = kDefaultPrime) {
  std::vector<Variable> vars;
  for (int i = 1; i <= 3; ++i) vars.push_back({"x" + std::to_string(i), Multidegree{1, 0}});
  for (int i = 1; i <= 3; ++i) vars.push_back({"y" + std::to_string(i), Multidegree{0, 1}});
  std::vector<IntPolynomial> rel;
  for (std::size_t j = 3; j < 6; ++j) rel.push_back(var(6, 2) * var(6, j));
  for (std::size_t j = 0; j < 3; ++j) rel.push_back(var(6, 5) * var(6, j));
  return std::make_shared<MultigradedRing>(prime, 2, std::move(vars), std::move(rel));
}

inline ProblemSpec isomorphismSpec() {
  return {isomorphismRing(), {{var(6, 0), var(6, 1)}, {var(6, 3), var(6, 4)}}};
}

/// k[x] inside k[x, y].
inline ProblemSpec lineInPlane() {
  std::vector<Variable> vars{{"x", Multidegree{1}}, {"y", Multidegree{1}}};
  auto ring = std::make_shared<MultigradedRing>(kDefaultPrime, 1, std::move(vars),
                                                std::vector<IntPolynomial>{});
  return {ring, {{var(2, 0)}}};
}

inline std::vector<std::string> planeVars() { return {"x0", "x1", "x2"}; }

inline LinearSystem cremona() {
  return {planeVars(), 2, {var(3, 1) * var(3, 2), var(3, 0) * var(3, 2), var(3, 0) * var(3, 1)}};
}

inline LinearSystem conics() {
  LinearSystem s{planeVars(), 2, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) s.forms.push_back(var(3, i) * var(3, j));
  return s;
}

inline LinearSystem identitySystem() {
  return {planeVars(), 1, {var(3, 0), var(3, 1), var(3, 2)}};
}

}  // namespace testing
