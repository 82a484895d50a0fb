#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mixmult/multidegree.hpp"

namespace mixmult {

class PieceEngine;

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A numerical function on multidegrees, e.g. a length function.
using GridFunction = std::function<std::int64_t(const Multidegree&)>;

/// Values of a function on the box [origin, origin + extent] (extent + 1
/// points per axis), stored row-major with the last axis fastest.
struct NumericalTable {
  std::size_t arity = 0;
  Multidegree origin;
  std::vector<int> extent;
  std::vector<std::int64_t> values;

  std::size_t pointCount() const;
  Multidegree pointAt(std::size_t flat) const;
  std::int64_t at(const Multidegree& point) const;
};

/// What was checked before a fit was accepted.
struct FitCertificate {
  Multidegree origin;
  std::vector<int> extent;
  std::size_t validatedPoints = 0;
  int attempts = 0;
};

/// Polynomial with exact rational coefficients, keyed by exponent tuple.
struct FittedPolynomial {
  std::size_t arity = 0;
  std::map<Multidegree, Rational> coefficients;  // nonzero entries only
  int totalDegree = -1;                          // -1 for the zero polynomial
  FitCertificate certificate;

  Rational coefficient(const Multidegree& exponent) const;
  Rational evaluate(const Multidegree& point) const;
};

struct StabilizationConfig {
  int initialOrigin = 1;
  int maxOrigin = 64;
  int validationShell = 2;
  /// Worker threads for grid evaluation; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

NumericalTable evalGrid(const GridFunction& fn, const Multidegree& origin,
                        const std::vector<int>& extent, unsigned threads = 1);

/// Interpolates the sub-box [origin, origin + maxTotalDegree] by iterated
/// forward differences and checks the result against every table value.
/// Throws WindowTooSmall when some extent is below maxTotalDegree + 1 and
/// FitMismatch when a table value is not reproduced.
FittedPolynomial fitPolynomial(const NumericalTable& table, int maxTotalDegree);

/// Fits fn on windows starting at max(n0*(1,..,1), floor) and validates on a
/// shell of `validationShell` extra layers beyond the window on every axis,
/// doubling n0 until the fit certifies. Throws NoStabilization past
/// config.maxOrigin.
FittedPolynomial detectStabilization(const GridFunction& fn, std::size_t arity,
                                     int maxTotalDegree, const StabilizationConfig& config,
                                     const Multidegree& floor = {});

/// β!·coefficient(β) for every β with |β| = r. Throws
/// NonIntegralLeadingCoefficient / NegativeLeadingCoefficient.
std::map<Multidegree, std::int64_t> leadingCoeffs(const FittedPolynomial& poly, int r);

/// Certified fit of n -> dim [B]_n for a standard graded ring.
FittedPolynomial hilbertPolynomial(PieceEngine& engine, const StabilizationConfig& config);
/// Dimension of MultiProj(B): total degree of the Hilbert polynomial, -1 when
/// it vanishes.
int projDim(PieceEngine& engine, const StabilizationConfig& config);

}  // namespace mixmult
