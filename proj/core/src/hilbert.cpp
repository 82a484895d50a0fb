#include "mixmult/hilbert.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "mixmult/errors.hpp"
#include "mixmult/piece.hpp"

namespace mixmult {

std::size_t NumericalTable::pointCount() const {
  std::size_t n = 1;
  for (int e : extent) n *= static_cast<std::size_t>(e + 1);
  return n;
}

Multidegree NumericalTable::pointAt(std::size_t flat) const {
  Multidegree p = origin;
  for (std::size_t j = arity; j-- > 0;) {
    const auto side = static_cast<std::size_t>(extent[j] + 1);
    p[j] += static_cast<int>(flat % side);
    flat /= side;
  }
  return p;
}

std::int64_t NumericalTable::at(const Multidegree& point) const {
  std::size_t flat = 0;
  for (std::size_t j = 0; j < arity; ++j) {
    const int off = point[j] - origin[j];
    if (off < 0 || off > extent[j]) throw InvalidArgument("point outside table");
    flat = flat * static_cast<std::size_t>(extent[j] + 1) + static_cast<std::size_t>(off);
  }
  return values[flat];
}

Rational FittedPolynomial::coefficient(const Multidegree& exponent) const {
  auto it = coefficients.find(exponent);
  return it == coefficients.end() ? Rational(0) : it->second;
}

Rational FittedPolynomial::evaluate(const Multidegree& point) const {
  Rational sum = 0;
  for (const auto& [exp, c] : coefficients) {
    Rational term = c;
    for (std::size_t j = 0; j < arity; ++j)
      for (int k = 0; k < exp[j]; ++k) term *= point[j];
    sum += term;
  }
  return sum;
}

namespace {

std::vector<std::int64_t> evaluatePoints(const GridFunction& fn,
                                         const std::vector<Multidegree>& points,
                                         unsigned threads) {
  std::vector<std::int64_t> out(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = fn(points[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        out[i] = fn(points[i]);
      } catch (...) {
        std::lock_guard lock(failureMutex);
        if (!failure) failure = std::current_exception();
        next = points.size();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Coefficients (ascending powers of x) of binomial(x - origin, k).
std::vector<Rational> shiftedBinomial(int origin, int k) {
  std::vector<Rational> poly{Rational(1)};
  for (int i = 0; i < k; ++i) {
    // multiply by (x - origin - i)
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    const Rational root = origin + i;
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= root * poly[d];
    }
    poly = std::move(next);
  }
  BigInt fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  for (auto& c : poly) c /= Rational(fact);
  return poly;
}

}  // namespace

NumericalTable evalGrid(const GridFunction& fn, const Multidegree& origin,
                        const std::vector<int>& extent, unsigned threads) {
  if (extent.size() != origin.size()) throw InvalidArgument("extent/origin arity mismatch");
  for (int e : extent)
    if (e < 1) throw InvalidArgument("grid extent must be at least 1 on each axis");
  NumericalTable t;
  t.arity = origin.size();
  t.origin = origin;
  t.extent = extent;
  std::vector<Multidegree> points;
  points.reserve(t.pointCount());
  for (std::size_t i = 0; i < t.pointCount(); ++i) points.push_back(t.pointAt(i));
  t.values = evaluatePoints(fn, points, threads);
  return t;
}

FittedPolynomial fitPolynomial(const NumericalTable& table, int maxTotalDegree) {
  const std::size_t k = table.arity;
  const int D = std::max(maxTotalDegree, 0);
  for (int e : table.extent)
    if (e < D + 1)
      throw WindowTooSmall("each axis extent must be at least " + std::to_string(D + 1));

  // Copy the sub-box [origin, origin + D] and take forward differences axis by axis.
  const std::size_t side = static_cast<std::size_t>(D + 1);
  std::size_t boxSize = 1;
  for (std::size_t j = 0; j < k; ++j) boxSize *= side;
  std::vector<BigInt> diff(boxSize);
  for (std::size_t flat = 0; flat < boxSize; ++flat) {
    Multidegree p = table.origin;
    std::size_t rest = flat;
    for (std::size_t j = k; j-- > 0;) {
      p[j] += static_cast<int>(rest % side);
      rest /= side;
    }
    diff[flat] = table.at(p);
  }
  std::size_t stride = 1;
  for (std::size_t axis = k; axis-- > 0;) {
    for (std::size_t base = 0; base < boxSize; ++base) {
      if ((base / stride) % side != 0) continue;  // start of a line along `axis`
      for (int order = 1; order <= D; ++order)
        for (int i = D; i >= order; --i)
          diff[base + static_cast<std::size_t>(i) * stride] -=
              diff[base + static_cast<std::size_t>(i - 1) * stride];
    }
    stride *= side;
  }

  // Expand sum_k diff[k] * prod_j binom(n_j - o_j, k_j) in the monomial basis.
  std::vector<std::vector<std::vector<Rational>>> binom(k);
  for (std::size_t j = 0; j < k; ++j)
    for (int order = 0; order <= D; ++order)
      binom[j].push_back(shiftedBinomial(table.origin[j], order));

  FittedPolynomial fit;
  fit.arity = k;
  std::map<Multidegree, Rational> acc;
  for (std::size_t flat = 0; flat < boxSize; ++flat) {
    if (diff[flat] == 0) continue;
    std::vector<int> orders(k);
    std::size_t rest = flat;
    for (std::size_t j = k; j-- > 0;) {
      orders[j] = static_cast<int>(rest % side);
      rest /= side;
    }
    // Tensor product of the per-axis binomial polynomials.
    std::vector<std::pair<std::vector<int>, Rational>> partial{{std::vector<int>(), Rational(diff[flat])}};
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::pair<std::vector<int>, Rational>> next;
      const auto& uni = binom[j][static_cast<std::size_t>(orders[j])];
      for (const auto& [exps, c] : partial) {
        for (std::size_t d = 0; d < uni.size(); ++d) {
          if (uni[d] == 0) continue;
          auto e = exps;
          e.push_back(static_cast<int>(d));
          next.emplace_back(std::move(e), c * uni[d]);
        }
      }
      partial = std::move(next);
    }
    for (auto& [exps, c] : partial) acc[Multidegree(exps)] += c;
  }
  for (auto& [exps, c] : acc) {
    if (c == 0) continue;
    fit.totalDegree = std::max(fit.totalDegree, exps.total());
    fit.coefficients.emplace(exps, c);
  }

  for (std::size_t i = 0; i < table.pointCount(); ++i) {
    const Multidegree p = table.pointAt(i);
    if (fit.evaluate(p) != Rational(table.values[i]))
      throw FitMismatch("interpolant does not reproduce the value at " + p.toString());
  }
  fit.certificate.origin = table.origin;
  fit.certificate.extent = table.extent;
  fit.certificate.validatedPoints = table.pointCount();
  fit.certificate.attempts = 1;
  return fit;
}

FittedPolynomial detectStabilization(const GridFunction& fn, std::size_t arity,
                                     int maxTotalDegree, const StabilizationConfig& config,
                                     const Multidegree& floor) {
  if (arity == 0) throw InvalidArgument("grid arity must be positive");
  if (!floor.entries().empty() && floor.size() != arity)
    throw InvalidArgument("floor arity mismatch");
  const int D = std::max(maxTotalDegree, 0);
  const int side = D + 1;
  int attempts = 0;
  for (int n0 = std::max(config.initialOrigin, 0); n0 <= config.maxOrigin;
       n0 = n0 == 0 ? 1 : 2 * n0) {
    ++attempts;
    Multidegree origin = Multidegree::constant(arity, n0);
    if (!floor.entries().empty()) origin = componentMax(origin, floor);
    const std::vector<int> extent(arity, side);
    NumericalTable table = evalGrid(fn, origin, extent, config.threads);
    FittedPolynomial fit;
    try {
      fit = fitPolynomial(table, D);
    } catch (const FitMismatch&) {
      continue;
    }
    if (fit.totalDegree > D) continue;

    // Shell: for each axis, `validationShell` layers past the window, the
    // other coordinates ranging over the window.
    std::vector<Multidegree> shell;
    for (std::size_t axis = 0; axis < arity; ++axis) {
      for (int s = 1; s <= config.validationShell; ++s) {
        for (std::size_t i = 0; i < table.pointCount(); ++i) {
          Multidegree p = table.pointAt(i);
          if (p[axis] != origin[axis]) continue;
          p[axis] = origin[axis] + side + s;
          shell.push_back(std::move(p));
        }
      }
    }
    const auto values = evaluatePoints(fn, shell, config.threads);
    bool ok = true;
    for (std::size_t i = 0; i < shell.size() && ok; ++i)
      ok = fit.evaluate(shell[i]) == Rational(values[i]);
    if (!ok) continue;
    fit.certificate.validatedPoints = table.pointCount() + shell.size();
    fit.certificate.attempts = attempts;
    return fit;
  }
  throw NoStabilization("function did not agree with a polynomial of total degree <= " +
                        std::to_string(D) + " for any origin up to " +
                        std::to_string(config.maxOrigin));
}

std::map<Multidegree, std::int64_t> leadingCoeffs(const FittedPolynomial& poly, int r) {
  if (poly.totalDegree > r)
    throw InvalidArgument("fitted total degree " + std::to_string(poly.totalDegree) +
                          " exceeds r = " + std::to_string(r));
  std::map<Multidegree, std::int64_t> out;
  for (const Multidegree& beta : compositions(r, poly.arity)) {
    Rational c = poly.coefficient(beta);
    for (std::size_t j = 0; j < beta.size(); ++j)
      for (int i = 2; i <= beta[j]; ++i) c *= i;
    if (boost::multiprecision::denominator(c) != 1)
      throw NonIntegralLeadingCoefficient("normalized coefficient at " + beta.toString() +
                                          " is not an integer");
    if (c < 0)
      throw NegativeLeadingCoefficient("normalized coefficient at " + beta.toString() +
                                       " is negative");
    out.emplace(beta, static_cast<std::int64_t>(boost::multiprecision::numerator(c)));
  }
  return out;
}

FittedPolynomial hilbertPolynomial(PieceEngine& engine, const StabilizationConfig& config) {
  const auto& ring = engine.ring();
  if (!ring.isStandard()) throw InvalidArgument("Hilbert polynomial fit needs a standard grading");
  const std::size_t p = ring.gradingRank();
  const int bound = static_cast<int>(ring.numVars()) - static_cast<int>(p);
  return detectStabilization(
      [&](const Multidegree& n) { return static_cast<std::int64_t>(engine.dimension(n)); }, p,
      std::max(bound, 0), config);
}

int projDim(PieceEngine& engine, const StabilizationConfig& config) {
  return hilbertPolynomial(engine, config).totalDegree;
}

}  // namespace mixmult
