#include "mixmult/multiplicity.hpp"

#include <algorithm>

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {

Multidegree ones(std::size_t p) { return Multidegree::constant(p, 1); }

void requireRank(const GradedPair& pair, const Multidegree& d, const char* what) {
  if (d.size() != pair.rank())
    throw InvalidArgument(std::string(what) + " must have length " + std::to_string(pair.rank()));
}

int fitDegree(int r, const MultiplicityConfig& config) { return std::max(r, 0) + config.degreeSlack; }

MultiplicityMap leadingOrEmpty(const FittedPolynomial& fit, int r) {
  if (r < 0) return {};
  return leadingCoeffs(fit, r);
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

PresentedPair::PresentedPair(ProblemSpec spec, StabilizationConfig window)
    : spec_(std::move(spec)), window_(window) {
  if (!spec_.ring) throw InvalidArgument("problem has no ring");
  if (!spec_.ring->isStandard())
    throw InvalidArgument("relative multiplicities need a standard grading (every variable of degree e_i)");
  const std::size_t p = spec_.ring->gradingRank();
  if (spec_.H.size() != p)
    throw InvalidArgument("expected " + std::to_string(p) + " subspaces H_1..H_p, got " +
                          std::to_string(spec_.H.size()));
  engine_ = std::make_shared<PieceEngine>(spec_.ring);
  seeds_ = engine_->makeSeeds(spec_.H);
  for (std::size_t i = 0; i < p; ++i) {
    const Seed& s = seeds_.seeds[i];
    if (s.degree != Multidegree::unit(p, i))
      throw InvalidArgument("H" + std::to_string(i + 1) + " must lie in degree " +
                            Multidegree::unit(p, i).toString());
    if (s.piece.dim() == 0)
      throw InvalidArgument("H" + std::to_string(i + 1) + " is zero in B");
  }
}

int PresentedPair::projDim() {
  if (!r_) r_ = mixmult::projDim(*engine_, window_);
  return *r_;
}

std::int64_t PresentedPair::dimB(const Multidegree& n) {
  return static_cast<std::int64_t>(engine_->dimension(n));
}

std::int64_t PresentedPair::dimAB(const Multidegree& a, const Multidegree& w) {
  return static_cast<std::int64_t>(
      engine_->powerPieceDim(seeds_, a, ModuleSpec::wholeRing(), w));
}

bool PresentedPair::nested(const Multidegree& innerExp, const Multidegree& innerBase,
                           const Multidegree& outerExp, const Multidegree& outerBase) {
  const auto B = ModuleSpec::wholeRing();
  return engine_->contains(engine_->powerPiece(seeds_, outerExp, B, outerBase),
                           engine_->powerPiece(seeds_, innerExp, B, innerBase));
}

// ---------------------------------------------------------------------------

std::int64_t lambdaAB(GradedPair& pair, const Multidegree& t, const Multidegree& n) {
  requireRank(pair, t, "t");
  requireRank(pair, n, "n");
  const auto one = ones(pair.rank());
  if (!dominates(t, one)) throw InvalidArgument("t must be >= (1,..,1)");
  if (!dominates(n, t)) throw InvalidArgument("lambda_AB is evaluated only for n >= t");
  return pair.dimB(n) - pair.dimAB(n - t + one, t - one);
}

std::int64_t lambdaKT(GradedPair& pair, const Multidegree& v, const Multidegree& n) {
  requireRank(pair, v, "v");
  requireRank(pair, n, "n");
  if (!v.isNonNegative() || !n.isNonNegative()) throw InvalidArgument("v and n must be >= 0");
  return pair.dimB(v + n) - pair.dimAB(n, v);
}

std::int64_t lambdaKT(PieceEngine& engine, const ModuleSpec& module, const SeedList& seeds,
                      const Multidegree& v, const Multidegree& n) {
  if (!v.isNonNegative() || !n.isNonNegative()) throw InvalidArgument("v and n must be >= 0");
  const Multidegree deg = v + seeds.shift(n);
  return static_cast<std::int64_t>(engine.moduleDim(module, deg)) -
         static_cast<std::int64_t>(engine.powerPieceDim(seeds, n, module, v));
}

std::int64_t lambdaSharp(GradedPair& pair, const Multidegree& t, const Multidegree& v,
                         const Multidegree& n) {
  requireRank(pair, t, "t");
  requireRank(pair, v, "v");
  requireRank(pair, n, "n");
  if (!t.isNonNegative() || !n.isNonNegative()) throw InvalidArgument("t and n must be >= 0");
  if (!dominates(v, t)) throw InvalidArgument("lambda_sharp is evaluated only for v >= t");
  const Multidegree denomExp = v + n - t;
  if (!pair.nested(denomExp, t, n, v))
    throw ContainmentViolation("H^" + denomExp.toString() + "[B]_" + t.toString() +
                               " is not contained in H^" + n.toString() + "[B]_" + v.toString());
  return pair.dimAB(n, v) - pair.dimAB(denomExp, t);
}

// ---------------------------------------------------------------------------

RelMixedResult relMixedMult(GradedPair& pair, const Multidegree& t,
                            const MultiplicityConfig& config) {
  requireRank(pair, t, "t");
  if (!dominates(t, ones(pair.rank()))) throw InvalidArgument("t must be >= (1,..,1)");
  RelMixedResult out;
  out.r = pair.projDim();
  out.t = t;
  out.fit = detectStabilization([&](const Multidegree& n) { return lambdaAB(pair, t, n); },
                                pair.rank(), fitDegree(out.r, config), config.window, t);
  out.e = leadingOrEmpty(out.fit, out.r);
  return out;
}

namespace {
BuchsbaumRimResult splitMixed(FittedPolynomial fit, int r, std::size_t p, std::size_t q) {
  BuchsbaumRimResult out;
  out.r = r;
  out.mixed = leadingOrEmpty(fit, r);
  if (r >= 0) {
    for (const Multidegree& beta : compositions(r, q)) {
      out.br[beta] = out.mixed.at(Multidegree::zero(p).concat(beta));
    }
  }
  out.fit = std::move(fit);
  return out;
}
}  // namespace

BuchsbaumRimResult buchsbaumRim(GradedPair& pair, const MultiplicityConfig& config) {
  const std::size_t p = pair.rank();
  const int r = pair.projDim();
  auto fit = detectStabilization(
      [&](const Multidegree& x) { return lambdaKT(pair, x.slice(0, p), x.slice(p, p)); }, 2 * p,
      fitDegree(r, config), config.window);
  return splitMixed(std::move(fit), r, p, p);
}

BuchsbaumRimResult buchsbaumRim(PieceEngine& engine, const ModuleSpec& module,
                                const SeedList& seeds, const MultiplicityConfig& config) {
  const std::size_t p = engine.ring().gradingRank();
  const std::size_t q = seeds.size();
  if (q == 0) throw InvalidArgument("need at least one seed");
  for (const auto& s : seeds.seeds)
    if (s.piece.dim() == 0) throw InvalidArgument("every H_i must be nonzero");
  const int r = moduleProjDim(engine, module, config.window);
  auto fit = detectStabilization(
      [&](const Multidegree& x) {
        return lambdaKT(engine, module, seeds, x.slice(0, p), x.slice(p, q));
      },
      p + q, fitDegree(r, config), config.window);
  return splitMixed(std::move(fit), r, p, q);
}

JSharpResult jSharp(GradedPair& pair, const Multidegree& t, const MultiplicityConfig& config) {
  requireRank(pair, t, "t");
  if (!t.isNonNegative()) throw InvalidArgument("t must be >= 0");
  const std::size_t p = pair.rank();
  JSharpResult out;
  out.r = pair.projDim();
  out.t = t;
  out.fit = detectStabilization(
      [&](const Multidegree& x) { return lambdaSharp(pair, t, x.slice(0, p), x.slice(p, p)); },
      2 * p, fitDegree(out.r, config), config.window, t.concat(Multidegree::zero(p)));
  out.mixed = leadingOrEmpty(out.fit, out.r);
  if (out.r >= 0)
    for (const Multidegree& beta : compositions(out.r, p))
      out.zeroAlpha[beta] = out.mixed.at(Multidegree::zero(p).concat(beta));
  return out;
}

EInfinityResult eInfinity(GradedPair& pair, const MultiplicityConfig& config) {
  EInfinityResult out;
  out.br = buchsbaumRim(pair, config);
  out.eInfinity = out.br.br;
  const std::size_t p = pair.rank();
  // e_t is nonincreasing in t and bounded below by br (e_t = br + j#), so
  // the first t reproducing br certifies the limit.
  for (int c = 1; c <= config.escalationCap; c *= 2) {
    RelMixedResult e = relMixedMult(pair, Multidegree::constant(p, c), config);
    out.schedule.emplace_back(e.t, e.e);
    if (e.e == out.br.br) return out;
  }
  std::string msg = "e_t did not reach br for t up to " + std::to_string(config.escalationCap);
  throw StabilizationMismatch(msg);
}

DecompositionWitness decompositionCheck(GradedPair& pair, const Multidegree& t,
                                        const Multidegree& beta,
                                        const MultiplicityConfig& config) {
  requireRank(pair, beta, "beta");
  const int r = pair.projDim();
  if (beta.total() != r || !beta.isNonNegative())
    throw InvalidArgument("beta must be a nonnegative vector with |beta| = r = " +
                          std::to_string(r));
  DecompositionWitness w;
  w.relMixed = relMixedMult(pair, t, config).e.at(beta);
  w.br = buchsbaumRim(pair, config).br.at(beta);
  w.jSharp = jSharp(pair, t - ones(pair.rank()), config).zeroAlpha.at(beta);
  w.holds = w.relMixed == w.br + w.jSharp;
  return w;
}

std::int64_t segreCollapse(const MultiplicityMap& values, int r) {
  std::int64_t total = 0;
  for (const auto& [beta, v] : values) {
    if (beta.total() != r) continue;
    std::int64_t coef = factorial(r);
    for (std::size_t i = 0; i < beta.size(); ++i) coef /= factorial(beta[i]);
    total += coef * v;
  }
  return total;
}

CriteriaVerdict criteria(GradedPair& pair, const MultiplicityConfig& config) {
  CriteriaVerdict v;
  v.notes.push_back(
      "converse directions assume B equidimensional and catenary; quotients of polynomial rings "
      "over a field are universally catenary, equidimensionality is taken as given");
  try {
    v.r = pair.projDim();
  } catch (const NoStabilization& ex) {
    v.notes.push_back(std::string("r undetermined: ") + ex.what());
    return v;
  }
  const auto allZero = [](const MultiplicityMap& m) {
    return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second == 0; });
  };
  try {
    RelMixedResult e = relMixedMult(pair, ones(pair.rank()), config);
    v.e = e.e;
    v.finiteBirational = allZero(v.e);
    v.segreE = segreCollapse(v.e, v.r);
    v.certificates.push_back(e.fit.certificate);
  } catch (const NoStabilization& ex) {
    v.notes.push_back(std::string("e(beta) undetermined: ") + ex.what());
  }
  try {
    EInfinityResult inf = eInfinity(pair, config);
    v.eInfinity = inf.eInfinity;
    v.finite = allZero(v.eInfinity);
    v.segreEInfinity = segreCollapse(v.eInfinity, v.r);
    v.certificates.push_back(inf.br.fit.certificate);
  } catch (const NoStabilization& ex) {
    v.notes.push_back(std::string("e_infinity(beta) undetermined: ") + ex.what());
  }
  return v;
}

std::int64_t suvRelativeMult(GradedPair& pair, int t, const MultiplicityConfig& config) {
  if (pair.rank() != 1) throw InvalidArgument("the single-graded convention needs p = 1");
  // Over a field the B_+-torsion of B has finite length, so dim B - 1 equals
  // r unless B is Artinian, in which case both sides are -1.
  RelMixedResult e = relMixedMult(pair, Multidegree{t}, config);
  if (e.r < 0) return 0;
  return e.e.at(Multidegree{e.r});
}

int moduleProjDim(PieceEngine& engine, const ModuleSpec& module,
                  const StabilizationConfig& window) {
  const auto& ring = engine.ring();
  const std::size_t p = ring.gradingRank();
  const int bound = std::max(0, static_cast<int>(ring.numVars()) - static_cast<int>(p));
  auto fit = detectStabilization(
      [&](const Multidegree& d) { return static_cast<std::int64_t>(engine.moduleDim(module, d)); },
      p, bound, window);
  return fit.totalDegree;
}

MultiplicityMap jMultiplicity(PieceEngine& engine, const ModuleSpec& module, int r,
                              const StabilizationConfig& window) {
  const auto& ring = engine.ring();
  const std::size_t p = ring.gradingRank();
  const int bound = std::max(0, static_cast<int>(ring.numVars()) - static_cast<int>(p));
  auto fit = detectStabilization(
      [&](const Multidegree& d) { return static_cast<std::int64_t>(engine.moduleDim(module, d)); },
      p, bound, window);
  if (fit.totalDegree > r)
    throw InvalidArgument("module support has dimension " + std::to_string(fit.totalDegree) +
                          " > r = " + std::to_string(r));
  return leadingOrEmpty(fit, r);
}

}  // namespace mixmult
