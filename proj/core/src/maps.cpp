#include "mixmult/maps.hpp"

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {

void validate(const LinearSystem& sys) {
  if (sys.ambientVars.empty()) throw InvalidArgument("linear system needs ambient variables");
  if (sys.degree < 1) throw InvalidArgument("linear system degree must be >= 1");
  bool nonzero = false;
  for (const auto& f : sys.forms) {
    if (f.numVars() != sys.ambientVars.size())
      throw InvalidArgument("form has the wrong number of variables");
    for (const auto& [m, c] : f.terms())
      if (m.totalExponent() != sys.degree)
        throw InhomogeneousInput("form " + f.toString(sys.ambientVars) + " is not of degree " +
                                 std::to_string(sys.degree));
    nonzero = nonzero || !f.isZero();
  }
  if (!nonzero) throw InvalidArgument("linear system has no nonzero form");
}

}  // namespace

std::shared_ptr<const MultigradedRing> ambientRing(const LinearSystem& sys, std::uint32_t prime) {
  std::vector<Variable> vars;
  for (const auto& name : sys.ambientVars) vars.push_back({name, Multidegree{1}});
  return std::make_shared<MultigradedRing>(prime, 1, std::move(vars), std::vector<IntPolynomial>{});
}

ReesPair::ReesPair(const LinearSystem& small, const LinearSystem& big, std::uint32_t prime) {
  validate(small);
  validate(big);
  if (small.ambientVars != big.ambientVars)
    throw InvalidArgument("linear systems live on different ambient spaces");
  if (small.degree != big.degree) throw InvalidArgument("linear systems have different degrees");
  ring_ = ambientRing(big, prime);
  engine_ = std::make_shared<PieceEngine>(ring_);
  big_ = engine_->makeSeeds({big.forms});
  both_ = engine_->makeSeeds({small.forms, big.forms});
  if (both_.seeds[0].piece.dim() == 0 || big_.seeds[0].piece.dim() == 0)
    throw InvalidArgument("linear system vanishes modulo the prime");
  if (!engine_->contains(both_.seeds[1].piece, both_.seeds[0].piece))
    throw InvalidArgument("the smaller system is not contained in the larger one");
}

std::int64_t ReesPair::dimB(const Multidegree& n) {
  if (n.size() != 2 || !n.isNonNegative()) throw InvalidArgument("bidegree must be in N^2");
  return reesPiece(*engine_, big_, n[0], n[1]);
}

SubspacePiece ReesPair::piece(const Multidegree& aExp, const Multidegree& w) {
  if (aExp.size() != 2 || w.size() != 2 || !aExp.isNonNegative() || !w.isNonNegative())
    throw InvalidArgument("bidegrees must be in N^2");
  // S_1^{a1} I_1^{a2} S_{w1} I_2^{w2} = I_1^{a2} I_2^{w2} S_{a1 + w1}
  return engine_->powerPiece(both_, Multidegree{aExp[1], w[1]}, ModuleSpec::wholeRing(),
                             Multidegree{aExp[0] + w[0]});
}

std::int64_t ReesPair::dimAB(const Multidegree& a, const Multidegree& w) {
  return static_cast<std::int64_t>(piece(a, w).dim());
}

bool ReesPair::nested(const Multidegree& innerExp, const Multidegree& innerBase,
                      const Multidegree& outerExp, const Multidegree& outerBase) {
  return engine_->contains(piece(outerExp, outerBase), piece(innerExp, innerBase));
}

std::int64_t reesPiece(PieceEngine& engine, const SeedList& seeds, int a, int b) {
  if (a < 0 || b < 0) throw InvalidArgument("rees_piece needs a, b >= 0");
  return static_cast<std::int64_t>(
      engine.powerPieceDim(seeds, Multidegree{b}, ModuleSpec::wholeRing(), Multidegree{a}));
}

std::int64_t reesPiece(const LinearSystem& sys, int a, int b, std::uint32_t prime) {
  validate(sys);
  PieceEngine engine(ambientRing(sys, prime));
  return reesPiece(engine, engine.makeSeeds({sys.forms}), a, b);
}

namespace {

GraphDegrees fitGraph(PieceEngine& engine, const SeedList& seeds, int r,
                      const StabilizationConfig& window) {
  auto fit = detectStabilization(
      [&](const Multidegree& ab) { return reesPiece(engine, seeds, ab[0], ab[1]); }, 2, r, window);
  GraphDegrees g;
  g.gamma = leadingCoeffs(fit, r);
  g.certificate = fit.certificate;
  return g;
}

}  // namespace

GraphDegrees graphMultidegrees(const LinearSystem& sys, const StabilizationConfig& window,
                               std::uint32_t prime) {
  validate(sys);
  PieceEngine engine(ambientRing(sys, prime));
  const SeedList seeds = engine.makeSeeds({sys.forms});
  if (seeds.seeds[0].piece.dim() == 0)
    throw InvalidArgument("linear system vanishes modulo the prime");
  return fitGraph(engine, seeds, static_cast<int>(sys.ambientVars.size()) - 1, window);
}

std::vector<std::int64_t> projectiveDegrees(const MultiplicityMap& gamma, int r) {
  std::vector<std::int64_t> out;
  for (int i = 0; i <= r; ++i) out.push_back(gamma.at(Multidegree{r - i, i}));
  return out;
}

MultiplicityMap exceptionalMultidegrees(const MultiplicityMap& gamma, int r, int d) {
  MultiplicityMap out;
  for (int n1 = r - 1; n1 >= 0; --n1) {
    const int n2 = r - 1 - n1;
    const std::int64_t v =
        d * gamma.at(Multidegree{n1 + 1, n2}) - gamma.at(Multidegree{n1, n2 + 1});
    if (v < 0)
      throw NegativeExceptionalDegree("exceptional multidegree at (" + std::to_string(n1) + "," +
                                      std::to_string(n2) + ") is " + std::to_string(v));
    out.emplace(Multidegree{n1, n2}, v);
  }
  return out;
}

GraphDegrees analyzeSystem(PieceEngine& engine, const LinearSystem& sys,
                           const StabilizationConfig& window) {
  validate(sys);
  if (engine.ring().numVars() != sys.ambientVars.size() || engine.ring().gradingRank() != 1)
    throw InvalidArgument("engine ring does not match the linear system");
  const SeedList seeds = engine.makeSeeds({sys.forms});
  if (seeds.seeds[0].piece.dim() == 0)
    throw InvalidArgument("linear system vanishes modulo the prime");
  const int r = static_cast<int>(sys.ambientVars.size()) - 1;
  GraphDegrees g = fitGraph(engine, seeds, r, window);
  g.projDegrees = projectiveDegrees(g.gamma, r);
  g.exceptional = exceptionalMultidegrees(g.gamma, r, sys.degree);
  return g;
}

GraphDegrees analyzeSystem(const LinearSystem& sys, const StabilizationConfig& window,
                           std::uint32_t prime) {
  validate(sys);
  PieceEngine engine(ambientRing(sys, prime));
  return analyzeSystem(engine, sys, window);
}

ComparisonVerdict compareLinearSystems(const LinearSystem& small, const LinearSystem& big,
                                       const MultiplicityConfig& config, std::uint32_t prime) {
  ReesPair pair(small, big, prime);
  return compareLinearSystems(pair, small, big, config);
}

ComparisonVerdict compareLinearSystems(ReesPair& pair, const LinearSystem& small,
                                       const LinearSystem& big, const MultiplicityConfig& config) {
  ComparisonVerdict v;
  v.small = analyzeSystem(pair.engine(), small, config.window);
  v.big = analyzeSystem(pair.engine(), big, config.window);
  v.sameProjDegrees = v.small.projDegrees == v.big.projDegrees;
  v.sameExceptional = v.small.exceptional == v.big.exceptional;
  RelMixedResult e;
  try {
    e = relMixedMult(pair, Multidegree{1, 1}, config);
  } catch (const NoStabilization& ex) {
    throw CriteriaDisagreement(std::string("route (a) is undetermined: ") + ex.what());
  }
  v.e = e.e;
  v.certificate = e.fit.certificate;
  v.finiteBirational = true;
  for (const auto& [beta, x] : v.e) v.finiteBirational = v.finiteBirational && x == 0;
  if (v.finiteBirational != v.sameProjDegrees || v.finiteBirational != v.sameExceptional)
    throw CriteriaDisagreement(
        std::string("finite birational: ") + (v.finiteBirational ? "true" : "false") +
        ", equal projective degrees: " + (v.sameProjDegrees ? "true" : "false") +
        ", equal exceptional multidegrees: " + (v.sameExceptional ? "true" : "false"));
  return v;
}

}  // namespace mixmult
