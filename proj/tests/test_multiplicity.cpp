#include <doctest.h>

#include "mixmult/errors.hpp"
#include "mixmult/piece.hpp"
#include "support.hpp"

using namespace testing;

namespace {

/// Dimensions supplied by formulas; lets tests reach states a presented
/// pair never produces.
class StubPair final : public GradedPair {
public:
  std::function<std::int64_t(const Multidegree&)> b;
  std::function<std::int64_t(const Multidegree&, const Multidegree&)> ab;
  bool containment = true;
  int r = 1;

  std::size_t rank() const override { return 1; }
  int projDim() override { return r; }
  std::int64_t dimB(const Multidegree& n) override { return b(n); }
  std::int64_t dimAB(const Multidegree& a, const Multidegree& w) override { return ab(a, w); }
  bool nested(const Multidegree&, const Multidegree&, const Multidegree&,
              const Multidegree&) override {
    return containment;
  }
};

}  // namespace

TEST_CASE("length functions of k[x] in k[x,y]") {
  PresentedPair pair(lineInPlane());
  // [B]_n has n+1 monomials; x^{n-t+1} [B]_{t-1} has t of them
  for (int t = 1; t <= 4; ++t)
    for (int n = t; n <= 8; ++n) CHECK(lambdaAB(pair, {t}, {n}) == n + 1 - t);
  // [B]_{v+n} / x^n [B]_v
  for (int v = 0; v <= 4; ++v)
    for (int n = 0; n <= 4; ++n) CHECK(lambdaKT(pair, {v}, {n}) == n);
  // x^n [B]_v / x^{v+n-t} [B]_t
  for (int t = 0; t <= 3; ++t)
    for (int v = t; v <= 6; ++v)
      for (int n = 0; n <= 3; ++n) CHECK(lambdaSharp(pair, {t}, {v}, {n}) == v - t);
  CHECK_THROWS_AS(lambdaAB(pair, {2}, {1}), InvalidArgument);
  CHECK_THROWS_AS(lambdaAB(pair, {0}, {1}), InvalidArgument);
  CHECK_THROWS_AS(lambdaSharp(pair, {2}, {1}, {0}), InvalidArgument);
  CHECK(pair.projDim() == 1);
}

TEST_CASE("multiplicities of k[x] in k[x,y]") {
  PresentedPair pair(lineInPlane());
  for (int t = 1; t <= 4; ++t) CHECK(relMixedMult(pair, {t}).e.at({1}) == 1);
  auto br = buchsbaumRim(pair);
  CHECK(br.br.at({1}) == 1);
  CHECK(br.mixed.at({0, 1}) == 1);
  CHECK(br.mixed.at({1, 0}) == 0);
  // lambda_sharp = v - t
  auto js = jSharp(pair, {0});
  CHECK(js.mixed.at({1, 0}) == 1);
  CHECK(js.zeroAlpha.at({1}) == 0);
  auto inf = eInfinity(pair);
  CHECK(inf.eInfinity.at({1}) == 1);
  CHECK(inf.schedule.size() == 1);
  for (int t = 1; t <= 3; ++t) CHECK(decompositionCheck(pair, {t}, {1}).holds);
  CHECK_THROWS_AS(decompositionCheck(pair, {1}, {2}), InvalidArgument);
  CHECK(suvRelativeMult(pair, 1) == 1);
  auto c = criteria(pair);
  REQUIRE(c.finite.has_value());
  CHECK_FALSE(*c.finite);
  CHECK_FALSE(*c.finiteBirational);
  CHECK(*c.segreEInfinity == 1);
}

TEST_CASE("a finite extension of degree two") {
  // B = k[x,y,z]/(z^2 - xy) is free over A = k[x,y] on 1, z:
  // dim B_n = 2n + 1, dim A_n = n + 1, and A_n B_v = B_{n+v} once v >= 1.
  std::vector<Variable> vars{{"x", Multidegree{1}}, {"y", Multidegree{1}}, {"z", Multidegree{1}}};
  auto ring = std::make_shared<MultigradedRing>(
      kDefaultPrime, 1, vars,
      std::vector<IntPolynomial>{var(3, 2).pow(2) - var(3, 0) * var(3, 1)});
  PresentedPair pair({ring, {{var(3, 0), var(3, 1)}}});
  for (int n = 1; n <= 6; ++n) CHECK(lambdaAB(pair, {1}, {n}) == n);
  CHECK(relMixedMult(pair, {1}).e.at({1}) == 1);
  CHECK(buchsbaumRim(pair).br.at({1}) == 0);
  CHECK(jSharp(pair, {0}).zeroAlpha.at({1}) == 1);
  auto c = criteria(pair);
  CHECK(*c.finite);
  CHECK_FALSE(*c.finiteBirational);

  MultiplicityConfig capped;
  capped.escalationCap = 1;
  CHECK_THROWS_AS(eInfinity(pair, capped), StabilizationMismatch);
  MultiplicityConfig slack;
  slack.degreeSlack = 1;
  auto e = relMixedMult(pair, {2}, slack);
  CHECK(e.fit.totalDegree <= e.r);
}

TEST_CASE("bigraded isomorphism example") {
  PresentedPair pair(isomorphismSpec());
  CHECK(pair.projDim() == 2);
  // [B]_n = [A]_n for n >= (1,1), so lambda vanishes
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) CHECK(lambdaAB(pair, {1, 1}, {a, b}) == 0);
  auto c = criteria(pair);
  REQUIRE(c.finite.has_value());
  REQUIRE(c.finiteBirational.has_value());
  CHECK(*c.finite);
  CHECK(*c.finiteBirational);
  for (const auto& beta : compositions(2, 2)) {
    CHECK(c.e.at(beta) == 0);
    CHECK(c.eInfinity.at(beta) == 0);
  }
}

TEST_CASE("product of lines over a point") {
  // A = k[x0, y0, y1] in B = k[x0, x1, y0, y1]:
  // lambda_(1,1)(n) = (n1+1)(n2+1) - (n2+1) = n1 n2 + n1
  std::vector<Variable> vars{{"x0", Multidegree{1, 0}},
                             {"x1", Multidegree{1, 0}},
                             {"y0", Multidegree{0, 1}},
                             {"y1", Multidegree{0, 1}}};
  auto ring = std::make_shared<MultigradedRing>(kDefaultPrime, 2, vars, std::vector<IntPolynomial>{});
  PresentedPair pair({ring, {{var(4, 0)}, {var(4, 2), var(4, 3)}}});
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) CHECK(lambdaAB(pair, {1, 1}, {a, b}) == a * b + a);
  auto e = relMixedMult(pair, {1, 1});
  CHECK(e.e.at({1, 1}) == 1);
  CHECK(e.e.at({2, 0}) == 0);
  CHECK(e.e.at({0, 2}) == 0);
}

TEST_CASE("Buchsbaum-Rim multiplicity of an ideal") {
  // H = <x, y> in k[x,y,z]: [B]_{v+n} / (x,y)^n [B]_v is spanned by
  // z^k m with k > v, |m| = v + n - k, which gives n(n+1)/2 elements.
  PieceEngine engine(polynomialRing(3));
  auto seeds = engine.makeSeeds({{var(3, 0), var(3, 1)}});
  const auto B = ModuleSpec::wholeRing();
  for (int v = 0; v <= 3; ++v)
    for (int n = 0; n <= 4; ++n) CHECK(lambdaKT(engine, B, seeds, {v}, {n}) == n * (n + 1) / 2);
  auto res = buchsbaumRim(engine, B, seeds);
  CHECK(res.r == 2);
  CHECK(res.br.at({2}) == 1);
  CHECK(moduleProjDim(engine, ModuleSpec::cyclicQuotient({var(3, 0)})) == 1);
}

TEST_CASE("j-multiplicity is additive on ideal sequences") {
  // 0 -> J -> B -> B/J -> 0 with J = (x) and J = (x^2, x*y)
  PieceEngine engine(polynomialRing(3));
  for (const auto& gens : std::vector<std::vector<IntPolynomial>>{
           {var(3, 0)}, {var(3, 0).pow(2), var(3, 0) * var(3, 1)}, {var(3, 0) * var(3, 1) * var(3, 2)}}) {
    const int r = 2;
    auto whole = jMultiplicity(engine, ModuleSpec::wholeRing(), r);
    auto sub = jMultiplicity(engine, ModuleSpec::ideal(gens), r);
    auto quo = jMultiplicity(engine, ModuleSpec::cyclicQuotient(gens), r);
    for (const auto& [beta, v] : whole) CHECK(v == sub.at(beta) + quo.at(beta));
  }
  CHECK_THROWS_AS(jMultiplicity(engine, ModuleSpec::wholeRing(), 1), InvalidArgument);
}

TEST_CASE("presented pair validation") {
  auto spec = lineInPlane();
  spec.H.push_back({var(2, 1)});
  CHECK_THROWS_AS(PresentedPair{spec}, InvalidArgument);
  auto quad = lineInPlane();
  quad.H = {{var(2, 0).pow(2)}};
  CHECK_THROWS_AS(PresentedPair{quad}, InvalidArgument);
  // x vanishes in k[x,y]/(x)
  std::vector<Variable> vars{{"x", Multidegree{1}}, {"y", Multidegree{1}}};
  auto ring = std::make_shared<MultigradedRing>(kDefaultPrime, 1, vars,
                                                std::vector<IntPolynomial>{var(2, 0)});
  CHECK_THROWS_AS(PresentedPair({ring, {{var(2, 0)}}}), InvalidArgument);
}

TEST_CASE("containment failures and undetermined verdicts") {
  StubPair stub;
  stub.b = [](const Multidegree& n) { return n[0] + 1; };
  stub.ab = [](const Multidegree& a, const Multidegree& w) {
    return a[0] + w[0] < 20 ? (a[0] + w[0]) % 3 : std::int64_t{1};
  };
  stub.containment = false;
  CHECK_THROWS_AS(lambdaSharp(stub, {0}, {1}, {1}), ContainmentViolation);
  MultiplicityConfig cfg;
  cfg.window.maxOrigin = 8;
  auto c = criteria(stub, cfg);
  CHECK_FALSE(c.finite.has_value());
  CHECK_FALSE(c.finiteBirational.has_value());
  CHECK(c.notes.size() >= 2);
}

TEST_CASE("Segre collapse") {
  MultiplicityMap m{{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}};
  CHECK(segreCollapse(m, 2) == 1 + 2 * 2 + 1);
  CHECK(segreCollapse({}, 3) == 0);
}
