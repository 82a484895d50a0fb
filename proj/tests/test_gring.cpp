#include <doctest.h>

#include <map>
#include <random>

#include "mixmult/echelon.hpp"
#include "mixmult/errors.hpp"
#include "mixmult/piece.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("multidegree arithmetic and order") {
  Multidegree a{2, 1}, b{1, 3};
  CHECK(a + b == Multidegree{3, 4});
  CHECK(a - b == Multidegree{1, -2});
  CHECK(3 * a == Multidegree{6, 3});
  CHECK(a.concat(b) == Multidegree{2, 1, 1, 3});
  CHECK(a.concat(b).slice(2, 2) == b);
  CHECK(dominates(Multidegree{2, 3}, Multidegree{2, 1}));
  CHECK_FALSE(dominates(a, b));
  CHECK(componentMax(a, b) == Multidegree{2, 3});
  CHECK(a.toString() == "(2,1)");
  CHECK(b < a);
}

TEST_CASE("compositions match stars and bars") {
  for (int total = 0; total <= 6; ++total)
    for (std::size_t len = 1; len <= 4; ++len) {
      auto c = compositions(total, len);
      CHECK(static_cast<std::int64_t>(c.size()) ==
            binom(total + static_cast<int>(len) - 1, static_cast<int>(len) - 1));
      for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] < c[i - 1]);
      for (const auto& d : c) CHECK(d.total() == total);
    }
}

TEST_CASE("prime field") {
  CHECK_THROWS_AS(PrimeField(32004), InvalidArgument);
  CHECK_THROWS_AS(PrimeField(1), InvalidArgument);
  PrimeField f(32003);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % 32002 + 1);
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.add(a, f.neg(a)) == 0);
  }
  CHECK(f.fromInteger(-1) == 32002);
  // trial division as the reference
  auto naive = [](std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint32_t n = 0; n < 2000; ++n) CHECK(isPrime(n) == naive(n));
}

TEST_CASE("integer polynomials") {
  auto x = var(2, 0), y = var(2, 1);
  auto f = (x + y).pow(3);
  CHECK(f == (x + y) * (x + y) * (x + y));
  CHECK(f.terms().size() == 4);
  CHECK((f - f).isZero());
  CHECK((x * y - y.pow(2) * IntPolynomial::constant(2, 2)).toString({"x", "y"}) ==
        "x*y - 2*y^2");
  CHECK(IntPolynomial(2).toString({"x", "y"}) == "0");
}

TEST_CASE("ring validation") {
  std::vector<Variable> vars{{"x", Multidegree{1, 0}}, {"y", Multidegree{0, 1}}};
  CHECK_THROWS_AS(MultigradedRing(32003, 2, vars, {var(2, 0) + var(2, 1)}), InhomogeneousInput);
  CHECK_THROWS_AS(MultigradedRing(32003, 1, vars, {}), InvalidArgument);
  std::vector<Variable> dup{{"x", Multidegree{1}}, {"x", Multidegree{1}}};
  CHECK_THROWS_AS(MultigradedRing(32003, 1, dup, {}), InvalidArgument);
  MultigradedRing ring(32003, 2, vars, {var(2, 0) * var(2, 1)});
  CHECK(ring.isStandard());
  CHECK(*ring.degreeOf(var(2, 0) * var(2, 1).pow(2)) == Multidegree{1, 2});
  CHECK_FALSE(ring.degreeOf(IntPolynomial(2)).has_value());
  CHECK(ring.withPrime(65521).prime() == 65521);
  CHECK(ring.withPrime(65521).id() != ring.id());
}

namespace {

/// Dense rank over GF(p) by textbook elimination.
std::size_t denseRank(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  auto power = [p](std::int64_t a, std::int64_t e) {
    std::int64_t r = 1;
    for (a %= p; e; e >>= 1, a = a * a % p)
      if (e & 1) r = r * a % p;
    return r;
  };
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = power(m[rank][c], p - 2);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      const std::int64_t f = m[r][c] * inv % p;
      for (std::size_t j = 0; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("sparse echelon agrees with dense elimination") {
  const std::uint32_t p = 101;
  PrimeField field(p);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = rng() % 12 + 1, cols = rng() % 12 + 1;
    std::vector<std::vector<std::int64_t>> dense(rows, std::vector<std::int64_t>(cols, 0));
    EchelonBuilder b(field, cols);
    for (auto& row : dense) {
      SparseRow sparse;
      for (std::size_t j = 0; j < cols; ++j)
        if (rng() % 3 == 0) {
          row[j] = rng() % p;
          if (row[j]) sparse.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(row[j])});
        }
      b.insert(sparse);
    }
    const std::size_t expected = denseRank(dense, p);
    RrefMatrix m = std::move(b).finish();
    CHECK(m.rank() == expected);
    auto pivots = m.pivotIndex();
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      REQUIRE_FALSE(m.rows[i].empty());
      CHECK(m.rows[i].front().val == 1);
      if (i) CHECK(m.rows[i - 1].front().col < m.rows[i].front().col);
      for (std::size_t k = 0; k < m.rows.size(); ++k)
        for (const auto& e : m.rows[k])
          if (k != i) CHECK(e.col != m.rows[i].front().col);
    }
  }
}

TEST_CASE("monomial enumeration") {
  auto ring = polynomialRing(4);
  for (int d = 0; d <= 6; ++d) {
    auto ms = enumMonomials(*ring, Multidegree{d});
    CHECK(static_cast<std::int64_t>(ms.size()) == binom(d + 3, 3));
    for (std::size_t i = 1; i < ms.size(); ++i) CHECK(grevlexGreater(ms[i - 1], ms[i]));
  }
  CHECK(enumMonomials(*ring, Multidegree{-1}).empty());
}

TEST_CASE("graded pieces of the bigraded example") {
  PieceEngine engine(isomorphismRing());
  // x_i y_j for i, j in {1,2,3} minus the five relations
  CHECK(engine.dimension({1, 1}) == 4);
  CHECK(engine.dimension({2, 0}) == 6);
  CHECK(engine.dimension({0, 0}) == 1);
  CHECK(engine.dimension({-1, 2}) == 0);
  // for n >= (1,1) the x3, y3 free monomials survive only: [B]_n = [A]_n
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      CHECK(static_cast<std::int64_t>(engine.dimension({a, b})) == (a + 1) * (b + 1));
  CHECK(engine.normalForm(var(6, 2) * var(6, 3)).size() == 4);
  for (auto c : engine.normalForm(var(6, 2) * var(6, 3))) CHECK(c == 0);
  CHECK_THROWS_AS(engine.normalForm(var(6, 0) + var(6, 3)), InhomogeneousInput);
}

TEST_CASE("products are commutative and associative") {
  // B = k[a,b,c]/(a*b - c^2)
  std::vector<Variable> vars{{"a", Multidegree{1}}, {"b", Multidegree{1}}, {"c", Multidegree{1}}};
  auto ring = std::make_shared<MultigradedRing>(
      32003, 1, vars, std::vector<IntPolynomial>{var(3, 0) * var(3, 1) - var(3, 2).pow(2)});
  PieceEngine engine(ring);
  std::mt19937 rng(3);
  auto randomPiece = [&](int deg) {
    auto ms = enumMonomials(*ring, Multidegree{deg});
    std::vector<IntPolynomial> gens;
    const int k = static_cast<int>(rng() % 3) + 1;
    for (int i = 0; i < k; ++i) {
      IntPolynomial f(3);
      for (const auto& m : ms)
        if (rng() % 2) f.addTerm(m, static_cast<std::int64_t>(rng() % 7) - 3);
      gens.push_back(f);
    }
    return engine.span(Multidegree{deg}, gens);
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto u = randomPiece(1 + static_cast<int>(rng() % 2));
    auto v = randomPiece(1 + static_cast<int>(rng() % 2));
    auto w = randomPiece(1);
    CHECK(engine.product(u, v) == engine.product(v, u));
    CHECK(engine.product(engine.product(u, v), w) == engine.product(u, engine.product(v, w)));
    auto uv = engine.product(u, v);
    CHECK(engine.contains(engine.fullPiece(uv.degree), uv));
    auto vu = engine.product(v, u);
    CHECK(engine.sum(uv, vu) == uv);
  }
  PieceEngine other(std::make_shared<MultigradedRing>(ring->withPrime(32003)));
  auto foreign = other.fullPiece({1});
  CHECK_THROWS_AS(engine.product(engine.fullPiece({1}), foreign), RingMismatch);
}

TEST_CASE("power pieces") {
  PieceEngine engine(polynomialRing(3));
  auto seeds = engine.makeSeeds({cremona().forms});
  const auto B = ModuleSpec::wholeRing();
  // (x1x2, x0x2, x0x1)^2 is spanned by six distinct monomials
  CHECK(engine.powerPieceDim(seeds, {2}, B, {0}) == 6);
  CHECK(engine.powerPieceDim(seeds, {0}, B, {3}) == 10);
  CHECK(engine.powerPieceDim(seeds, {1}, B, {0}) == 3);
  CHECK_THROWS_AS(engine.powerPiece(seeds, {-1}, B, {0}), NegativeExponent);
  // ideal and quotient modules
  const auto J = ModuleSpec::ideal({var(3, 0)});
  const auto Q = ModuleSpec::cyclicQuotient({var(3, 0)});
  CHECK(engine.moduleDim(J, {2}) == 3);
  CHECK(engine.moduleDim(Q, {2}) == 3);
  CHECK(engine.powerPieceDim(seeds, {1}, Q, {0}) == 1);  // only x1*x2 survives
  // determinism of the cache
  auto once = engine.powerPiece(seeds, {2}, B, {1});
  engine.clearCache();
  CHECK(engine.queryLog().empty());
  CHECK(engine.powerPiece(seeds, {2}, B, {1}) == once);
}

TEST_CASE("query log records what was computed") {
  PieceEngine engine(polynomialRing(2));
  auto seeds = engine.makeSeeds({{var(2, 0)}});
  engine.powerPieceDim(seeds, {2}, ModuleSpec::wholeRing(), {1});
  auto log = engine.queryLog();
  bool found = false;
  for (const auto& q : log)
    if (q.kind == PieceQuery::Kind::Power && q.exponents == Multidegree{2} &&
        q.base == Multidegree{1}) {
      CHECK(q.dim == 2);  // x^3, x^2 y
      CHECK(q.degree == Multidegree{3});
      found = true;
    }
  CHECK(found);
}
