#include <benchmark/benchmark.h>

#include "mixmult/hilbert.hpp"
#include "mixmult/piece.hpp"
#include "mixmult/ring.hpp"

using namespace mixmult;

namespace {

IntPolynomial var(std::size_t n, std::size_t i) {
  return IntPolynomial::monomial(Monomial::variable(n, i));
}

// k[x1..x3, y1..y3] / (x3*y_j, y3*x_j).
std::shared_ptr<const MultigradedRing> bigraded() {
  std::vector<Variable> vars;
  for (int i = 1; i <= 3; ++i) vars.push_back({"x" + std::to_string(i), Multidegree{1, 0}});
  for (int i = 1; i <= 3; ++i) vars.push_back({"y" + std::to_string(i), Multidegree{0, 1}});
  std::vector<IntPolynomial> rel;
  for (std::size_t j = 3; j < 6; ++j) rel.push_back(var(6, 2) * var(6, j));
  for (std::size_t j = 0; j < 3; ++j) rel.push_back(var(6, 5) * var(6, j));
  return std::make_shared<MultigradedRing>(kDefaultPrime, 2, std::move(vars), std::move(rel));
}

void BM_IdealPiece(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto ring = bigraded();
  for (auto _ : state) {
    PieceEngine engine(ring);
    benchmark::DoNotOptimize(engine.idealPiece({d, d}));
  }
}
BENCHMARK(BM_IdealPiece)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

// Cold power pieces H1^a H2^a [B]_(1,1); a fresh engine each time so the
// memo does not hide the work.
void BM_PowerPiece(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  auto ring = bigraded();
  for (auto _ : state) {
    PieceEngine engine(ring);
    auto seeds = engine.makeSeeds({{var(6, 0), var(6, 1)}, {var(6, 3), var(6, 4)}});
    benchmark::DoNotOptimize(
        engine.powerPieceDim(seeds, {a, a}, ModuleSpec::wholeRing(), {1, 1}));
  }
}
BENCHMARK(BM_PowerPiece)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  GridFunction fn = [](const Multidegree& n) {
    std::int64_t v = 1;
    for (std::size_t i = 0; i < n.size(); ++i) v *= (n[i] + 1) * (n[i] + 2) / 2;
    return v;
  };
  auto table = evalGrid(fn, Multidegree{1, 1, 1}, {D + 1, D + 1, D + 1});
  for (auto _ : state) benchmark::DoNotOptimize(fitPolynomial(table, D));
}
BENCHMARK(BM_Fit)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_HilbertPolynomial(benchmark::State& state) {
  std::vector<Variable> vars;
  for (int i = 0; i < state.range(0); ++i) vars.push_back({"x" + std::to_string(i), Multidegree{1}});
  auto ring = std::make_shared<MultigradedRing>(kDefaultPrime, 1, vars, std::vector<IntPolynomial>{});
  for (auto _ : state) {
    PieceEngine engine(ring);
    benchmark::DoNotOptimize(hilbertPolynomial(engine, StabilizationConfig{}));
  }
}
BENCHMARK(BM_HilbertPolynomial)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
