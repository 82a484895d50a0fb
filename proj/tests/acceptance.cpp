// One line per acceptance criterion: "criterion N: PASS|FAIL  <summary>".
// Every value is compared exactly; the only tolerances are the runtime
// limits, pinned below.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mixmult/driver.hpp"
#include "mixmult/errors.hpp"
#include "mixmult/maps.hpp"
#include "mixmult/multiplicity.hpp"
#include "mixmult/piece.hpp"
#include "support.hpp"

using namespace testing;

namespace {

constexpr double kHilbertLimitSeconds = 1.0;
constexpr double kIsomorphismLimitSeconds = 30.0;
constexpr double kNonFiniteLimitSeconds = 5.0;
constexpr double kRandomSuiteLimitSeconds = 600.0;
constexpr double kMapsLimitSeconds = 30.0;
constexpr int kRandomSpecs = 50;
constexpr std::uint32_t kSeed = 20261018;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& summary) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << summary
            << std::endl;
  if (!pass) ++failures;
}

std::string fmt(double seconds) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::fixed << seconds << "s";
  return ss.str();
}

std::string show(const MultiplicityMap& m) {
  std::string s = "{";
  for (const auto& [b, v] : m) s += (s.size() > 1 ? " " : "") + b.toString() + ":" + std::to_string(v);
  return s + "}";
}

bool allZero(const MultiplicityMap& m) {
  for (const auto& [b, v] : m)
    if (v != 0) return false;
  return true;
}

// --------------------------------------------------------------------------

void hilbertSanity() {
  bool ok = true;
  double worst = 0;
  std::string detail;
  for (int m = 0; m <= 4; ++m) {
    const auto t0 = Clock::now();
    PieceEngine engine(polynomialRing(static_cast<std::size_t>(m) + 1));
    auto fit = hilbertPolynomial(engine, StabilizationConfig{});
    const double dt = since(t0);
    worst = std::max(worst, dt);
    bool exact = fit.totalDegree == m;
    for (int n = 0; n <= 40 && exact; ++n) exact = fit.evaluate({n}) == Rational(binom(n + m, m));
    if (!exact) detail += " m=" + std::to_string(m) + " wrong";
    if (dt >= kHilbertLimitSeconds) detail += " m=" + std::to_string(m) + " slow";
    ok = ok && exact && dt < kHilbertLimitSeconds;
  }
  report(1, ok, "Hilbert polynomial of k[x0..xm] equals binomial(n+m,m), m=0..4; slowest " +
                    fmt(worst) + " (limit " + fmt(kHilbertLimitSeconds) + ")" + detail);
}

void isomorphismExample() {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    PresentedPair pair(isomorphismSpec());
    auto c = criteria(pair);
    const double dt = since(t0);
    bool values = c.r == 2 && c.e.size() == 3 && c.eInfinity.size() == 3 && allZero(c.e) &&
                  allZero(c.eInfinity);
    for (const auto& beta : compositions(2, 2))
      values = values && c.e.count(beta) && c.eInfinity.count(beta);
    const bool verdicts = c.finite == std::optional<bool>(true) &&
                          c.finiteBirational == std::optional<bool>(true);
    ok = values && verdicts && dt < kIsomorphismLimitSeconds;
    detail = "r=" + std::to_string(c.r) + " e=" + show(c.e) + " e_inf=" + show(c.eInfinity) +
             " finite=" + (c.finite ? (*c.finite ? "true" : "false") : "undetermined") +
             " finiteBirational=" +
             (c.finiteBirational ? (*c.finiteBirational ? "true" : "false") : "undetermined") +
             "; " + fmt(dt) + " (limit " + fmt(kIsomorphismLimitSeconds) + ")";
  } catch (const std::exception& e) {
    detail = std::string("threw ") + e.what();
  }
  report(2, ok, "bigraded isomorphism example: " + detail);
}

void nonFinite() {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    PresentedPair pair(lineInPlane());
    auto c = criteria(pair);
    const double dt = since(t0);
    ok = c.eInfinity == MultiplicityMap{{{1}, 1}} && c.finite == std::optional<bool>(false) &&
         dt < kNonFiniteLimitSeconds;
    detail = "e_inf=" + show(c.eInfinity) + " finite=" +
             (c.finite ? (*c.finite ? "true" : "false") : "undetermined") + "; " + fmt(dt) +
             " (limit " + fmt(kNonFiniteLimitSeconds) + ")";
  } catch (const std::exception& e) {
    detail = std::string("threw ") + e.what();
  }
  report(3, ok, "k[x] in k[x,y]: " + detail);
}

// --------------------------------------------------------------------------

struct RandomSpec {
  ProblemSpec spec;
  std::string text;
};

/// Standard graded, at most 4 variables, monomial relations of degree 2 or
/// 3, H_i a nonempty subset of the degree-e_i variables.
RandomSpec randomSpec(std::mt19937& rng, std::size_t p) {
  const std::size_t n = 2 + rng() % 3;
  std::vector<Variable> vars;
  std::vector<std::size_t> axis(n);
  for (std::size_t i = 0; i < n; ++i) {
    axis[i] = p == 1 ? 0 : (i < p ? i : rng() % p);
    vars.push_back({"x" + std::to_string(i), Multidegree::unit(p, axis[i])});
  }
  std::vector<IntPolynomial> rels;
  const std::size_t nrel = rng() % 3;
  for (std::size_t k = 0; k < nrel; ++k) {
    const int deg = 2 + static_cast<int>(rng() % 2);
    IntPolynomial m = IntPolynomial::constant(n, 1);
    for (int d = 0; d < deg; ++d) m = m * var(n, rng() % n);
    rels.push_back(m);
  }
  std::vector<std::vector<IntPolynomial>> H(p);
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<std::size_t> pool;
    for (std::size_t j = 0; j < n; ++j)
      if (axis[j] == i) pool.push_back(j);
    for (std::size_t j : pool)
      if (rng() % 2) H[i].push_back(var(n, j));
    if (H[i].empty()) H[i].push_back(var(n, pool[rng() % pool.size()]));
  }
  auto ring = std::make_shared<MultigradedRing>(kDefaultPrime, p, vars, rels);
  std::string text = "p=" + std::to_string(p) + " vars=";
  for (const auto& v : vars) text += v.name + v.degree.toString() + " ";
  text += "rels=";
  for (const auto& r : rels) text += r.toString(ring->variableNames()) + ";";
  text += " H=";
  for (const auto& h : H) {
    text += "<";
    for (const auto& g : h) text += g.toString(ring->variableNames()) + ",";
    text += ">";
  }
  return {{ring, H}, text};
}

std::vector<Multidegree> tChain(std::size_t p) {
  if (p == 1) return {{1}, {2}, {3}};
  return {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 3}};
}

std::function<void()> shapeReport;

void randomSuiteAndShape() {
  const auto t0 = Clock::now();
  std::mt19937 rng(kSeed);
  int decompositionChecks = 0, monotoneChecks = 0, stabilizationChecks = 0;
  int fits = 0, shapeViolations = 0, nonzero = 0;
  std::vector<std::string> violations;

  for (int s = 0; s < kRandomSpecs; ++s) {
    const std::size_t p = 1 + static_cast<std::size_t>(s % 2);
    RandomSpec rs = randomSpec(rng, p);
    try {
      PresentedPair pair(rs.spec);
      const int r = pair.projDim();
      const auto chain = tChain(p);
      const auto br = buchsbaumRim(pair);
      std::vector<MultiplicityMap> e;
      for (const auto& t : chain) {
        e.push_back(relMixedMult(pair, t).e);
        const auto js = jSharp(pair, t - Multidegree::constant(p, 1));
        for (const auto& [beta, v] : e.back()) {
          ++decompositionChecks;
          if (v != 0) ++nonzero;
          if (v != br.br.at(beta) + js.zeroAlpha.at(beta))
            violations.push_back("decomposition at t=" + t.toString() + " beta=" +
                                 beta.toString() + " in " + rs.text);
        }
        // Shape: a fit allowed one degree more than r must still come out
        // within r with nonnegative integer normalized leading coefficients.
        MultiplicityConfig slack;
        slack.degreeSlack = 1;
        try {
          auto wide = relMixedMult(pair, t, slack);
          ++fits;
          if (wide.fit.totalDegree > r || wide.e != e.back()) {
            ++shapeViolations;
            violations.push_back("shape at t=" + t.toString() + " in " + rs.text);
          }
        } catch (const Error& ex) {
          ++fits;
          ++shapeViolations;
          violations.push_back("shape at t=" + t.toString() + ": " + ex.what() + " in " + rs.text);
        }
      }
      for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = 0; j < chain.size(); ++j) {
          if (i == j || !dominates(chain[j], chain[i])) continue;
          for (const auto& [beta, v] : e[j]) {
            ++monotoneChecks;
            if (v > e[i].at(beta))
              violations.push_back("e_" + chain[j].toString() + " > e_" + chain[i].toString() +
                                   " at " + beta.toString() + " in " + rs.text);
          }
        }
      const auto inf = eInfinity(pair);
      ++stabilizationChecks;
      if (inf.eInfinity != br.br) violations.push_back("e_infinity != br in " + rs.text);
    } catch (const std::exception& ex) {
      violations.push_back(std::string(ex.what()) + " in " + rs.text);
    }
  }
  const double dt = since(t0);
  const bool suiteOk = violations.empty() && dt < kRandomSuiteLimitSeconds && decompositionChecks > 0;
  std::string first = violations.empty() ? "" : "; first: " + violations.front();
  report(4, suiteOk,
         std::to_string(kRandomSpecs) + " random monomial specs: " +
             std::to_string(decompositionChecks) + " decomposition, " +
             std::to_string(monotoneChecks) + " monotonicity, " +
             std::to_string(stabilizationChecks) + " stabilization checks (" +
             std::to_string(nonzero) + " nonzero e_t values), " +
             std::to_string(violations.size()) + " violations; " + fmt(dt) + " (limit " +
             fmt(kRandomSuiteLimitSeconds) + ")" + first);
  shapeReport = [=] {
    report(8, shapeViolations == 0 && fits > 0,
         std::to_string(fits) + " fits of lambda_t with degree bound r+1: " +
             std::to_string(shapeViolations) +
             " with total degree > r or non-integral/negative normalized coefficients");
  };
}

// --------------------------------------------------------------------------

void cremonaAndVeronese() {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    auto c = analyzeSystem(cremona());
    auto v = analyzeSystem(conics());
    const double dt = since(t0);
    ok = c.projDegrees == std::vector<std::int64_t>{1, 2, 1} &&
         c.exceptional == MultiplicityMap{{{1, 0}, 0}, {{0, 1}, 3}} &&
         v.projDegrees == std::vector<std::int64_t>{1, 2, 4} && allZero(v.exceptional) &&
         dt < kMapsLimitSeconds;
    auto list = [](const std::vector<std::int64_t>& d) {
      std::string s = "(";
      for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
      return s + ")";
    };
    detail = "Cremona degrees " + list(c.projDegrees) + " E=" + show(c.exceptional) +
             "; conics degrees " + list(v.projDegrees) + " E=" + show(v.exceptional) + "; " +
             fmt(dt) + " (limit " + fmt(kMapsLimitSeconds) + ")";
  } catch (const std::exception& e) {
    detail = std::string("threw ") + e.what();
  }
  report(5, ok, detail);
}

void threeWay() {
  LinearSystem squares{planeVars(), 2, {var(3, 0).pow(2), var(3, 1).pow(2), var(3, 2).pow(2)}};
  LinearSystem pencil{planeVars(), 2, {var(3, 0) * var(3, 2), var(3, 0) * var(3, 1)}};
  struct Case {
    std::string name;
    LinearSystem small, big;
    bool expected;
  };
  const std::vector<Case> cases{
      {"Cremona in conics", cremona(), conics(), false},
      {"Cremona = Cremona", cremona(), cremona(), true},
      {"conics = conics", conics(), conics(), true},
      {"identity = identity", identitySystem(), identitySystem(), true},
      {"squares in conics", squares, conics(), true},
      {"pencil in Cremona", pencil, cremona(), false},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    try {
      auto v = compareLinearSystems(c.small, c.big);
      const bool same = v.finiteBirational == v.sameProjDegrees &&
                        v.sameProjDegrees == v.sameExceptional;
      const bool right = same && v.finiteBirational == c.expected;
      ok = ok && right;
      detail += (detail.empty() ? "" : ", ") + c.name + "=" +
                (v.finiteBirational ? "all true" : "all false") + (right ? "" : " (unexpected)");
    } catch (const std::exception& e) {
      ok = false;
      detail += (detail.empty() ? "" : ", ") + c.name + " threw " + e.what();
    }
  }
  report(6, ok, "routes (a),(b),(c) agree: " + detail);
}

void oracleCorpus() {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, documents = 0, commands = 0, checked = 0, skipped = 0;
  std::string detail;
  bool ok = true;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(MIXMULT_PROBLEMS_DIR))
    if (entry.path().extension() == ".mm") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  RunFlags flags;
  flags.oracle = true;
  flags.secondPrime = 65521;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto outcome = run(parseProblem(ss.str()), flags);
      ++documents;
      mismatches += outcome.mismatches;
      auto results = outcome.result.is_array() ? outcome.result : nlohmann::json::array({outcome.result});
      for (const auto& r : results) {
        ++commands;
        checked += r["oracle"]["checked"].get<std::size_t>();
        skipped += r["oracle"]["skipped"].get<std::size_t>();
      }
      if (outcome.mismatches) detail += " " + f.filename().string() + " has mismatches;";
    } catch (const std::exception& e) {
      ok = false;
      detail += " " + f.filename().string() + " threw " + e.what() + ";";
    }
  }
  ok = ok && mismatches == 0 && documents >= 8;
  report(7, ok,
         "--oracle --second-prime 65521 over " + std::to_string(documents) + " documents, " +
             std::to_string(commands) + " commands: " + std::to_string(mismatches) +
             " mismatches, " + std::to_string(checked) + " dimensions replayed, " +
             std::to_string(skipped) + " above the oracle size bound; " + fmt(since(t0)) + detail);
}

}  // namespace

int main() {
  hilbertSanity();
  isomorphismExample();
  nonFinite();
  randomSuiteAndShape();
  cremonaAndVeronese();
  threeWay();
  oracleCorpus();
  shapeReport();
  std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << " (" << failures
            << " failing)" << std::endl;
  return failures ? 1 : 0;
}
