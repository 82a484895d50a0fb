#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/multiplicity.hpp"

namespace mixmult {

/// A linear system of degree-d forms on P^r, with r + 1 = ambientVars.size().
struct LinearSystem {
  std::vector<std::string> ambientVars;
  int degree = 1;
  std::vector<IntPolynomial> forms;
};

struct GraphDegrees {
  MultiplicityMap gamma;              // (n1, n2), n1 + n2 = r
  std::vector<std::int64_t> projDegrees;  // d_0..d_r
  MultiplicityMap exceptional;        // (n1, n2), n1 + n2 = r - 1
  FitCertificate certificate;
};

/// Polynomial ring k[ambientVars] graded by total degree.
std::shared_ptr<const MultigradedRing> ambientRing(const LinearSystem& sys,
                                                    std::uint32_t prime = kDefaultPrime);

/// Bigraded coordinate ring of the graph of the map defined by a system,
/// [B]_{(a,b)} = [I^b]_{a+bd}, viewed over the subalgebra A generated by all
/// linear forms in degree (1,0) and by a subsystem in degree (0,1).
class ReesPair final : public GradedPair {
public:
  /// `small` spans A_{(0,1)}; it must lie in the span of `big`. Pass the same
  /// system twice for A = B.
  ReesPair(const LinearSystem& small, const LinearSystem& big,
           std::uint32_t prime = kDefaultPrime);

  std::size_t rank() const override { return 2; }
  int projDim() override { return static_cast<int>(ring_->numVars()) - 1; }
  std::int64_t dimB(const Multidegree& n) override;
  std::int64_t dimAB(const Multidegree& a, const Multidegree& w) override;
  bool nested(const Multidegree& innerExp, const Multidegree& innerBase,
              const Multidegree& outerExp, const Multidegree& outerBase) override;

  PieceEngine& engine() { return *engine_; }

private:
  SubspacePiece piece(const Multidegree& aExp, const Multidegree& w);

  std::shared_ptr<const MultigradedRing> ring_;
  std::shared_ptr<PieceEngine> engine_;
  SeedList big_;   // [I_2]
  SeedList both_;  // [I_1, I_2]
};

/// dim of the span of m·f_{j1}···f_{jb} in degree a + b·d.
std::int64_t reesPiece(const LinearSystem& sys, int a, int b,
                       std::uint32_t prime = kDefaultPrime);
std::int64_t reesPiece(PieceEngine& engine, const SeedList& seeds, int a, int b);

/// Multidegrees of the graph; gamma only.
GraphDegrees graphMultidegrees(const LinearSystem& sys, const StabilizationConfig& window = {},
                               std::uint32_t prime = kDefaultPrime);
/// d_i = gamma[(r - i, i)].
std::vector<std::int64_t> projectiveDegrees(const MultiplicityMap& gamma, int r);
/// d·gamma(n1 + 1, n2) - gamma(n1, n2 + 1) for n1 + n2 = r - 1. Throws
/// NegativeExceptionalDegree.
MultiplicityMap exceptionalMultidegrees(const MultiplicityMap& gamma, int r, int d);
/// gamma, projective degrees and exceptional multidegrees together.
GraphDegrees analyzeSystem(const LinearSystem& sys, const StabilizationConfig& window = {},
                           std::uint32_t prime = kDefaultPrime);

struct ComparisonVerdict {
  bool finiteBirational = false;   // (a)
  bool sameProjDegrees = false;    // (b)
  bool sameExceptional = false;    // (c)
  GraphDegrees small;
  GraphDegrees big;
  MultiplicityMap e;  // e(β; A, B) of the bigraded pair
  FitCertificate certificate;
};

/// Same, computing every piece in `engine`, whose ring must be
/// ambientRing(sys) (possibly over another prime).
GraphDegrees analyzeSystem(PieceEngine& engine, const LinearSystem& sys,
                           const StabilizationConfig& window = {});

/// Compares small ⊆ big three ways. Throws CriteriaDisagreement when the
/// answers differ and InvalidArgument when small is not contained in big.
ComparisonVerdict compareLinearSystems(const LinearSystem& small, const LinearSystem& big,
                                       const MultiplicityConfig& config = {},
                                       std::uint32_t prime = kDefaultPrime);
/// Same, on a pair built from (small, big); every piece goes through
/// pair.engine().
ComparisonVerdict compareLinearSystems(ReesPair& pair, const LinearSystem& small,
                                       const LinearSystem& big,
                                       const MultiplicityConfig& config = {});

}  // namespace mixmult
