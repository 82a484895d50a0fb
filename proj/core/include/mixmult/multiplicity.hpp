#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/hilbert.hpp"
#include "mixmult/multidegree.hpp"
#include "mixmult/piece.hpp"
#include "mixmult/ring.hpp"

namespace mixmult {

/// β -> integer, for |β| = r.
using MultiplicityMap = std::map<Multidegree, std::int64_t>;
/// (α, β) -> integer, with the key stored as the concatenation α ++ β.
using MixedMap = std::map<Multidegree, std::int64_t>;

struct MultiplicityConfig {
  StabilizationConfig window;
  /// Extra fitting degree allowed beyond r; nonzero only to test the degree
  /// bound (a certified fit of higher degree then fails leadingCoeffs).
  int degreeSlack = 0;
  /// Largest t tried (as t*(1,..,1)) when cross-checking e_∞ against br.
  int escalationCap = 8;
};

/// An inclusion A ⊆ B of standard N^p-graded algebras over a field, where A
/// is generated by H_i = [A]_{e_i}. Only dimensions are needed:
///   dimB(n)          = dim [B]_n
///   dimAB(a, w)      = dim [A]_a [B]_w = dim H^a [B]_w
class GradedPair {
public:
  virtual ~GradedPair() = default;
  virtual std::size_t rank() const = 0;
  /// r = dim MultiProj(B).
  virtual int projDim() = 0;
  virtual std::int64_t dimB(const Multidegree& n) = 0;
  virtual std::int64_t dimAB(const Multidegree& a, const Multidegree& w) = 0;
  /// H^{innerExp}[B]_{innerBase} ⊆ H^{outerExp}[B]_{outerBase} (same degree).
  virtual bool nested(const Multidegree& innerExp, const Multidegree& innerBase,
                      const Multidegree& outerExp, const Multidegree& outerBase) = 0;
};

/// B given by a presentation, A by generators of each H_i ⊆ [B]_{e_i}.
struct ProblemSpec {
  std::shared_ptr<const MultigradedRing> ring;
  std::vector<std::vector<IntPolynomial>> H;
};

/// GradedPair backed by a PieceEngine over the presented ring.
class PresentedPair final : public GradedPair {
public:
  /// Checks that the ring is standard and that H_i is a nonzero subspace of
  /// [B]_{e_i} for i = 1..p.
  PresentedPair(ProblemSpec spec, StabilizationConfig window = {});

  std::size_t rank() const override { return spec_.ring->gradingRank(); }
  int projDim() override;
  std::int64_t dimB(const Multidegree& n) override;
  std::int64_t dimAB(const Multidegree& a, const Multidegree& w) override;
  bool nested(const Multidegree& innerExp, const Multidegree& innerBase,
              const Multidegree& outerExp, const Multidegree& outerBase) override;

  PieceEngine& engine() { return *engine_; }
  const SeedList& seeds() const { return seeds_; }
  const ProblemSpec& spec() const { return spec_; }

private:
  ProblemSpec spec_;
  StabilizationConfig window_;
  std::shared_ptr<PieceEngine> engine_;
  SeedList seeds_;
  std::optional<int> r_;
};

// Length functions ----------------------------------------------------------

/// dim [B]_n / [A]_{n-t+1}[B]_{t-1}; requires t >= 1 and n >= t.
std::int64_t lambdaAB(GradedPair& pair, const Multidegree& t, const Multidegree& n);
/// dim [B]_{v+n} / H^n [B]_v with H_i = [A]_{e_i}.
std::int64_t lambdaKT(GradedPair& pair, const Multidegree& v, const Multidegree& n);
/// dim [M]_{v + sum n_i d_i} / H_1^{n_1}...H_q^{n_q}[M]_v for arbitrary seeds.
std::int64_t lambdaKT(PieceEngine& engine, const ModuleSpec& module, const SeedList& seeds,
                      const Multidegree& v, const Multidegree& n);
/// dim H^n[B]_v / H^{v+n-t}[B]_t; requires v >= t. Throws
/// ContainmentViolation if the denominator is not a subspace.
std::int64_t lambdaSharp(GradedPair& pair, const Multidegree& t, const Multidegree& v,
                         const Multidegree& n);

// Multiplicities ------------------------------------------------------------

struct RelMixedResult {
  int r = -1;
  Multidegree t;
  MultiplicityMap e;  // e_t(β; A, B), |β| = r
  FittedPolynomial fit;
};

struct BuchsbaumRimResult {
  int r = -1;
  MixedMap mixed;     // e(α, β), |α| + |β| = r
  MultiplicityMap br; // br_β = e(0, β)
  FittedPolynomial fit;
};

struct JSharpResult {
  int r = -1;
  Multidegree t;
  MixedMap mixed;       // j#_{α,β}
  MultiplicityMap zeroAlpha;  // j#_{0,β}
  FittedPolynomial fit;
};

struct EInfinityResult {
  MultiplicityMap eInfinity;
  BuchsbaumRimResult br;
  /// e_t for each t tried in the escalation, in order.
  std::vector<std::pair<Multidegree, MultiplicityMap>> schedule;
};

struct DecompositionWitness {
  std::int64_t relMixed = 0;
  std::int64_t br = 0;
  std::int64_t jSharp = 0;
  bool holds = false;
};

/// Tri-state verdict: nullopt means a required fit did not certify.
struct CriteriaVerdict {
  int r = -1;
  std::optional<bool> finite;
  std::optional<bool> finiteBirational;
  MultiplicityMap e;          // e(β) = e_{(1..1)}(β)
  MultiplicityMap eInfinity;
  std::optional<std::int64_t> segreE;          // e(S, T)
  std::optional<std::int64_t> segreEInfinity;  // e_∞(S, T)
  std::vector<FitCertificate> certificates;
  std::vector<std::string> notes;
};

RelMixedResult relMixedMult(GradedPair& pair, const Multidegree& t,
                            const MultiplicityConfig& config = {});
BuchsbaumRimResult buchsbaumRim(GradedPair& pair, const MultiplicityConfig& config = {});
/// Mixed Buchsbaum–Rim multiplicities of an arbitrary module with respect to
/// arbitrary seeds H_1..H_q (degrees d_i). r is the support dimension of M.
BuchsbaumRimResult buchsbaumRim(PieceEngine& engine, const ModuleSpec& module,
                                const SeedList& seeds, const MultiplicityConfig& config = {});
JSharpResult jSharp(GradedPair& pair, const Multidegree& t, const MultiplicityConfig& config = {});
/// br_β, cross-checked against e_t for escalating t. Throws
/// StabilizationMismatch when no t up to the cap reproduces br.
EInfinityResult eInfinity(GradedPair& pair, const MultiplicityConfig& config = {});
DecompositionWitness decompositionCheck(GradedPair& pair, const Multidegree& t,
                                        const Multidegree& beta,
                                        const MultiplicityConfig& config = {});
CriteriaVerdict criteria(GradedPair& pair, const MultiplicityConfig& config = {});
/// Single-graded e_t(A, B) = e_t(dim B - 1; A, B).
std::int64_t suvRelativeMult(GradedPair& pair, int t, const MultiplicityConfig& config = {});

/// Dimension of the support of M: degree of its Hilbert polynomial.
int moduleProjDim(PieceEngine& engine, const ModuleSpec& module,
                  const StabilizationConfig& window = {});
/// Mixed multiplicities of M itself (normalized leading coefficients of its
/// Hilbert polynomial at total degree r). Over a field this is j_β(M).
MultiplicityMap jMultiplicity(PieceEngine& engine, const ModuleSpec& module, int r,
                              const StabilizationConfig& window = {});

/// Σ_{|β|=r} r!/β! · values(β).
std::int64_t segreCollapse(const MultiplicityMap& values, int r);

}  // namespace mixmult
