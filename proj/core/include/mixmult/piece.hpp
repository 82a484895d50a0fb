#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixmult/echelon.hpp"
#include "mixmult/multidegree.hpp"
#include "mixmult/polynomial.hpp"
#include "mixmult/ring.hpp"

namespace mixmult {

/// Monomials of the given multidegree, in graded reverse lexicographic order
/// (largest first). Empty when deg has a negative entry.
std::vector<Monomial> enumMonomials(const MultigradedRing& ring, const Multidegree& deg);

/// A subspace of one graded piece. Rows are coordinates with respect to
/// `basis`, in reduced row-echelon form.
struct SubspacePiece {
  std::uint64_t ringId = 0;
  std::uint32_t prime = 0;
  Multidegree degree;
  std::shared_ptr<const std::vector<Monomial>> basis;
  RrefMatrix matrix;

  std::size_t dim() const { return matrix.rank(); }
  std::size_t ambientDim() const { return basis ? basis->size() : 0; }

  friend bool operator==(const SubspacePiece& a, const SubspacePiece& b) {
    return a.ringId == b.ringId && a.prime == b.prime && a.degree == b.degree &&
           a.matrix == b.matrix;
  }
};

/// The B-modules M for which H^n[M]_v is computed.
struct ModuleSpec {
  enum class Kind { WholeRing, Ideal, CyclicQuotient };
  Kind kind = Kind::WholeRing;
  std::vector<IntPolynomial> generators;

  static ModuleSpec wholeRing() { return {}; }
  static ModuleSpec ideal(std::vector<IntPolynomial> gens) {
    return {Kind::Ideal, std::move(gens)};
  }
  static ModuleSpec cyclicQuotient(std::vector<IntPolynomial> gens) {
    return {Kind::CyclicQuotient, std::move(gens)};
  }
  /// Canonical text identifying the module; used as a cache key.
  std::string key() const;
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

/// One H_i: the span of some multihomogeneous generators of common degree.
struct Seed {
  Multidegree degree;
  std::vector<IntPolynomial> generators;
  SubspacePiece piece;
};

/// An ordered list H_1..H_q registered with an engine.
struct SeedList {
  int id = -1;
  std::vector<Seed> seeds;
  std::size_t size() const { return seeds.size(); }
  /// Sum of n_i * deg(H_i).
  Multidegree shift(const Multidegree& exponents) const;
};

/// One dimension the engine produced, in a form that can be recomputed
/// independently.
struct PieceQuery {
  enum class Kind { Full, Module, Power };
  Kind kind = Kind::Full;
  int seedList = -1;        // Power only
  int module = -1;          // Module and Power: index into moduleRegistry()
  Multidegree exponents;    // Power only
  Multidegree base;         // Power only: v
  Multidegree degree;       // degree of the ambient piece
  std::size_t dim = 0;      // dimension in M (Full: in B)
};

/// Degreewise linear algebra for one ring over its prime. Caches graded
/// pieces, multiplication tables and power pieces; safe for concurrent use.
class PieceEngine {
public:
  explicit PieceEngine(std::shared_ptr<const MultigradedRing> ring);

  const MultigradedRing& ring() const { return *ring_; }
  std::shared_ptr<const MultigradedRing> ringPtr() const { return ring_; }
  const PrimeField& field() const { return ring_->field(); }

  /// Span of relation multiples in [S]_deg, over the full monomial basis.
  SubspacePiece idealPiece(const Multidegree& deg);
  /// Standard monomials (non-pivots of the ideal piece), in grevlex order.
  std::vector<Monomial> quotientBasis(const Multidegree& deg);
  /// dim [B]_deg.
  std::size_t dimension(const Multidegree& deg);
  /// Coordinates of the class of f over quotientBasis(deg(f)); the zero
  /// polynomial maps to an empty vector. Throws InhomogeneousInput.
  std::vector<std::uint32_t> normalForm(const IntPolynomial& f);

  /// The whole piece [B]_deg.
  SubspacePiece fullPiece(const Multidegree& deg);
  /// Span of the classes of the given elements, all of degree deg.
  SubspacePiece span(const Multidegree& deg, const std::vector<IntPolynomial>& elements);
  /// U·V inside [B]_{deg U + deg V}. Throws RingMismatch.
  SubspacePiece product(const SubspacePiece& u, const SubspacePiece& v);
  /// U + V (same degree).
  SubspacePiece sum(const SubspacePiece& u, const SubspacePiece& v);
  /// Whether inner ⊆ outer.
  bool contains(const SubspacePiece& outer, const SubspacePiece& inner);

  /// Registers H_1..H_q given by generators (each list nonempty and
  /// multihomogeneous of one degree).
  SeedList makeSeeds(const std::vector<std::vector<IntPolynomial>>& generators);

  /// H_1^{n_1}...H_q^{n_q}[M]_v inside [B]_{v + sum n_i deg H_i}. For
  /// cyclic quotients M = B/J the returned subspace is the preimage in B
  /// (it contains [J]_deg). Memoized per (seeds, n, M, v).
  SubspacePiece powerPiece(const SeedList& seeds, const Multidegree& exponents,
                           const ModuleSpec& module, const Multidegree& v);
  /// dim of H^n[M]_v as a subspace of [M]_deg.
  std::size_t powerPieceDim(const SeedList& seeds, const Multidegree& exponents,
                            const ModuleSpec& module, const Multidegree& v);
  /// dim [M]_deg.
  std::size_t moduleDim(const ModuleSpec& module, const Multidegree& deg);

  /// Every dimension computed so far (one record per cache miss).
  std::vector<PieceQuery> queryLog() const;
  const SeedList& seedList(int id) const;
  ModuleSpec moduleSpec(int id) const;

  /// Drops all cached pieces and the query log.
  void clearCache();

  /// Test hook: removes the last row of the cached power piece with the given
  /// key (computing it first) and rewrites its log record. Returns false when
  /// the piece is zero.
  bool corruptPowerPieceForTesting(const SeedList& seeds, const Multidegree& exponents,
                                   const ModuleSpec& module, const Multidegree& v);

private:
  struct DegreeData;
  struct PowerKey {
    int seeds;
    int module;
    Multidegree exponents;
    Multidegree v;
    friend bool operator==(const PowerKey&, const PowerKey&) = default;
  };
  struct PowerKeyHash {
    std::size_t operator()(const PowerKey& k) const noexcept;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<Multidegree, Multidegree>& k) const noexcept;
  };

  std::shared_ptr<const DegreeData> degreeData(const Multidegree& deg);
  std::shared_ptr<const DegreeData> buildDegreeData(const Multidegree& deg) const;
  std::shared_ptr<const std::vector<std::uint32_t>> productTable(const DegreeData& a,
                                                                 const DegreeData& b);
  SparseRow liftAndReduce(const DegreeData& target, std::vector<SparseEntry> monomialRow) const;
  SparseRow polynomialRow(const DegreeData& target, const IntPolynomial& f) const;
  int registerModule(const ModuleSpec& module);
  SubspacePiece moduleBase(const ModuleSpec& module, const Multidegree& v);
  SubspacePiece quotientRelations(const ModuleSpec& module, const Multidegree& deg);
  SubspacePiece makePiece(const DegreeData& d, RrefMatrix m) const;
  void record(PieceQuery q);

  std::shared_ptr<const MultigradedRing> ring_;

  mutable std::shared_mutex degreeMutex_;
  std::unordered_map<Multidegree, std::shared_ptr<const DegreeData>, MultidegreeHash> degrees_;

  mutable std::shared_mutex tableMutex_;
  std::unordered_map<std::pair<Multidegree, Multidegree>,
                     std::shared_ptr<const std::vector<std::uint32_t>>, PairHash>
      tables_;

  mutable std::shared_mutex powerMutex_;
  std::unordered_map<PowerKey, SubspacePiece, PowerKeyHash> powers_;

  mutable std::mutex registryMutex_;
  std::vector<std::unique_ptr<SeedList>> seedLists_;
  std::vector<ModuleSpec> modules_;
  std::unordered_map<std::string, int> moduleIds_;

  mutable std::mutex logMutex_;
  std::vector<PieceQuery> log_;
};

}  // namespace mixmult
