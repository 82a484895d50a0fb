#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/field.hpp"
#include "mixmult/multidegree.hpp"
#include "mixmult/polynomial.hpp"

namespace mixmult {

struct Variable {
  std::string name;
  Multidegree degree;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// k[variables]/(relations) over k = GF(prime), graded by N^p through the
/// per-variable multidegrees. Immutable once constructed; safe to share.
class MultigradedRing {
public:
  /// Validates every invariant: variable degrees have length `gradingRank`,
  /// are nonnegative with |deg| >= 1, names are distinct, and every relation
  /// is multihomogeneous (InhomogeneousInput otherwise).
  MultigradedRing(std::uint32_t prime, std::size_t gradingRank, std::vector<Variable> variables,
                  std::vector<IntPolynomial> relations);

  const PrimeField& field() const { return field_; }
  std::uint32_t prime() const { return field_.characteristic(); }
  std::size_t gradingRank() const { return rank_; }
  std::size_t numVars() const { return vars_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  std::vector<std::string> variableNames() const;
  const std::vector<IntPolynomial>& relations() const { return relations_; }
  /// Degree of relations()[i].
  const Multidegree& relationDegree(std::size_t i) const { return relationDegrees_.at(i); }

  /// Every variable degree is a unit vector e_i.
  bool isStandard() const;

  Multidegree degreeOf(const Monomial& m) const;
  /// Degree of a nonzero multihomogeneous polynomial; nullopt for zero.
  /// Throws InhomogeneousInput when terms have different degrees.
  std::optional<Multidegree> degreeOf(const IntPolynomial& f) const;

  /// Same ring over a different prime.
  MultigradedRing withPrime(std::uint32_t prime) const;

  /// Distinct for every constructed ring; used to reject mixing pieces.
  std::uint64_t id() const { return id_; }

private:
  PrimeField field_;
  std::size_t rank_;
  std::vector<Variable> vars_;
  std::vector<IntPolynomial> relations_;
  std::vector<Multidegree> relationDegrees_;
  std::uint64_t id_;
};

}  // namespace mixmult
