#include "mixmult/ring.hpp"

#include <atomic>
#include <set>

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {
std::uint64_t nextRingId() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace

MultigradedRing::MultigradedRing(std::uint32_t prime, std::size_t gradingRank,
                                 std::vector<Variable> variables,
                                 std::vector<IntPolynomial> relations)
    : field_(prime), rank_(gradingRank), vars_(std::move(variables)), id_(nextRingId()) {
  if (rank_ == 0) throw InvalidArgument("grading rank must be at least 1");
  std::set<std::string> names;
  for (const auto& v : vars_) {
    if (v.degree.size() != rank_)
      throw InvalidArgument("variable " + v.name + " has degree of wrong length");
    if (!v.degree.isNonNegative() || v.degree.total() < 1)
      throw InvalidArgument("variable " + v.name + " needs a nonnegative degree with |deg| >= 1");
    if (!names.insert(v.name).second) throw InvalidArgument("duplicate variable " + v.name);
  }
  for (auto& f : relations) {
    if (f.numVars() != vars_.size()) throw InvalidArgument("relation arity mismatch");
    auto deg = degreeOf(f);
    if (!deg) continue;  // the zero relation contributes nothing
    relations_.push_back(std::move(f));
    relationDegrees_.push_back(*deg);
  }
}

std::vector<std::string> MultigradedRing::variableNames() const {
  std::vector<std::string> out;
  out.reserve(vars_.size());
  for (const auto& v : vars_) out.push_back(v.name);
  return out;
}

bool MultigradedRing::isStandard() const {
  for (const auto& v : vars_)
    if (v.degree.total() != 1) return false;
  return true;
}

Multidegree MultigradedRing::degreeOf(const Monomial& m) const {
  if (m.size() != vars_.size()) throw InvalidArgument("monomial arity mismatch");
  Multidegree d = Multidegree::zero(rank_);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    d += m[i] * vars_[i].degree;
  }
  return d;
}

std::optional<Multidegree> MultigradedRing::degreeOf(const IntPolynomial& f) const {
  std::optional<Multidegree> deg;
  for (const auto& [m, c] : f.terms()) {
    Multidegree d = degreeOf(m);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      throw InhomogeneousInput("polynomial " + f.toString(variableNames()) +
                               " mixes degrees " + deg->toString() + " and " + d.toString());
    }
  }
  return deg;
}

MultigradedRing MultigradedRing::withPrime(std::uint32_t prime) const {
  return MultigradedRing(prime, rank_, vars_, relations_);
}

}  // namespace mixmult
