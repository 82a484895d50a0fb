#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace mixmult {

/// A vector of integers indexed by the grading rank. Ordering via <=> is
/// lexicographic (for use as a map key); the partial order used by the
/// mathematics is `dominates`.
class Multidegree {
public:
  Multidegree() = default;
  explicit Multidegree(std::vector<int> entries) : entries_(std::move(entries)) {}
  Multidegree(std::initializer_list<int> entries) : entries_(entries) {}

  static Multidegree zero(std::size_t rank) { return Multidegree(std::vector<int>(rank, 0)); }
  static Multidegree constant(std::size_t rank, int value) {
    return Multidegree(std::vector<int>(rank, value));
  }
  static Multidegree unit(std::size_t rank, std::size_t axis) {
    Multidegree d = zero(rank);
    d.entries_.at(axis) = 1;
    return d;
  }

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  /// |n| = sum of entries.
  int total() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }
  bool isNonNegative() const {
    for (int e : entries_)
      if (e < 0) return false;
    return true;
  }
  bool isZero() const {
    for (int e : entries_)
      if (e != 0) return false;
    return true;
  }

  Multidegree& operator+=(const Multidegree& o);
  Multidegree& operator-=(const Multidegree& o);
  friend Multidegree operator+(Multidegree a, const Multidegree& b) { return a += b; }
  friend Multidegree operator-(Multidegree a, const Multidegree& b) { return a -= b; }
  friend Multidegree operator*(int k, Multidegree a) {
    for (int& e : a.entries_) e *= k;
    return a;
  }

  /// Concatenation (v, n) used when a function takes two multidegree blocks.
  Multidegree concat(const Multidegree& o) const;
  /// Sub-block [first, first+count).
  Multidegree slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const Multidegree&, const Multidegree&) = default;
  friend auto operator<=>(const Multidegree&, const Multidegree&) = default;

  /// "(a,b,...)".
  std::string toString() const;

private:
  std::vector<int> entries_;
};

/// Componentwise a >= b. Sizes must agree.
bool dominates(const Multidegree& a, const Multidegree& b);
/// Componentwise maximum.
Multidegree componentMax(const Multidegree& a, const Multidegree& b);

/// All vectors of the given length with nonnegative entries summing to total,
/// in lexicographically decreasing order ((total,0,..) first).
std::vector<Multidegree> compositions(int total, std::size_t length);

struct MultidegreeHash {
  std::size_t operator()(const Multidegree& d) const noexcept;
};

}  // namespace mixmult
