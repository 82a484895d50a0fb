#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mixmult {

/// Exponent vector indexed by the ring's variables.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {}
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t index) {
    Monomial m = one(nvars);
    m.exps_.at(index) = 1;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  int totalExponent() const {
    int s = 0;
    for (int e : exps_) s += e;
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
  std::vector<int> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Strict "a comes before b" for graded reverse lexicographic order with
/// x0 > x1 > ... : larger total exponent first, then the monomial whose last
/// differing exponent is smaller.
bool grevlexGreater(const Monomial& a, const Monomial& b);

/// Polynomial with integer coefficients. Kept over Z so the same relation can
/// be reduced modulo different primes.
class IntPolynomial {
public:
  using Terms = std::map<Monomial, std::int64_t>;

  IntPolynomial() = default;
  explicit IntPolynomial(std::size_t nvars) : nvars_(nvars) {}
  static IntPolynomial constant(std::size_t nvars, std::int64_t c);
  static IntPolynomial monomial(const Monomial& m, std::int64_t c = 1);

  std::size_t numVars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  /// Adds c·m, dropping the term if it cancels. Throws on int64 overflow.
  void addTerm(const Monomial& m, std::int64_t c);

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  IntPolynomial pow(int e) const;
  IntPolynomial negated() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Infix rendering with the given variable names, e.g. "2*x^2*y - z".
  std::string toString(const std::vector<std::string>& names) const;

private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

}  // namespace mixmult
