#pragma once

#include <cstdint>

namespace mixmult {

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Arithmetic in GF(p) for a prime p < 2^31. Elements are canonical
/// representatives in [0, p).
class PrimeField {
public:
  using Element = std::uint32_t;

  /// Throws InvalidArgument unless p is a prime in [2, 2^31).
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t characteristic() const noexcept { return p_; }

  Element fromInteger(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element add(Element a, Element b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  /// a^{-1}; a must be nonzero.
  Element inv(Element a) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

bool isPrime(std::uint64_t n);

}  // namespace mixmult
