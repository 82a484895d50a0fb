#include "mixmult/field.hpp"

#include "mixmult/errors.hpp"

namespace mixmult {

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !isPrime(p))
    throw InvalidArgument("field characteristic must be a prime below 2^31, got " +
                          std::to_string(p));
}

PrimeField::Element PrimeField::inv(Element a) const noexcept {
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Element>(result);
}

}  // namespace mixmult
