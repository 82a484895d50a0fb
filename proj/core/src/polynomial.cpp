#include "mixmult/polynomial.hpp"

#include <algorithm>

#include "mixmult/errors.hpp"

namespace mixmult {

namespace {
std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvalidArgument("integer coefficient overflow");
  return r;
}
std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidArgument("integer coefficient overflow");
  return r;
}
}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw InvalidArgument("monomial arity mismatch");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
  return Monomial(std::move(e));
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int e : m.exponents()) {
    h ^= static_cast<std::size_t>(e);
    h *= 1099511628211ULL;
  }
  return h;
}

bool grevlexGreater(const Monomial& a, const Monomial& b) {
  const int ta = a.totalExponent(), tb = b.totalExponent();
  if (ta != tb) return ta > tb;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

IntPolynomial IntPolynomial::constant(std::size_t nvars, std::int64_t c) {
  IntPolynomial p(nvars);
  p.addTerm(Monomial::one(nvars), c);
  return p;
}

IntPolynomial IntPolynomial::monomial(const Monomial& m, std::int64_t c) {
  IntPolynomial p(m.size());
  p.addTerm(m, c);
  return p;
}

void IntPolynomial::addTerm(const Monomial& m, std::int64_t c) {
  if (m.size() != nvars_) throw InvalidArgument("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = checkedAdd(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.nvars_ != nvars_) throw InvalidArgument("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.nvars_ != nvars_) throw InvalidArgument("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) addTerm(m, checkedMul(c, -1));
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.nvars_ != b.nvars_) throw InvalidArgument("polynomial arity mismatch");
  IntPolynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.addTerm(ma * mb, checkedMul(ca, cb));
  return out;
}

IntPolynomial IntPolynomial::pow(int e) const {
  if (e < 0) throw InvalidArgument("negative polynomial power");
  IntPolynomial result = constant(nvars_, 1);
  for (int i = 0; i < e; ++i) result = result * *this;
  return result;
}

IntPolynomial IntPolynomial::negated() const {
  IntPolynomial out(nvars_);
  for (const auto& [m, c] : terms_) out.addTerm(m, checkedMul(c, -1));
  return out;
}

std::string IntPolynomial::toString(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  // Print in grevlex-descending order so output is stable and readable.
  std::vector<std::pair<Monomial, std::int64_t>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return grevlexGreater(a.first, b.first); });
  std::string s;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string body;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += names.at(i);
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    if (body.empty()) {
      s += std::to_string(mag);
    } else if (mag == 1) {
      s += body;
    } else {
      s += std::to_string(mag) + "*" + body;
    }
  }
  return s;
}

}  // namespace mixmult
