#include "mixmult/multidegree.hpp"

#include <stdexcept>

namespace mixmult {

Multidegree& Multidegree::operator+=(const Multidegree& o) {
  if (o.size() != size()) throw std::invalid_argument("multidegree rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Multidegree& Multidegree::operator-=(const Multidegree& o) {
  if (o.size() != size()) throw std::invalid_argument("multidegree rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Multidegree Multidegree::concat(const Multidegree& o) const {
  std::vector<int> out = entries_;
  out.insert(out.end(), o.entries_.begin(), o.entries_.end());
  return Multidegree(std::move(out));
}

Multidegree Multidegree::slice(std::size_t first, std::size_t count) const {
  return Multidegree(std::vector<int>(entries_.begin() + static_cast<std::ptrdiff_t>(first),
                                      entries_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

std::string Multidegree::toString() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

bool dominates(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multidegree rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

Multidegree componentMax(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multidegree rank mismatch");
  Multidegree out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > out[i]) out[i] = b[i];
  return out;
}

namespace {
void composeInto(int remaining, std::size_t pos, std::vector<int>& cur,
                 std::vector<Multidegree>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    composeInto(remaining - e, pos + 1, cur, out);
  }
}
}  // namespace

std::vector<Multidegree> compositions(int total, std::size_t length) {
  std::vector<Multidegree> out;
  if (total < 0 || length == 0) return out;
  std::vector<int> cur(length, 0);
  composeInto(total, 0, cur, out);
  return out;
}

std::size_t MultidegreeHash::operator()(const Multidegree& d) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int e : d.entries()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(e)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace mixmult
