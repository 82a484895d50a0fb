#include "mixmult/echelon.hpp"

#include <algorithm>
#include <functional>

#include "mixmult/errors.hpp"

namespace mixmult {

std::vector<int> RrefMatrix::pivotIndex() const {
  std::vector<int> idx(cols, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) idx[rows[i].front().col] = static_cast<int>(i);
  return idx;
}

EchelonBuilder::EchelonBuilder(const PrimeField& field, std::size_t cols)
    : field_(field), cols_(cols), pivotOf_(cols, -1), acc_(cols, 0), queued_(cols, 0) {}

void EchelonBuilder::push(std::uint32_t col) {
  if (queued_[col]) return;
  queued_[col] = 1;
  heap_.push_back(col);
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
}

void EchelonBuilder::load(std::span<const SparseEntry> row) {
  for (const auto& e : row) {
    if (e.col >= cols_) throw InvalidArgument("row entry outside matrix");
    if (acc_[e.col] == 0 && !queued_[e.col]) touched_.push_back(e.col);
    acc_[e.col] = field_.add(acc_[e.col], e.val);
    push(e.col);
  }
}

void EchelonBuilder::clear() {
  for (auto c : touched_) {
    acc_[c] = 0;
    queued_[c] = 0;
  }
  touched_.clear();
  heap_.clear();
}

bool EchelonBuilder::insert(std::span<const SparseEntry> row) {
  load(row);
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    const std::uint32_t c = heap_.back();
    heap_.pop_back();
    queued_[c] = 0;
    if (acc_[c] == 0) continue;
    const int p = pivotOf_[c];
    if (p < 0) {
      // New pivot: the survivors are exactly the nonzero touched columns.
      SparseRow out;
      const auto scale = field_.inv(acc_[c]);
      std::sort(touched_.begin(), touched_.end());
      touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
      for (auto col : touched_) {
        if (acc_[col] != 0) out.push_back({col, field_.mul(acc_[col], scale)});
      }
      // queued_ flags for entries still in the heap are reset by clear().
      for (auto col : heap_) queued_[col] = 0;
      clear();
      pivotOf_[c] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(out));
      return true;
    }
    const auto f = acc_[c];
    for (const auto& e : rows_[static_cast<std::size_t>(p)]) {
      if (acc_[e.col] == 0 && !queued_[e.col]) touched_.push_back(e.col);
      acc_[e.col] = field_.sub(acc_[e.col], field_.mul(f, e.val));
      if (e.col != c) push(e.col);
    }
  }
  clear();
  return false;
}

RrefMatrix EchelonBuilder::finish() && {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].front().col < rows_[b].front().col; });

  RrefMatrix out;
  out.cols = cols_;
  out.rows.resize(rows_.size());
  std::vector<int> reducedPivot(cols_, -1);
  // Back-substitute from the last pivot: rows with larger pivots are already
  // reduced, so one pass over the original support suffices.
  for (std::size_t k = order.size(); k-- > 0;) {
    SparseRow& src = rows_[order[k]];
    const std::uint32_t pivot = src.front().col;
    for (const auto& e : src) {
      if (acc_[e.col] == 0) touched_.push_back(e.col);
      acc_[e.col] = e.val;
    }
    for (const auto& e : src) {
      if (e.col == pivot) continue;
      const int r = reducedPivot[e.col];
      if (r < 0) continue;
      const auto f = acc_[e.col];
      if (f == 0) continue;
      for (const auto& t : out.rows[static_cast<std::size_t>(r)]) {
        if (acc_[t.col] == 0) touched_.push_back(t.col);
        acc_[t.col] = field_.sub(acc_[t.col], field_.mul(f, t.val));
      }
    }
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    SparseRow row;
    for (auto col : touched_) {
      if (acc_[col] != 0) row.push_back({col, acc_[col]});
      acc_[col] = 0;
    }
    touched_.clear();
    out.rows[k] = std::move(row);
    reducedPivot[pivot] = static_cast<int>(k);
  }
  return out;
}

SparseRow reduceAgainst(const PrimeField& field, const RrefMatrix& rref,
                        const std::vector<int>& pivotOf, std::span<const SparseEntry> row) {
  // Accumulate in a sorted map-free way: gather contributions then canonicalize.
  std::vector<SparseEntry> parts;
  parts.reserve(row.size() * 2);
  for (const auto& e : row) {
    const int r = pivotOf[e.col];
    if (r < 0) {
      parts.push_back(e);
      continue;
    }
    const auto f = field.neg(e.val);
    for (const auto& t : rref.rows[static_cast<std::size_t>(r)]) {
      if (t.col == e.col) continue;
      parts.push_back({t.col, field.mul(f, t.val)});
    }
  }
  return canonicalRow(field, std::move(parts));
}

SparseRow canonicalRow(const PrimeField& field, std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  SparseRow out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().val = field.add(out.back().val, e.val);
    } else {
      out.push_back(e);
    }
    if (out.back().val == 0) out.pop_back();
  }
  return out;
}

}  // namespace mixmult
