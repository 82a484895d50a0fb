#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mixmult/field.hpp"

namespace mixmult {

struct SparseEntry {
  std::uint32_t col;
  std::uint32_t val;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Row vector over GF(p): entries sorted by column, no explicit zeros.
using SparseRow = std::vector<SparseEntry>;

/// Row space in reduced row-echelon form: each row has leading entry 1, rows
/// are sorted by pivot column, and no row has a nonzero in another row's
/// pivot column.
struct RrefMatrix {
  std::size_t cols = 0;
  std::vector<SparseRow> rows;

  std::size_t rank() const { return rows.size(); }
  /// pivot column -> row index, -1 where absent.
  std::vector<int> pivotIndex() const;
  friend bool operator==(const RrefMatrix&, const RrefMatrix&) = default;
};

/// Incremental Gaussian elimination. Rows are kept in echelon form while
/// inserting; `finish` back-substitutes to the reduced form.
class EchelonBuilder {
public:
  EchelonBuilder(const PrimeField& field, std::size_t cols);

  /// Adds a row (sorted entries, values in [0,p)). Returns true when the rank
  /// grows.
  bool insert(std::span<const SparseEntry> row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  RrefMatrix finish() &&;

private:
  void load(std::span<const SparseEntry> row);
  void clear();
  void push(std::uint32_t col);

  PrimeField field_;
  std::size_t cols_;
  std::vector<int> pivotOf_;
  std::vector<SparseRow> rows_;
  // Dense scratch space shared by all insertions.
  std::vector<std::uint32_t> acc_;
  std::vector<char> queued_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> heap_;
};

/// Row-reduces `row` against a reduced matrix whose pivot index is given.
/// The result has zeros in every pivot column.
SparseRow reduceAgainst(const PrimeField& field, const RrefMatrix& rref,
                        const std::vector<int>& pivotOf, std::span<const SparseEntry> row);

/// Sorts entries by column, merges duplicates and drops zeros.
SparseRow canonicalRow(const PrimeField& field, std::vector<SparseEntry> entries);

}  // namespace mixmult
