#pragma once

#include <cstddef>
#include <vector>

#include "rsm/rational.hpp"

namespace rsm {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Integer>& entries() const { return entries_; }

  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct SmithForm {
  // Nonzero diagonal entries of the Smith normal form, each dividing the next.
  std::vector<Integer> invariant_factors;
  std::size_t rank = 0;
};

/// Smith normal form by unimodular row/column reduction. The pivot is always an
/// entry of minimal nonzero absolute value in the remaining block.
SmithForm snf(const IntMatrix& m);

/// Rank over the rationals (Gaussian elimination in exact arithmetic).
std::size_t rational_rank(const IntMatrix& m);

/// Solves A x = b for A of full column rank. Returns false when b is outside
/// the column span. Throws PreconditionError if the columns of A are dependent.
bool solve_full_column_rank(const IntMatrix& a, const std::vector<Integer>& b, std::vector<Rational>& x);

}  // namespace rsm
