#include "rsm/int_matrix.hpp"

#include <algorithm>
#include <utility>

namespace rsm {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw InputError("matrix entry count does not match its shape");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

void swap_cols(IntMatrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, c1), a(i, c2));
}

// Position of the smallest nonzero |entry| in the block starting at (t, t).
bool find_min_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i) {
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!found || v < best) {
        best = v;
        pr = i;
        pc = j;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t limit = std::min(a.rows(), a.cols());
  std::size_t t = 0;
  Integer q;
  for (; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_min_pivot(a, t, pr, pc)) break;
    swap_rows(a, t, pr);
    swap_cols(a, t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t j = t; j < a.cols(); ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t i = t; i < a.rows(); ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; promote the smallest one.
        std::size_t br = t, bc = t;
        Integer best = abs(a(t, t));
        for (std::size_t i = t + 1; i < a.rows(); ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) best = abs(a(i, t)), br = i, bc = t;
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) best = abs(a(t, j)), br = t, bc = j;
        swap_rows(a, t, br);
        swap_cols(a, t, bc);
        continue;
      }
      // Row and column are clear; the pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < a.cols(); ++k) a(t, k) += a(i, k);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }

  SmithForm out;
  out.rank = t;
  out.invariant_factors.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(abs(a(i, i)));
  return out;
}

std::size_t rational_rank(const IntMatrix& m) {
  std::vector<Rational> a(m.entries().begin(), m.entries().end());
  const std::size_t rows = m.rows(), cols = m.cols();
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * cols + j]; };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (at(i, c) == 0) continue;
      const Rational f = at(i, c) / at(r, c);
      for (std::size_t j = c; j < cols; ++j) at(i, j) -= f * at(r, j);
    }
    ++r;
  }
  return r;
}

bool solve_full_column_rank(const IntMatrix& a, const std::vector<Integer>& b, std::vector<Rational>& x) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) throw InputError("right-hand side length does not match matrix rows");
  std::vector<Rational> aug(rows * (cols + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return aug[i * (cols + 1) + j]; };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) at(i, j) = a(i, j);
    at(i, cols) = b[i];
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) throw PreconditionError("generators are linearly dependent");
    if (p != r)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(at(p, j), at(r, j));
    const Rational inv = 1 / at(r, c);
    for (std::size_t j = c; j <= cols; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j = c; j <= cols; ++j) at(i, j) -= f * at(r, j);
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (at(i, cols) != 0) return false;
  x.assign(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c) x[c] = at(c, cols);
  return true;
}

}  // namespace rsm
