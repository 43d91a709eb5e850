#pragma once

// Exact linear algebra: sparse rank modulo a prime, dense rank and kernels
// modulo a prime, and fraction-free (Bareiss) elimination over the integers.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jinv/scalar.hpp"

namespace jinv {

// ---------------------------------------------------------------------------
// Sparse rank mod p

/// Row as (column, value) pairs sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<std::uint32_t, Fp>>;

namespace detail {

/// dst -= c * src, both sorted.
inline void axpy_sparse(SparseRow& dst, Fp c, const SparseRow& src, SparseRow& scratch) {
  scratch.clear();
  scratch.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      scratch.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      scratch.emplace_back(src[j].first, Fp(0) - c * src[j].second);
      ++j;
    } else {
      const Fp v = dst[i].second - c * src[j].second;
      if (v != Fp(0)) scratch.emplace_back(dst[i].first, v);
      ++i;
      ++j;
    }
  }
  dst.swap(scratch);
}

inline Fp row_entry(const SparseRow& r, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != r.end() && it->first == col) ? it->second : Fp(0);
}

}  // namespace detail

/// Rank by right-looking elimination with a Markowitz-style choice: the pivot row is
/// the shortest active row, the pivot column the one of that row with the fewest
/// active entries; ties go to the lowest index.  Uses the current modulus.
inline std::size_t sparse_rank(std::vector<SparseRow> rows, std::uint32_t ncols) {
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);  // may hold stale row ids
  std::vector<std::uint32_t> col_count(ncols, 0);
  std::set<std::pair<std::size_t, std::uint32_t>> active;  // (length, row)
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    for (const auto& [c, v] : rows[r]) {
      if (c >= ncols) throw std::out_of_range("sparse_rank: column index");
      col_rows[c].push_back(r);
      ++col_count[c];
    }
    active.emplace(rows[r].size(), r);
  }
  std::vector<char> done(rows.size(), 0);
  std::size_t rank = 0;
  SparseRow scratch;
  while (!active.empty()) {
    const auto [len, r] = *active.begin();
    active.erase(active.begin());
    done[r] = 1;
    SparseRow& prow = rows[r];
    std::uint32_t pc = prow.front().first;
    for (const auto& [c, v] : prow)
      if (col_count[c] < col_count[pc]) pc = c;
    ++rank;
    for (const auto& [c, v] : prow) --col_count[c];
    const Fp inv = detail::row_entry(prow, pc).inverse();
    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t t : targets) {
      if (done[t]) continue;
      SparseRow& row = rows[t];
      const Fp a = detail::row_entry(row, pc);
      if (a == Fp(0)) continue;
      active.erase({row.size(), t});
      for (const auto& [c, v] : row) --col_count[c];
      detail::axpy_sparse(row, a * inv, prow, scratch);
      for (const auto& [c, v] : row) {
        ++col_count[c];
        col_rows[c].push_back(t);
      }
      if (!row.empty()) {
        active.emplace(row.size(), t);
      } else {
        done[t] = 1;
      }
    }
    SparseRow().swap(prow);
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Dense mod p

using DenseMatrixFp = std::vector<std::vector<Fp>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(DenseMatrixFp& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t ncols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == Fp(0)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Fp inv = m[r][c].inverse();
    for (std::size_t j = c; j < ncols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == Fp(0)) continue;
      const Fp f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t dense_rank(DenseMatrixFp m) { return rref(m).size(); }

/// Basis of {v : m v = 0}.
inline std::vector<std::vector<Fp>> dense_kernel(DenseMatrixFp m, std::size_t ncols) {
  for (const auto& row : m)
    if (row.size() != ncols) throw std::invalid_argument("dense_kernel: ragged matrix");
  const auto pivots = rref(m);
  std::vector<char> is_pivot(ncols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Fp>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fp> v(ncols, Fp(0));
    v[f] = Fp(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = Fp(0) - m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination over Z

using IntMatrix = std::vector<std::vector<Integer>>;

struct BareissResult {
  IntMatrix echelon;                // upper echelon form (rows beyond rank are zero and dropped)
  std::vector<std::size_t> pivots;  // pivot column of each echelon row
};

/// Bareiss one-step fraction-free elimination with row pivoting; every division is exact.
inline BareissResult bareiss(IntMatrix m) {
  BareissResult res;
  if (m.empty()) return res;
  const std::size_t ncols = m.front().size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Integer v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
      m[i][c] = 0;
    }
    // columns before c in rows below r are already zero
    prev = m[r][c];
    res.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  res.echelon = std::move(m);
  return res;
}

/// Basis of the rational kernel, one vector per free column, by back substitution.
inline std::vector<std::vector<Rational>> integer_kernel(const IntMatrix& m, std::size_t ncols) {
  for (const auto& row : m)
    if (row.size() != ncols) throw std::invalid_argument("integer_kernel: ragged matrix");
  const BareissResult b = bareiss(m);
  std::vector<char> is_pivot(ncols, 0);
  for (auto c : b.pivots) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t k = b.pivots.size(); k-- > 0;) {
      const auto& row = b.echelon[k];
      Rational s = 0;
      for (std::size_t j = b.pivots[k] + 1; j < ncols; ++j)
        if (row[j] != 0 && v[j] != 0) s += Rational(row[j]) * v[j];
      v[b.pivots[k]] = -s / Rational(row[b.pivots[k]]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t integer_rank(const IntMatrix& m) { return bareiss(m).pivots.size(); }

}  // namespace jinv
