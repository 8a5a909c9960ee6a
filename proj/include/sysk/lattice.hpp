#pragma once

// Exact linear algebra over Z and Q: row echelon forms with unimodular
// transforms, row-span membership with witnesses, left kernels and Smith
// invariant factors.

#include "sysk/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sysk::lattice {

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

inline IntMatrix identity_int(std::size_t n) {
  IntMatrix id(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

inline void axpy_row(IntVector& dst, const Int& q, const IntVector& src) {
  for (std::size_t k = 0; k < dst.size(); ++k)
    if (src[k] != 0) dst[k] -= q * src[k];
}

/// Row-style Hermite form: transform * input == form, with pivots positive
/// and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

inline HermiteForm hermite(IntMatrix a, std::size_t cols) {
  const std::size_t m = a.size();
  IntMatrix u = identity_int(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m; ++i)
        if (a[i][c] != 0 && (!best || abs_int(a[i][c]) < abs_int(a[*best][c]))) best = i;
      if (!best) break;
      std::swap(a[r], a[*best]);
      std::swap(u[r], u[*best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a[i][c] == 0) continue;
        Int q = a[i][c] / a[r][c];
        axpy_row(a[i], q, a[r]);
        axpy_row(u[i], q, u[r]);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a[i][c], a[r][c]);
      if (q == 0) continue;
      axpy_row(a[i], q, a[r]);
      axpy_row(u[i], q, u[r]);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(u), std::move(pivots)};
}

inline std::size_t column_count(const IntMatrix& a, std::size_t fallback) {
  return a.empty() ? fallback : a.front().size();
}

/// Integer coefficients c with sum_i c_i * rows[i] == target, if any.
inline std::optional<IntVector> solve_rows(const IntMatrix& rows, const IntVector& target) {
  const std::size_t n = target.size();
  if (rows.empty()) {
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    return IntVector{};
  }
  HermiteForm h = hermite(rows, n);
  IntVector residual = target;
  IntVector y(rows.size(), 0);
  for (std::size_t i = 0; i < h.rank(); ++i) {
    const std::size_t c = h.pivot_cols[i];
    if (residual[c] == 0) continue;
    if (residual[c] % h.form[i][c] != 0) return std::nullopt;
    y[i] = residual[c] / h.form[i][c];
    axpy_row(residual, y[i], h.form[i]);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  IntVector c(rows.size(), 0);
  for (std::size_t i = 0; i < h.rank(); ++i)
    if (y[i] != 0)
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += y[i] * h.transform[i][k];
  return c;
}

/// Basis of { c : c * rows == 0 } over Z.
inline IntMatrix left_kernel(const IntMatrix& rows, std::size_t cols) {
  if (rows.empty()) return {};
  HermiteForm h = hermite(rows, cols);
  IntMatrix ker;
  for (std::size_t i = h.rank(); i < rows.size(); ++i) ker.push_back(h.transform[i]);
  return ker;
}

inline std::size_t rank_int(const IntMatrix& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return hermite(rows, cols).rank();
}

/// Nonzero Smith invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<Int> smith_invariants(IntMatrix a, std::size_t cols) {
  const std::size_t m = a.size();
  const std::size_t n = cols;
  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // pivot on the smallest nonzero entry of the trailing block
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 &&
              (!best || abs_int(a[i][j]) < abs_int(a[best->first][best->second])))
            best = std::make_pair(i, j);
      if (!best) return diag;
      std::swap(a[t], a[best->first]);
      for (auto& row : a) std::swap(row[t], row[best->second]);

      bool done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        axpy_row(a[i], a[i][t] / a[t][t], a[t]);
        if (a[i][t] != 0) done = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) done = false;
      }
      if (!done) continue;
      // divisibility of the trailing block
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      for (std::size_t j = t; j < n; ++j) a[t][j] += a[*bad][j];
    }
    diag.push_back(abs_int(a[t][t]));
  }
  return diag;
}

// ---------------------------------------------------------------- rationals

struct RationalEchelon {
  RatMatrix form;
  RatMatrix transform;
  std::vector<std::size_t> pivot_cols;
};

inline RationalEchelon rational_echelon(RatMatrix a, std::size_t cols) {
  const std::size_t m = a.size();
  RatMatrix u(m, RatVector(m, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (!p) continue;
    std::swap(a[r], a[*p]);
    std::swap(u[r], u[*p]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (auto& x : u[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational q = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= q * a[r][k];
      for (std::size_t k = 0; k < m; ++k) u[i][k] -= q * u[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(u), std::move(pivots)};
}

inline std::optional<RatVector> solve_rows_rational(const RatMatrix& rows, const RatVector& target) {
  const std::size_t n = target.size();
  if (rows.empty()) {
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    return RatVector{};
  }
  RationalEchelon e = rational_echelon(rows, n);
  RatVector residual = target;
  RatVector c(rows.size(), 0);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    const Rational y = residual[e.pivot_cols[i]];
    if (y == 0) continue;
    for (std::size_t k = 0; k < n; ++k) residual[k] -= y * e.form[i][k];
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += y * e.transform[i][k];
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  return c;
}

inline std::size_t rank_rational(const RatMatrix& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rational_echelon(rows, cols).pivot_cols.size();
}

/// Rank over F_p of an integer matrix.
inline std::size_t rank_mod_prime(const IntMatrix& rows, std::size_t cols, const Int& p) {
  IntMatrix a = rows;
  for (auto& row : a)
    for (auto& x : row) x = mod_floor(x, p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < a.size(); ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (!piv) continue;
    std::swap(a[r], a[*piv]);
    // inverse by Fermat
    Int inv = boost::multiprecision::powm(a[r][c], p - 2, p);
    for (auto& x : a[r]) x = mod_floor(x * inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Int q = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = mod_floor(a[i][k] - q * a[r][k], p);
    }
    ++r;
  }
  return r;
}

}  // namespace sysk::lattice
