#pragma once

// Exact dense linear algebra over the Gaussian rationals.

#include <uvqft/exact_complex.hpp>

#include <optional>
#include <string>
#include <vector>

namespace uvqft {

using Matrix = std::vector<std::vector<ExactComplex>>;

inline Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<ExactComplex>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline bool is_hermitian(const Matrix& g) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!(g[i][j] == g[j][i].conj())) return false;
  return true;
}

struct LdlResult {
  bool hermitian = false;
  bool psd = false;
  std::vector<ExactComplex> pivots;
  int rank = 0;
  std::string failure;  // first reason for rejecting, empty on success
};

/// Hermitian LDL* without pivoting. A zero pivot is admissible only when the
/// rest of its column vanishes too, which is exactly the PSD condition.
inline LdlResult hermitian_ldl(const Matrix& g) {
  LdlResult r;
  const int n = static_cast<int>(g.size());
  r.hermitian = is_hermitian(g);
  if (!r.hermitian) {
    r.failure = "matrix is not Hermitian";
    return r;
  }
  Matrix a = g;  // Schur complements in place
  for (int k = 0; k < n; ++k) {
    const ExactComplex d = a[k][k];
    r.pivots.push_back(d);
    if (!d.is_real() || sgn(d.re()) < 0) {
      r.failure = "negative pivot " + d.str() + " at " + std::to_string(k);
      return r;
    }
    if (d.is_zero()) {
      for (int i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          r.failure = "zero pivot with nonzero column at " + std::to_string(k);
          return r;
        }
      continue;
    }
    ++r.rank;
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const ExactComplex l = a[i][k] / d;
      for (int j = k + 1; j < n; ++j) a[i][j] -= l * a[k][j];
    }
  }
  r.psd = true;
  return r;
}

struct LinearSolution {
  bool consistent = false;
  std::vector<ExactComplex> x;  // particular solution with free variables set to 0
  int rank = 0;
  ExactComplex residual;        // first inconsistent right-hand side after elimination
  int residual_row = -1;
};

/// Solves A x = b exactly by Gauss-Jordan elimination.
inline LinearSolution solve_linear(Matrix A, std::vector<ExactComplex> b, int ncols) {
  LinearSolution s;
  const int nrows = static_cast<int>(A.size());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int pr = -1;
    for (int i = row; i < nrows; ++i)
      if (!A[i][col].is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[pr], A[row]);
    std::swap(b[pr], b[row]);
    const ExactComplex inv = ExactComplex(1) / A[row][col];
    for (int j = col; j < ncols; ++j) A[row][j] *= inv;
    b[row] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == row || A[i][col].is_zero()) continue;
      const ExactComplex f = A[i][col];
      for (int j = col; j < ncols; ++j) A[i][j] -= f * A[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  s.rank = row;
  for (int i = row; i < nrows; ++i)
    if (!b[i].is_zero()) {
      s.residual = b[i];
      s.residual_row = i;
      return s;
    }
  s.consistent = true;
  s.x.assign(ncols, ExactComplex());
  for (int i = 0; i < row; ++i) s.x[pivot_col[i]] = b[i];
  return s;
}

inline std::optional<Matrix> invert_matrix(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix inv(n, std::vector<ExactComplex>(n));
  for (int c = 0; c < n; ++c) {
    std::vector<ExactComplex> e(n);
    e[c] = 1;
    auto s = solve_linear(m, e, n);
    if (!s.consistent || s.rank < n) return std::nullopt;
    for (int r = 0; r < n; ++r) inv[r][c] = s.x[r];
  }
  return inv;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<ExactComplex>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

}  // namespace uvqft
