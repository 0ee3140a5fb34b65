#pragma once

// Reference computations that share no code path with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "filtspec/matrix.hpp"
#include "filtspec/operator_model.hpp"

namespace oracle {

using Grid = std::vector<std::vector<double>>;

inline Grid to_grid(const filtspec::DenseMatrix& m) {
  Grid g(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

inline Grid multiply(const Grid& a, const Grid& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  Grid c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Classical two-sided Jacobi: rotate away the largest off-diagonal entry
// until the matrix is diagonal.
inline std::vector<double> jacobi_eigenvalues(Grid a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// 2 cos(k pi / (m + 1)), k = 1..m, ascending.
inline std::vector<double> free_jacobi_eigenvalues(std::size_t m) {
  std::vector<double> ev(m);
  for (std::size_t k = 1; k <= m; ++k) ev[k - 1] = 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / (m + 1.0));
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Eigenvalues in (lo, hi) by a linear scan.
inline std::size_t count_open(const std::vector<double>& values, double lo, double hi) {
  std::size_t c = 0;
  for (double x : values) c += (x > lo && x < hi) ? 1 : 0;
  return c;
}

// Builds the involution from its definition: 4j <-> 16 j^2 + 1, then the
// remaining evens and odds paired in increasing order. Evens are enumerated
// far enough past `limit` that every k <= limit has its partner.
inline std::map<std::int64_t, std::int64_t> enumerate_involution(std::int64_t limit) {
  const std::int64_t evens_to = 4 * limit + 4;
  std::map<std::int64_t, std::int64_t> pi;
  std::vector<bool> taken_odd(static_cast<std::size_t>(evens_to * evens_to + 2), false);
  for (std::int64_t k = 4; k <= evens_to; k += 4) {
    pi[k] = k * k + 1;
    taken_odd[static_cast<std::size_t>(k * k + 1)] = true;
  }
  std::int64_t odd = 1;
  for (std::int64_t k = 2; k <= evens_to; k += 4) {
    while (taken_odd[static_cast<std::size_t>(odd)]) odd += 2;
    pi[k] = odd;
    odd += 2;
  }
  std::map<std::int64_t, std::int64_t> full = pi;
  for (const auto& [e, o] : pi) full[o] = e;
  return full;
}

// Sum of singular values: the eigenvalues of [[0, a], [a^T, 0]] are +-sigma_i.
inline double trace_norm(const Grid& a) {
  const std::size_t r = a.size();
  const std::size_t c = r == 0 ? 0 : a[0].size();
  Grid aug(r + c, std::vector<double>(r + c, 0.0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) aug[i][r + j] = aug[r + j][i] = a[i][j];
  double s = 0.0;
  for (double x : jacobi_eigenvalues(aug)) s += x > 0 ? x : 0.0;
  return s;
}

inline filtspec::DenseMatrix random_symmetric(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  filtspec::DenseMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

}  // namespace oracle
