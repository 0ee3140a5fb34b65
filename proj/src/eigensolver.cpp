#include "filtspec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "filtspec/errors.hpp"

namespace filtspec {

namespace {

void require_symmetric(const DenseMatrix& m) {
  if (!m.is_square()) throw SymmetryError("matrix is not square");
  const double tol = 1e-12 * m.max_abs();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol)
        throw SymmetryError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

// Overflow-safe sqrt(a^2 + b^2).
double pythag(double a, double b) {
  const double absa = std::abs(a);
  const double absb = std::abs(b);
  if (absa > absb) return absa * std::sqrt(1.0 + (absb / absa) * (absb / absa));
  return absb == 0.0 ? 0.0 : absb * std::sqrt(1.0 + (absa / absb) * (absa / absb));
}

TridiagonalForm tridiagonalize_unchecked(DenseMatrix a) {
  const std::size_t n = a.rows();
  TridiagonalForm t;
  t.diagonal.assign(n, 0.0);
  t.off_diagonal.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return t;

  // Only the lower triangle of `a` is referenced and updated. e[i] couples
  // rows i-1 and i once row i has been annihilated.
  std::vector<double> e(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
  }
  for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = a(i, i);
  for (std::size_t i = 1; i < n; ++i) t.off_diagonal[i - 1] = e[i];
  return t;
}

}  // namespace

TridiagonalForm householder_tridiagonalize(const DenseMatrix& m) {
  require_symmetric(m);
  return tridiagonalize_unchecked(m);
}

SymmetricBand::SymmetricBand(std::size_t dim, int bandwidth) : dim_(dim), bandwidth_(bandwidth) {
  if (bandwidth < 0) throw DomainError("bandwidth must be nonnegative");
  lower_.assign(static_cast<std::size_t>(bandwidth + 1) * dim, 0.0);
}

double SymmetricBand::at(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  const std::size_t d = i - j;
  return d > static_cast<std::size_t>(bandwidth_) ? 0.0 : lower_[d * dim_ + j];
}

void SymmetricBand::set(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  const std::size_t d = i - j;
  if (i >= dim_ || d > static_cast<std::size_t>(bandwidth_)) throw DomainError("entry outside the band");
  lower_[d * dim_ + j] = v;
}

DenseMatrix SymmetricBand::to_dense() const {
  DenseMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i >= static_cast<std::size_t>(bandwidth_) ? i - bandwidth_ : 0; j <= i; ++j)
      m(i, j) = m(j, i) = at(i, j);
  return m;
}

TridiagonalForm band_tridiagonalize(const SymmetricBand& band) {
  const std::size_t n = band.dim();
  const auto b0 = static_cast<std::size_t>(band.bandwidth());
  // One spare diagonal holds the bulge.
  SymmetricBand a(n, band.bandwidth() + 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < std::min(n, j + b0 + 1); ++i) a.set(i, j, band.at(i, j));

  // Rotation in the plane (q - 1, q) that zeroes a(q, col) against a(q - 1, col).
  // Only rows and columns within b + 1 of the plane hold nonzeros.
  auto rotate = [&](std::size_t q, std::size_t col, std::size_t b) {
    const std::size_t p = q - 1;
    const double x = a.at(p, col);
    const double y = a.at(q, col);
    if (y == 0.0) return;
    const double r = pythag(x, y);
    const double c = x / r;
    const double s = y / r;
    const std::size_t lo = p > b ? p - b : 0;
    const std::size_t hi = std::min(n - 1, q + b);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == p || j == q) continue;
      const double u = a.at(p, j);
      const double v = a.at(q, j);
      if (u == 0.0 && v == 0.0) continue;
      a.set(p, j, c * u + s * v);
      a.set(q, j, -s * u + c * v);
    }
    const double app = a.at(p, p);
    const double aqq = a.at(q, q);
    const double apq = a.at(p, q);
    a.set(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
    a.set(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
    a.set(p, q, (c * c - s * s) * apq + c * s * (aqq - app));
    a.set(q, col, 0.0);
  };

  for (std::size_t b = b0; b >= 2; --b) {
    for (std::size_t k = 0; k + b < n; ++k) {
      // Zero a(k + b, k); each rotation leaves a bulge b + 1 below the
      // diagonal, which the next rotation pushes b rows further down.
      std::size_t q = k + b;
      std::size_t col = k;
      while (q < n) {
        rotate(q, col, b);
        col = q - 1;
        q += b;
      }
    }
  }

  TridiagonalForm t;
  t.diagonal.resize(n);
  t.off_diagonal.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = a.at(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) t.off_diagonal[i] = a.at(i + 1, i);
  return t;
}

EigenvalueList tridiagonal_eigenvalues(const TridiagonalForm& t, double tol) {
  if (!(tol > 0.0)) throw DomainError("deflation tolerance must be positive");
  const std::size_t n = t.dim();
  if (n > 0 && t.off_diagonal.size() != n - 1) throw DomainError("off-diagonal must have m-1 entries");
  std::vector<double> d = t.diagonal;
  // e[i] couples d[i] and d[i+1]; e[n-1] is a zero sentinel.
  std::vector<double> e(n, 0.0);
  std::copy(t.off_diagonal.begin(), t.off_diagonal.end(), e.begin());
  for (double x : d)
    if (!std::isfinite(x)) throw DomainError("tridiagonal entries must be finite");
  for (double x : e)
    if (!std::isfinite(x)) throw DomainError("tridiagonal entries must be finite");

  constexpr int kMaxSweeps = 50;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= tol * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxSweeps)
        throw ConvergenceError("QL iteration did not converge for eigenvalue " + std::to_string(l));

      // Wilkinson shift from the leading 2x2 block of the unreduced segment.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = pythag(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = pythag(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return EigenvalueList{std::move(d)};
}

EigenvalueList symmetric_eigenvalues(const DenseMatrix& m) {
  require_symmetric(m);
  const std::size_t n = m.rows();

  // Connected components of the off-diagonal sparsity graph; the matrix is
  // permutation-similar to the direct sum of the component blocks.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (row[j] == 0.0) continue;
      const std::size_t a = find(i);
      const std::size_t b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (block_of[root] == n) {
      block_of[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i);
  }

  std::vector<double> values;
  values.reserve(n);
  for (const auto& idx : blocks) {
    if (idx.size() == 1) {
      values.push_back(m(idx[0], idx[0]));
      continue;
    }
    DenseMatrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = m(idx[a], idx[b]);
    auto eig = tridiagonal_eigenvalues(tridiagonalize_unchecked(std::move(sub)));
    values.insert(values.end(), eig.values.begin(), eig.values.end());
  }
  std::sort(values.begin(), values.end());
  return EigenvalueList{std::move(values)};
}

int sturm_count_below(const TridiagonalForm& t, double x) {
  constexpr double kTinyPivot = 1e-300;
  const std::size_t n = t.dim();
  int negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double coupling = i == 0 ? 0.0 : t.off_diagonal[i - 1] * t.off_diagonal[i - 1] / q;
    q = t.diagonal[i] - x - coupling;
    // A zero pivot means x is an eigenvalue of the leading block; nudging it
    // negative counts that eigenvalue as lying at or below x.
    if (q == 0.0) q = -kTinyPivot;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

int sturm_count(const TridiagonalForm& t, double a, double b) {
  if (!(a < b)) throw DomainError("sturm_count needs a < b");
  return sturm_count_below(t, b) - sturm_count_below(t, a);
}

double trace_norm(const DenseMatrix& m) {
  // Square roots of Gram eigenvalues lose half the digits of small singular
  // values; the Jacobi values do not.
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

std::vector<double> singular_values(const DenseMatrix& m) {
  // Columns of the taller orientation, stored contiguously.
  const bool tall = m.rows() >= m.cols();
  const std::size_t rows = tall ? m.rows() : m.cols();
  const std::size_t cols = tall ? m.cols() : m.rows();
  std::vector<std::vector<double>> col(cols, std::vector<double>(rows));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (tall)
        col[j][i] = m(i, j);
      else
        col[i][j] = m(i, j);
    }

  constexpr int kMaxSweeps = 60;
  const double eps = static_cast<double>(std::max<std::size_t>(rows, 1)) * std::numeric_limits<double>::epsilon();
  double total = 0.0;
  for (const auto& c : col)
    for (double x : c) total += x * x;
  // Columns this small are roundoff; rotating them against others never settles.
  const double negligible = eps * eps * total;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += col[p][i] * col[p][i];
          beta += col[q][i] * col[q][i];
          gamma += col[p][i] * col[q][i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        if (alpha <= negligible || beta <= negligible) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double xp = col[p][i];
          const double xq = col[q][i];
          col[p][i] = c * xp - s * xq;
          col[q][i] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
    if (sweep + 1 == kMaxSweeps) throw ConvergenceError("one-sided Jacobi did not converge");
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (double x : col[j]) s += x * x;
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace filtspec
