#include "filtspec/operator_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "filtspec/errors.hpp"

namespace filtspec {

const char* to_string(IndexMode mode) {
  return mode == IndexMode::Unilateral ? "unilateral" : "bilateral";
}

// ---------------------------------------------------------------------------
// OperatorSpec

OperatorSpec OperatorSpec::banded(IndexMode mode, int band, DiagonalFn diag, std::vector<double> diag_sup) {
  if (band < 0) throw DomainError("band half-width must be nonnegative");
  if (!diag) throw DomainError("diagonal function is empty");
  if (diag_sup.size() != static_cast<std::size_t>(2 * band + 1))
    throw DomainError("diag_sup must have 2K+1 entries");
  for (double d : diag_sup)
    if (!std::isfinite(d) || d < 0.0) throw DomainError("diag_sup entries must be finite and nonnegative");
  OperatorSpec s;
  s.mode_ = mode;
  s.band_ = band;
  s.diag_ = std::move(diag);
  s.sup_ = std::move(diag_sup);
  return s;
}

OperatorSpec OperatorSpec::symmetric_banded(IndexMode mode, int band, DiagonalFn lower,
                                            std::vector<double> lower_sup) {
  if (band < 0) throw DomainError("band half-width must be nonnegative");
  if (lower_sup.size() != static_cast<std::size_t>(band + 1))
    throw DomainError("lower_sup must have K+1 entries");
  std::vector<double> sup(2 * band + 1);
  for (int k = 0; k <= band; ++k) sup[band + k] = sup[band - k] = lower_sup[k];
  // a_{i+k,i} for k < 0 equals a_{i, i+k}, entry i+k of lower diagonal -k.
  DiagonalFn full = [lower = std::move(lower)](int k, Index i) {
    return k >= 0 ? lower(k, i) : lower(-k, i + k);
  };
  return banded(mode, band, std::move(full), std::move(sup));
}

OperatorSpec OperatorSpec::unbanded(IndexMode mode, EntryFn entry, ColumnSupportFn columns) {
  if (!entry) throw DomainError("entry function is empty");
  OperatorSpec s;
  s.mode_ = mode;
  s.entry_ = std::move(entry);
  s.columns_ = std::move(columns);
  return s;
}

int OperatorSpec::band_half_width() const {
  if (!band_) throw UnsupportedError("operator is not band-limited");
  return *band_;
}

double OperatorSpec::diag_sup(int k) const {
  const int K = band_half_width();
  if (k < -K || k > K) return 0.0;
  return sup_[k + K];
}

double OperatorSpec::entry(Index i, Index j) const {
  if (!valid_index(i) || !valid_index(j))
    throw DomainError("index " + std::to_string(std::min(i, j)) + " is invalid on a unilateral basis");
  if (!band_) return entry_(i, j);
  const Index k = i - j;
  if (k < -*band_ || k > *band_) return 0.0;
  return diag_(static_cast<int>(k), j);
}

std::vector<std::pair<Index, double>> OperatorSpec::column(Index j) const {
  if (!valid_index(j)) throw DomainError("column index is invalid on a unilateral basis");
  std::vector<std::pair<Index, double>> out;
  if (band_) {
    for (int k = -*band_; k <= *band_; ++k) {
      const Index i = j + k;
      if (!valid_index(i)) continue;
      const double v = diag_(k, j);
      if (v != 0.0) out.emplace_back(i, v);
    }
    return out;
  }
  if (columns_) {
    for (auto& [i, v] : columns_(j))
      if (valid_index(i) && v != 0.0) out.emplace_back(i, v);
    return out;
  }
  throw UnsupportedError("operator has no column support; use entry()");
}

OperatorSpec OperatorSpec::diagonal_part(int k) const {
  const int K = band_half_width();
  if (k < -K || k > K) throw DomainError("diagonal index outside the band");
  const int width = std::abs(k);
  std::vector<double> sup(2 * width + 1, 0.0);
  sup[k + width] = diag_sup(k);
  DiagonalFn d = [diag = diag_, k](int kk, Index i) { return kk == k ? diag(kk, i) : 0.0; };
  return banded(mode_, width, std::move(d), std::move(sup));
}

double OperatorSpec::norm_upper_bound() const {
  if (!band_) throw UnsupportedError("operator is not band-limited");
  double s = 0.0;
  for (double d : sup_) s += d;
  return s;
}

// ---------------------------------------------------------------------------
// Symbols

LaurentCoefficients::LaurentCoefficients(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty() || values_.size() % 2 == 0)
    throw DomainError("coefficient list must have 2K+1 entries");
  band_ = static_cast<int>(values_.size() / 2);
}

LaurentCoefficients LaurentCoefficients::symmetric(const std::vector<double>& one_sided) {
  if (one_sided.empty()) throw DomainError("coefficient list is empty");
  const int K = static_cast<int>(one_sided.size()) - 1;
  std::vector<double> v(2 * K + 1);
  for (int k = 0; k <= K; ++k) v[K + k] = v[K - k] = one_sided[k];
  return LaurentCoefficients(std::move(v));
}

double LaurentCoefficients::operator[](int k) const {
  if (k < -band_ || k > band_) return 0.0;
  return values_[k + band_];
}

namespace {

double grid_point(int j, int n) { return -std::numbers::pi + 2.0 * std::numbers::pi * j / n; }

std::vector<double> sample_symbol(const SymbolSpec& sym) {
  if (!sym.f) throw DomainError("symbol function is empty");
  if (sym.quadrature_points < 2) throw DomainError("quadrature needs at least 2 points");
  std::vector<double> fx(sym.quadrature_points);
  for (int j = 0; j < sym.quadrature_points; ++j) fx[j] = sym.f(grid_point(j, sym.quadrature_points));
  return fx;
}

}  // namespace

LaurentCoefficients fourier_coefficients(const SymbolSpec& sym, int band) {
  if (band < 0) throw DomainError("band must be nonnegative");
  if (sym.quadrature_points < 2 * band + 2)
    throw DomainError("quadrature_points must be at least 2K+2");
  const auto fx = sample_symbol(sym);
  const int n = sym.quadrature_points;
  double scale = 0.0;
  for (double v : fx) scale = std::max(scale, std::abs(v));

  std::vector<double> one_sided(band + 1);
  for (int k = 0; k <= band; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = grid_point(j, n);
      re += fx[j] * std::cos(k * x);
      im -= fx[j] * std::sin(k * x);
    }
    re /= n;
    im /= n;
    if (std::abs(im) > 1e-10 * (1.0 + scale))
      throw UnsupportedError("symbol is not even; its Laurent matrix would not be real symmetric");
    one_sided[k] = re;
  }
  return LaurentCoefficients::symmetric(one_sided);
}

SymbolSpec symbol_from_coefficients(const LaurentCoefficients& coeffs, int quadrature_points) {
  for (int k = 1; k <= coeffs.band(); ++k)
    if (std::abs(coeffs[k] - coeffs[-k]) > 1e-12 * (1.0 + std::abs(coeffs[k])))
      throw SymmetryError("coefficients are not symmetric");
  return SymbolSpec{[coeffs](double x) {
                      double f = coeffs[0];
                      for (int k = 1; k <= coeffs.band(); ++k) f += 2.0 * coeffs[k] * std::cos(k * x);
                      return f;
                    },
                    quadrature_points};
}

std::pair<double, double> symbol_range(const SymbolSpec& sym) {
  const auto fx = sample_symbol(sym);
  const auto [lo, hi] = std::minmax_element(fx.begin(), fx.end());
  return {*lo, *hi};
}

namespace {

OperatorSpec constant_diagonals(IndexMode mode, const LaurentCoefficients& coeffs) {
  const int K = coeffs.band();
  for (int k = 1; k <= K; ++k)
    if (std::abs(coeffs[k] - coeffs[-k]) > 1e-12 * (1.0 + std::abs(coeffs[k])))
      throw SymmetryError("Laurent coefficients must satisfy a_{-k} = a_k");
  std::vector<double> sup(K + 1);
  for (int k = 0; k <= K; ++k) sup[k] = std::abs(coeffs[k]);
  return OperatorSpec::symmetric_banded(
      mode, K, [coeffs](int k, Index) { return coeffs[k]; }, std::move(sup));
}

}  // namespace

OperatorSpec laurent_operator(const LaurentCoefficients& coeffs) {
  return constant_diagonals(IndexMode::Bilateral, coeffs);
}

OperatorSpec toeplitz_operator(const LaurentCoefficients& coeffs) {
  return constant_diagonals(IndexMode::Unilateral, coeffs);
}

OperatorSpec almost_mathieu_operator(RealFn v, double theta) {
  if (!v) throw DomainError("potential is empty");
  constexpr int kGrid = 10000;
  double sup = 0.0;
  for (int i = 0; i < kGrid; ++i) sup = std::max(sup, std::abs(v(-1.0 + 2.0 * i / (kGrid - 1))));
  return OperatorSpec::symmetric_banded(
      IndexMode::Bilateral, 1,
      [v = std::move(v), theta](int k, Index n) {
        return k == 0 ? v(std::sin(static_cast<double>(n) * theta)) : 1.0;
      },
      {sup, 1.0});
}

OperatorSpec discretized_hamiltonian(RealFn v, double sigma) {
  if (!v) throw DomainError("potential is empty");
  return almost_mathieu_operator([v = std::move(v)](double x) { return v(-x); }, 2.0 * sigma * sigma);
}

OperatorSpec diagonal_operator(IndexMode mode, std::function<double(Index)> d, double sup) {
  return OperatorSpec::banded(
      mode, 0, [d = std::move(d)](int, Index i) { return d(i); }, {sup});
}

// ---------------------------------------------------------------------------
// Involution

namespace {

Index isqrt(Index x) {
  auto r = static_cast<Index>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Odd numbers 2r+1 are excluded from the order-preserving pool exactly when
// r = 8j^2 with j >= 1 (they are images k^2+1 of multiples of 4).
Index excluded_up_to(Index r) { return isqrt(r / 8); }

// r-value of the m-th (0-based) odd number left in the pool.
Index pool_odd_r(Index m) {
  Index lo = m;
  Index hi = 2 * m + 16;
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    if (mid + 1 - excluded_up_to(mid) >= m + 1)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

constexpr Index kMaxArgument = 3'000'000'000LL;

}  // namespace

Involution::Involution(Index limit) : limit_(limit) {
  if (limit < 16) throw DomainError("permutation limit must be at least 16");
  if (limit > kMaxArgument) throw DomainError("permutation limit too large for 64-bit images");
}

Index Involution::operator()(Index k) const {
  if (k < 1) throw DomainError("permutation is defined on 1, 2, 3, ...");
  if (k > kMaxArgument) throw DomainError("permutation argument too large");
  if (k % 4 == 0) return k * k + 1;
  if (k % 4 == 2) return 2 * pool_odd_r((k - 2) / 4) + 1;
  const Index r = (k - 1) / 2;
  const Index j = isqrt(r / 8);
  if (j >= 1 && 8 * j * j == r) return 4 * j;
  return 4 * (r - excluded_up_to(r)) + 2;
}

Involution appendix_permutation(Index limit) { return Involution(limit); }

OperatorSpec permutation_operator(const Involution& perm) {
  return OperatorSpec::unbanded(
      IndexMode::Unilateral, [perm](Index i, Index j) { return i == perm(j) ? 1.0 : 0.0; },
      [perm](Index j) { return std::vector<std::pair<Index, double>>{{perm(j), 1.0}}; });
}

}  // namespace filtspec
