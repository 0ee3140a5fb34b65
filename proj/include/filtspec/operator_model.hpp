#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace filtspec {

using Index = std::int64_t;

/// Unilateral bases are indexed by 1, 2, 3, ...; bilateral bases by all of Z.
enum class IndexMode { Unilateral, Bilateral };

const char* to_string(IndexMode mode);

using RealFn = std::function<double(double)>;

/// diag(k, i) is the matrix entry a_{i+k, i}, i.e. entry i of the k-th diagonal.
using DiagonalFn = std::function<double(int k, Index i)>;

using EntryFn = std::function<double(Index i, Index j)>;

/// Nonzero rows of column j as (row, value) pairs.
using ColumnSupportFn = std::function<std::vector<std::pair<Index, double>>(Index j)>;

/// A bounded operator given by its matrix against a fixed orthonormal basis.
///
/// Banded operators carry a band half-width K, a diagonal function for
/// k in [-K, K] and an upper estimate d_k of the sup norm of each diagonal.
/// Unbanded operators (the involution example) only supply entries and are
/// rejected by the degree and norm-bound machinery.
class OperatorSpec {
 public:
  /// General banded operator; not required to be self-adjoint.
  /// `diag_sup` has 2K+1 entries, element k+K bounding diagonal k.
  static OperatorSpec banded(IndexMode mode, int band, DiagonalFn diag, std::vector<double> diag_sup);

  /// Real symmetric banded operator built from its lower diagonals
  /// (`lower(k, i)` = a_{i+k,i} for 0 <= k <= K); upper diagonals mirror them.
  /// `lower_sup` has K+1 entries.
  static OperatorSpec symmetric_banded(IndexMode mode, int band, DiagonalFn lower,
                                       std::vector<double> lower_sup);

  static OperatorSpec unbanded(IndexMode mode, EntryFn entry, ColumnSupportFn columns = {});

  IndexMode index_mode() const { return mode_; }
  bool is_banded() const { return band_.has_value(); }

  /// Throws UnsupportedError for unbanded operators.
  int band_half_width() const;

  /// d_k; zero outside the band.
  double diag_sup(int k) const;

  bool valid_index(Index i) const { return mode_ == IndexMode::Bilateral || i >= 1; }

  /// a_{ij}. Throws DomainError for indices below 1 on a unilateral basis.
  double entry(Index i, Index j) const;

  /// Nonzero entries of column j (rows restricted to valid indices).
  std::vector<std::pair<Index, double>> column(Index j) const;

  /// The operator D_k that keeps only diagonal k.
  OperatorSpec diagonal_part(int k) const;

  /// sum_k d_k, an upper bound for the operator norm.
  double norm_upper_bound() const;

 private:
  OperatorSpec() = default;

  IndexMode mode_ = IndexMode::Bilateral;
  std::optional<int> band_;
  DiagonalFn diag_;
  std::vector<double> sup_;
  EntryFn entry_;
  ColumnSupportFn columns_;
};

/// A real 2pi-periodic function sampled on a uniform grid for quadrature.
struct SymbolSpec {
  RealFn f;
  int quadrature_points = 4096;
};

/// Coefficients a_k for k in [-K, K].
class LaurentCoefficients {
 public:
  LaurentCoefficients() = default;
  /// `values` holds 2K+1 entries ordered a_{-K}, ..., a_K.
  explicit LaurentCoefficients(std::vector<double> values);
  /// Symmetric coefficients from a_0, a_1, ..., a_K.
  static LaurentCoefficients symmetric(const std::vector<double>& one_sided);

  int band() const { return band_; }
  double operator[](int k) const;
  const std::vector<double>& values() const { return values_; }

 private:
  int band_ = 0;
  std::vector<double> values_{0.0};
};

/// Trapezoid-rule Fourier coefficients a_k = (1/2pi) int f(x) e^{-ikx} dx.
/// Only even symbols are accepted, since the resulting Laurent matrix must be
/// real symmetric.
LaurentCoefficients fourier_coefficients(const SymbolSpec& sym, int band);

/// f(x) = a_0 + 2 sum_k a_k cos(kx): the symbol of a symmetric coefficient list.
SymbolSpec symbol_from_coefficients(const LaurentCoefficients& coeffs, int quadrature_points = 4096);

/// min and max of f over the quadrature grid (sampled ess inf / ess sup).
std::pair<double, double> symbol_range(const SymbolSpec& sym);

/// Bilateral operator with constant diagonals a_{i+k,i} = a_k.
OperatorSpec laurent_operator(const LaurentCoefficients& coeffs);

/// Unilateral counterpart of `laurent_operator`.
OperatorSpec toeplitz_operator(const LaurentCoefficients& coeffs);

/// Bilateral tridiagonal operator with unit off-diagonals and diagonal
/// d_n = v(sin(n theta)).
OperatorSpec almost_mathieu_operator(RealFn v, double theta);

/// The discretized Hamiltonian in its tridiagonal representation: diagonal
/// v(-sin(2 sigma^2 n)), unit off-diagonals.
OperatorSpec discretized_hamiltonian(RealFn v, double sigma);

/// Diagonal operator a_{ii} = d(i) with sup bound `sup`.
OperatorSpec diagonal_operator(IndexMode mode, std::function<double(Index)> d, double sup);

/// Order-two permutation of {1, 2, ...} swapping evens and odds.
///
/// Multiples of 4 go to k^2 + 1; the remaining evens (2 mod 4) are matched in
/// increasing order with the odd numbers not of the form 16j^2 + 1. The map is
/// evaluated in closed form, so `limit` only marks the range over which it is
/// checked and used.
class Involution {
 public:
  explicit Involution(Index limit);

  Index limit() const { return limit_; }
  Index operator()(Index k) const;

 private:
  Index limit_;
};

/// Throws DomainError for limit < 16.
Involution appendix_permutation(Index limit);

/// Unilateral operator A e_k = e_{pi(k)}; unbanded.
OperatorSpec permutation_operator(const Involution& perm);

}  // namespace filtspec
