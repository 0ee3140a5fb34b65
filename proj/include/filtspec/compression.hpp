#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "filtspec/eigensolver.hpp"
#include "filtspec/matrix.hpp"
#include "filtspec/operator_model.hpp"

namespace filtspec {

/// Closed range of basis indices [first, last].
struct IndexRange {
  Index first = 1;
  Index last = 0;

  std::size_t size() const { return last < first ? 0 : static_cast<std::size_t>(last - first + 1); }
  bool contains(Index i) const { return first <= i && i <= last; }
};

/// The standard filtrations H_n = span{e_1..e_n} (unilateral) and
/// H_n = span{e_-n..e_n} (bilateral).
class Filtration {
 public:
  explicit Filtration(IndexMode mode) : mode_(mode) {}
  static Filtration unilateral() { return Filtration(IndexMode::Unilateral); }
  static Filtration bilateral() { return Filtration(IndexMode::Bilateral); }

  IndexMode mode() const { return mode_; }
  std::size_t dim(int n) const;
  IndexRange basis_range(int n) const;

 private:
  IndexMode mode_;
};

/// The compression P_n A restricted to H_n. Tridiagonal storage is used for
/// band half-width <= 1, symmetric band storage for wider bands and dense
/// storage for unbanded operators.
struct CompressedMatrix {
  int n = 0;
  std::size_t dim = 0;
  std::variant<DenseMatrix, TridiagonalForm, SymmetricBand> storage;

  bool is_tridiagonal() const { return std::holds_alternative<TridiagonalForm>(storage); }
  bool is_band() const { return std::holds_alternative<SymmetricBand>(storage); }
  DenseMatrix to_dense() const;
  EigenvalueList eigenvalues() const;
};

/// Entries a_ij for i in `rows`, j in `cols`.
DenseMatrix dense_block(const OperatorSpec& spec, IndexRange rows, IndexRange cols);

/// Throws ConfigError on a filtration/operator mode mismatch and
/// SymmetryError if the compression is not symmetric.
CompressedMatrix compress(const OperatorSpec& spec, const Filtration& filt, int n);

/// max over n <= n_max of the numerical rank of P_n A - A P_n. Singular values
/// above rank_tol times the largest one count toward the rank. For banded
/// operators the commutator lives within K of the cut, so the window
/// basis_range(n + K) is exact.
int degree_estimate(const OperatorSpec& spec, const Filtration& filt, int n_max = 64, double rank_tol = 1e-10);

/// sum_k (1 + sqrt(2|k|)) d_k, an upper bound for the filtration norm of a
/// bilateral banded operator.
double dfnorm_bound(const OperatorSpec& spec);

/// Hilbert-Schmidt norm of (1 - P_n) A P_n.
double commutator_hs_norm(const OperatorSpec& spec, const Filtration& filt, int n);

/// |trace(P_n AB P_n) - trace(P_n BA P_n)| / dim H_n, with the products formed
/// exactly (no truncation of the inner index).
double trace_state_defect(const OperatorSpec& a, const OperatorSpec& b, const Filtration& filt, int n);

/// Trace norm of P_n A_1...A_p P_n - (P_n A_1 P_n)...(P_n A_p P_n). The full
/// product is formed on basis_range(n + sum K_k), where it is exact on H_n.
double product_compression_defect(std::span<const OperatorSpec> specs, const Filtration& filt, int n);

}  // namespace filtspec
