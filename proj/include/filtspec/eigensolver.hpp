#pragma once

#include <cstddef>
#include <vector>

#include "filtspec/matrix.hpp"

namespace filtspec {

/// Symmetric tridiagonal matrix: `diagonal` has m entries, `off_diagonal` m-1.
struct TridiagonalForm {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t dim() const { return diagonal.size(); }
};

/// Symmetric band matrix with half-bandwidth `bandwidth`, stored by lower
/// diagonals: a(j + d, j) at lower[d * dim + j] for d = 0..bandwidth.
class SymmetricBand {
 public:
  SymmetricBand(std::size_t dim, int bandwidth);

  std::size_t dim() const { return dim_; }
  int bandwidth() const { return bandwidth_; }
  /// Zero outside the band.
  double at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);
  DenseMatrix to_dense() const;

 private:
  std::size_t dim_;
  int bandwidth_;
  std::vector<double> lower_;
};

/// Eigenvalues sorted ascending, repeated according to multiplicity.
struct EigenvalueList {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

/// Orthogonal reduction of a symmetric matrix to tridiagonal form by
/// Householder reflections. Throws SymmetryError when `m` is not symmetric to
/// 1e-12 relative to its largest entry.
TridiagonalForm householder_tridiagonalize(const DenseMatrix& m);

/// Orthogonal reduction of a band matrix to tridiagonal form by Givens
/// rotations, lowering the bandwidth one diagonal at a time and chasing each
/// bulge off the end. O(bandwidth * dim^2) work in O(bandwidth * dim) memory.
TridiagonalForm band_tridiagonalize(const SymmetricBand& b);

/// All eigenvalues by implicit QL with Wilkinson shifts.
///
/// Off-diagonal e_i is treated as zero once |e_i| <= tol (|d_i| + |d_{i+1}|).
/// Throws ConvergenceError if one eigenvalue needs more than 50 sweeps.
EigenvalueList tridiagonal_eigenvalues(const TridiagonalForm& t, double tol = 1e-12);

/// Eigenvalues of a dense symmetric matrix. Decoupled diagonal blocks (found
/// from the sparsity pattern) are solved independently.
EigenvalueList symmetric_eigenvalues(const DenseMatrix& m);

/// Number of eigenvalues in (a, b] from the inertia of T - x I = L D L^T.
int sturm_count(const TridiagonalForm& t, double a, double b);

/// Number of eigenvalues <= x.
int sturm_count_below(const TridiagonalForm& t, double x);

/// Sum of singular values, i.e. the sum of sqrt(eigenvalues of m^T m).
double trace_norm(const DenseMatrix& m);

/// Singular values in descending order by one-sided Jacobi rotations
/// (accurate for the small singular values that decide numerical rank).
std::vector<double> singular_values(const DenseMatrix& m);

}  // namespace filtspec
