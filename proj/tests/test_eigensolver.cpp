#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "filtspec/eigensolver.hpp"
#include "filtspec/errors.hpp"
#include "filtspec/matrix.hpp"
#include "oracles.hpp"

using namespace filtspec;

namespace {

TridiagonalForm free_jacobi(std::size_t m) {
  TridiagonalForm t;
  t.diagonal.assign(m, 0.0);
  t.off_diagonal.assign(m - 1, 1.0);
  return t;
}

TridiagonalForm random_tridiagonal(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TridiagonalForm t;
  for (std::size_t i = 0; i < m; ++i) t.diagonal.push_back(u(rng));
  for (std::size_t i = 0; i + 1 < m; ++i) t.off_diagonal.push_back(u(rng));
  return t;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  DenseMatrix a(2, 3);
  a(0, 0) = 1;
  a(0, 2) = 2;
  a(1, 1) = 3;
  const auto p = a * a.transpose();
  CHECK(p(0, 0) == 5);
  CHECK(p(1, 1) == 9);
  CHECK(p(0, 1) == 0);
  CHECK(p.trace() == 14);
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK(a.max_abs() == 3);
  CHECK_THROWS_AS(a * a, DomainError);
  CHECK_THROWS_AS(a - p, DomainError);
  CHECK(DenseMatrix::identity(3).trace() == 3);
}

TEST_CASE("free Jacobi spectrum is 2cos(k pi/(m+1))") {
  for (std::size_t m : {1u, 2u, 7u, 100u, 513u}) {
    const auto ev = tridiagonal_eigenvalues(free_jacobi(m));
    CHECK(max_abs_diff(ev.values, oracle::free_jacobi_eigenvalues(m)) <= 1e-10);
  }
}

TEST_CASE("empty and 1x1 tridiagonals") {
  CHECK(tridiagonal_eigenvalues(TridiagonalForm{}).dim() == 0);
  TridiagonalForm one{{4.5}, {}};
  CHECK(tridiagonal_eigenvalues(one).values == std::vector<double>{4.5});
}

TEST_CASE("constant diagonal gives cI") {
  TridiagonalForm t{std::vector<double>(10, 3.0), std::vector<double>(9, 0.0)};
  for (double x : tridiagonal_eigenvalues(t).values) CHECK(x == 3.0);
}

TEST_CASE("malformed tridiagonal is rejected") {
  TridiagonalForm t{{1, 2, 3}, {1}};
  CHECK_THROWS_AS(tridiagonal_eigenvalues(t), DomainError);
}

TEST_CASE("dense eigenvalues agree with classical Jacobi") {
  std::mt19937_64 rng(11);
  for (std::size_t m : {2u, 3u, 5u, 17u, 40u}) {
    const auto a = oracle::random_symmetric(rng, m);
    const auto ours = symmetric_eigenvalues(a).values;
    const auto ref = oracle::jacobi_eigenvalues(oracle::to_grid(a));
    CHECK(max_abs_diff(ours, ref) <= 1e-10);
  }
}

TEST_CASE("Householder preserves trace and Frobenius norm") {
  std::mt19937_64 rng(5);
  const auto a = oracle::random_symmetric(rng, 30);
  const auto t = householder_tridiagonalize(a);
  const double tr = std::accumulate(t.diagonal.begin(), t.diagonal.end(), 0.0);
  double fro = 0.0;
  for (double d : t.diagonal) fro += d * d;
  for (double e : t.off_diagonal) fro += 2 * e * e;
  CHECK(tr == doctest::Approx(a.trace()).epsilon(1e-12));
  CHECK(std::sqrt(fro) == doctest::Approx(a.frobenius_norm()).epsilon(1e-12));
}

TEST_CASE("asymmetric input raises SymmetryError") {
  DenseMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(householder_tridiagonalize(a), SymmetryError);
  CHECK_THROWS_AS(symmetric_eigenvalues(a), SymmetryError);
  CHECK_THROWS_AS(symmetric_eigenvalues(DenseMatrix(2, 3)), SymmetryError);
}

TEST_CASE("block-diagonal matrices are split and solved") {
  // Permutation matrix of (1 3)(2)(4 5): eigenvalues -1, -1, 1, 1, 1.
  DenseMatrix p(5, 5);
  p(0, 2) = p(2, 0) = 1;
  p(1, 1) = 1;
  p(3, 4) = p(4, 3) = 1;
  CHECK(max_abs_diff(symmetric_eigenvalues(p).values, {-1, -1, 1, 1, 1}) <= 1e-15);
}

TEST_CASE("band reduction matches the dense route") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int b : {0, 1, 2, 3, 5}) {
    for (std::size_t n : {1u, 4u, 9u, 60u}) {
      SymmetricBand band(n, b);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j; i < std::min(n, j + b + 1); ++i) band.set(i, j, u(rng));
      const auto ours = tridiagonal_eigenvalues(band_tridiagonalize(band)).values;
      const auto ref = oracle::jacobi_eigenvalues(oracle::to_grid(band.to_dense()));
      CHECK(max_abs_diff(ours, ref) <= 1e-10);
    }
  }
  SymmetricBand band(3, 1);
  CHECK_THROWS_AS(band.set(2, 0, 1.0), DomainError);
  CHECK(band.at(2, 0) == 0.0);
}

TEST_CASE("Sturm counts agree with a scan of the spectrum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_tridiagonal(rng, 1 + trial * 3);
    const auto ev = tridiagonal_eigenvalues(t).values;
    for (int q = 0; q < 10; ++q) {
      double a = u(rng);
      double b = u(rng);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      CHECK(sturm_count(t, a, b) == static_cast<int>(oracle::count_open(ev, a, b)));
    }
  }
}

TEST_CASE("Sturm count at an eigenvalue counts it as below") {
  const auto t = free_jacobi(3);  // eigenvalues -sqrt2, 0, sqrt2
  CHECK(sturm_count_below(t, 0.0) == 2);
  CHECK(sturm_count_below(t, -3.0) == 0);
  CHECK(sturm_count_below(t, 3.0) == 3);
  CHECK_THROWS_AS(sturm_count(t, 1.0, 1.0), DomainError);
}

TEST_CASE("trace norm and singular values") {
  DenseMatrix a(2, 2);
  a(0, 0) = 3;
  a(1, 1) = -4;
  CHECK(trace_norm(a) == doctest::Approx(7.0));
  DenseMatrix r(3, 2);
  r(0, 0) = 1;
  r(1, 0) = 1;  // rank one, singular value sqrt 2
  const auto sv = singular_values(r);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(sv[1] == doctest::Approx(0.0));
  CHECK(trace_norm(r) == doctest::Approx(std::sqrt(2.0)));

  std::mt19937_64 rng(8);
  const auto s = oracle::random_symmetric(rng, 12);
  double sum_abs = 0.0;
  for (double x : oracle::jacobi_eigenvalues(oracle::to_grid(s))) sum_abs += std::abs(x);
  CHECK(trace_norm(s) == doctest::Approx(sum_abs).epsilon(1e-9));
}
