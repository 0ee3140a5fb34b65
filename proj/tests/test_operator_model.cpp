#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "filtspec/errors.hpp"
#include "filtspec/operator_model.hpp"
#include "oracles.hpp"

using namespace filtspec;

TEST_CASE("Laurent operator entries follow the coefficients") {
  const auto a = laurent_operator(LaurentCoefficients::symmetric({0.5, 1.0, -0.25}));
  CHECK(a.is_banded());
  CHECK(a.band_half_width() == 2);
  CHECK(a.entry(-7, -7) == 0.5);
  CHECK(a.entry(3, 4) == 1.0);
  CHECK(a.entry(4, 3) == 1.0);
  CHECK(a.entry(10, 8) == -0.25);
  CHECK(a.entry(10, 7) == 0.0);
  CHECK(a.norm_upper_bound() == doctest::Approx(0.5 + 2.0 + 0.5));
  const auto col = a.column(0);
  CHECK(col.size() == 5);
}

TEST_CASE("Toeplitz operator lives on 1, 2, 3, ...") {
  const auto t = toeplitz_operator(LaurentCoefficients::symmetric({0.0, 1.0}));
  CHECK(t.index_mode() == IndexMode::Unilateral);
  CHECK(t.entry(1, 2) == 1.0);
  CHECK_THROWS_AS(t.entry(0, 1), DomainError);
  for (const auto& [i, v] : t.column(1)) CHECK(i >= 1);
}

TEST_CASE("asymmetric coefficients are rejected") {
  CHECK_THROWS_AS(laurent_operator(LaurentCoefficients({1.0, 0.0, 2.0})), SymmetryError);
  CHECK_THROWS_AS(LaurentCoefficients({1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(symbol_from_coefficients(LaurentCoefficients({1.0, 0.0, 2.0})), SymmetryError);
}

TEST_CASE("Fourier coefficients of 2cos x") {
  const auto c = fourier_coefficients({[](double x) { return 2.0 * std::cos(x); }, 256}, 3);
  CHECK(c.band() == 3);
  CHECK(c[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[-1] == doctest::Approx(1.0));
  CHECK(std::abs(c[2]) < 1e-14);
  CHECK(c[9] == 0.0);
}

TEST_CASE("square wave coefficients are (a-b) sin(pi k/2)/(pi k)") {
  const double a = 1.0;
  const double b = -0.5;
  const SymbolSpec sym{[&](double x) { return std::abs(x) < std::numbers::pi / 2 ? a : b; }, 4096};
  const auto c = fourier_coefficients(sym, 8);
  CHECK(c[0] == doctest::Approx((a + b) / 2).epsilon(1e-3));
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(c[k] - (a - b) * std::sin(std::numbers::pi * k / 2) / (std::numbers::pi * k)) < 1e-3);
}

TEST_CASE("Fourier coefficient preconditions") {
  const SymbolSpec sym{[](double x) { return std::cos(x); }, 8};
  CHECK_THROWS_AS(fourier_coefficients(sym, -1), DomainError);
  CHECK_THROWS_AS(fourier_coefficients(sym, 4), DomainError);
  CHECK_NOTHROW(fourier_coefficients(sym, 3));
  CHECK_THROWS_AS(fourier_coefficients({[](double x) { return std::sin(x); }, 64}, 2), UnsupportedError);
}

TEST_CASE("symbol from coefficients and its range") {
  const auto sym = symbol_from_coefficients(LaurentCoefficients::symmetric({1.0, 0.5}), 1024);
  CHECK(sym.f(0.0) == doctest::Approx(2.0));
  CHECK(sym.f(std::numbers::pi) == doctest::Approx(0.0));
  const auto [lo, hi] = symbol_range(sym);
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(2.0));
}

TEST_CASE("almost-Mathieu operator") {
  const double theta = 0.7;
  const auto h = almost_mathieu_operator([](double x) { return 2.0 * x; }, theta);
  CHECK(h.index_mode() == IndexMode::Bilateral);
  CHECK(h.band_half_width() == 1);
  CHECK(h.entry(5, 5) == doctest::Approx(2.0 * std::sin(5 * theta)));
  CHECK(h.entry(-3, -3) == doctest::Approx(2.0 * std::sin(-3 * theta)));
  CHECK(h.entry(5, 6) == 1.0);
  CHECK(h.entry(6, 5) == 1.0);
  CHECK(h.diag_sup(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(h.diag_sup(1) == 1.0);
  CHECK(h.norm_upper_bound() == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("discretized Hamiltonian reflects the potential and doubles sigma squared") {
  const double sigma = 0.6;
  const auto v = [](double x) { return x + 0.25; };
  const auto h = discretized_hamiltonian(v, sigma);
  const auto ref = almost_mathieu_operator([&](double x) { return v(-x); }, 2 * sigma * sigma);
  for (Index i = -5; i <= 5; ++i) CHECK(h.entry(i, i) == doctest::Approx(ref.entry(i, i)));
}

TEST_CASE("diagonal parts split an operator") {
  const auto a = laurent_operator(LaurentCoefficients::symmetric({0.5, 1.0, -0.25}));
  for (Index i = -3; i <= 3; ++i) {
    for (Index j = -3; j <= 3; ++j) {
      double s = 0.0;
      for (int k = -2; k <= 2; ++k) s += a.diagonal_part(k).entry(i, j);
      CHECK(s == a.entry(i, j));
    }
  }
  CHECK(a.diagonal_part(2).entry(5, 3) == -0.25);
  CHECK(a.diagonal_part(2).entry(3, 5) == 0.0);
  CHECK(a.diagonal_part(-2).entry(3, 5) == -0.25);
  CHECK_THROWS_AS(a.diagonal_part(3), DomainError);
}

TEST_CASE("the shift is banded but not symmetric") {
  const auto s = OperatorSpec::banded(
      IndexMode::Unilateral, 1, [](int k, Index) { return k == 1 ? 1.0 : 0.0; }, {0.0, 0.0, 1.0});
  CHECK(s.entry(2, 1) == 1.0);
  CHECK(s.entry(1, 2) == 0.0);
}

TEST_CASE("involution agrees with direct enumeration") {
  const Index limit = 600;
  const Involution pi(limit);
  const auto ref = oracle::enumerate_involution(limit);
  for (Index k = 1; k <= limit; ++k) {
    REQUIRE(ref.count(k) == 1);
    CHECK(pi(k) == ref.at(k));
  }
}

TEST_CASE("involution squares to the identity and swaps parity") {
  const Involution pi(1 << 20);
  for (Index k = 1; k <= 20000; ++k) {
    CHECK(pi(pi(k)) == k);
    CHECK((pi(k) % 2) != (k % 2));
  }
  CHECK(pi(4) == 17);
  CHECK(pi(17) == 4);
  CHECK(pi(8) == 65);
  CHECK(pi(2) == 1);
  CHECK(pi(6) == 3);
  CHECK_THROWS_AS(pi(0), DomainError);
  CHECK_THROWS_AS(Involution(8), DomainError);
}

TEST_CASE("permutation operator") {
  const auto a = permutation_operator(appendix_permutation(1024));
  CHECK_FALSE(a.is_banded());
  CHECK_THROWS_AS(a.band_half_width(), UnsupportedError);
  CHECK_THROWS_AS(a.norm_upper_bound(), UnsupportedError);
  CHECK(a.entry(17, 4) == 1.0);
  CHECK(a.entry(4, 17) == 1.0);
  CHECK(a.entry(4, 4) == 0.0);
  const auto col = a.column(4);
  REQUIRE(col.size() == 1);
  CHECK(col[0].first == 17);
}
