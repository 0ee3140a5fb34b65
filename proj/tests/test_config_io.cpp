#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "filtspec/config.hpp"
#include "filtspec/errors.hpp"
#include "filtspec/io.hpp"

using namespace filtspec;

TEST_CASE("toeplitz config with coefficients") {
  const auto c = parse_operator_config_string("# free Jacobi\nkind = toeplitz\ncoefficients = 0, 1  # a0, a1\n");
  CHECK(c.kind == "toeplitz");
  CHECK(c.spec.index_mode() == IndexMode::Unilateral);
  CHECK(c.filtration().mode() == IndexMode::Unilateral);
  CHECK(c.spec.entry(3, 4) == 1.0);
  REQUIRE(c.symbol.has_value());
  CHECK(c.symbol->f(0.0) == doctest::Approx(2.0));
  REQUIRE(c.entries.size() == 2);
  CHECK(c.entries[1].second == "0, 1");
}

TEST_CASE("laurent config from a named symbol") {
  const auto c = parse_operator_config_string("kind = laurent\nsymbol = square:1,-1\nband = 8\n");
  CHECK(c.spec.band_half_width() == 8);
  CHECK(c.spec.entry(0, 0) == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(c.spec.entry(1, 0) == doctest::Approx(2.0 / std::acos(-1.0)).epsilon(1e-3));
  CHECK(c.spec.entry(2, 0) == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("almost-Mathieu and Hamiltonian configs") {
  const auto am = parse_operator_config_string("kind = almost_mathieu\ntheta = 0.5\npotential = linear:1\n");
  CHECK(am.spec.entry(2, 2) == doctest::Approx(2.0 * std::sin(1.0)));
  CHECK_FALSE(am.symbol.has_value());
  const auto h = parse_operator_config_string("kind = hamiltonian\nsigma = 0.5\npotential = step:1,-1\n");
  // theta = 2 sigma^2 = 0.5 and d_n = v(-sin(n/2)).
  CHECK(h.spec.entry(1, 1) == doctest::Approx(1.0));
  CHECK(h.spec.entry(-1, -1) == doctest::Approx(-1.0));
}

TEST_CASE("permutation config") {
  const auto c = parse_operator_config_string("kind = permutation\nlimit = 1024\n");
  REQUIRE(c.permutation.has_value());
  CHECK(c.permutation->limit() == 1024);
  CHECK(c.spec.entry(17, 4) == 1.0);
  CHECK(parse_operator_config_string("kind = permutation\n").permutation->limit() == 65536);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_operator_config_string(""), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = toeplitz\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = toeplitz\ncoefficients = 0,1\nsymbol = cosine:1\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = toeplitz\ncoefficients = 0,x\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = toeplitz\ncoefficients = 0,1\ncoefficients = 0,1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = toeplitz\ncoefficients = 0,1\ntheta = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = almost_mathieu\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = almost_mathieu\ntheta = 1\npotential = quartic:2\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind = permutation\nlimit = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_operator_config_string("kind toeplitz\n"), ConfigError);
  CHECK_THROWS_AS(load_operator_config("/nonexistent/op.cfg"), ConfigError);
}

TEST_CASE("named potentials and symbols") {
  CHECK(potential_from_name("zero")(0.3) == 0.0);
  CHECK(potential_from_name("linear:1.5")(0.5) == doctest::Approx(1.5));
  CHECK(potential_from_name("cosine:1")(0.0) == doctest::Approx(2.0));
  CHECK(potential_from_name("step:2,3")(-0.1) == 2.0);
  CHECK(potential_from_name("step:2,3")(0.0) == 3.0);
  CHECK_THROWS_AS(potential_from_name("linear"), ConfigError);
  CHECK(symbol_from_name("constant:4").f(1.0) == 4.0);
  CHECK(symbol_from_name("cosine:2").f(0.0) == 2.0);
  CHECK(symbol_from_name("square:1,0", 128).quadrature_points == 128);
}

TEST_CASE("numbers round-trip") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, -1e-300}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("compressed matrix CSV") {
  CompressedMatrix m;
  m.n = 1;
  m.dim = 2;
  m.storage = TridiagonalForm{{1.0, 2.0}, {0.5}};
  std::ostringstream out;
  write_compressed_csv(out, m);
  CHECK(out.str() == "index,diagonal,off_diagonal\n0,1,0.5\n1,2,\n");

  SymmetricBand b(2, 1);
  b.set(0, 0, 1.0);
  b.set(1, 0, 0.25);
  m.storage = b;
  std::ostringstream band;
  write_compressed_csv(band, m);
  CHECK(band.str() == "index,lower_0,lower_1\n0,1,0.25\n1,0,\n");

  DenseMatrix d(2, 2);
  d(0, 1) = d(1, 0) = 3.0;
  m.storage = d;
  std::ostringstream dense;
  write_compressed_csv(dense, m);
  CHECK(dense.str() == "0,3\n3,0\n");
}

TEST_CASE("classification CSV and JSON") {
  ClassificationReport r;
  r.grid = {0.0, 1.5};
  r.epsilon = 0.1;
  r.ns = {4, 8};
  r.dims = {4, 8};
  r.labels = {PointLabel::Essential, PointLabel::NotInLambda};
  r.evidence = {{{1, 3}, {0.25, 0.375}}, {{0, 0}, {0.0, 0.0}}};
  std::ostringstream out;
  write_csv_header(out, {{"command", "classify"}});
  write_classification_csv(out, r);
  CHECK(out.str() ==
        "# command = classify\n"
        "lambda,label,count_n4,count_n8,density_n4,density_n8\n"
        "0,essential,1,3,0.25,0.375\n"
        "1.5,not-in-lambda,0,0,0,0\n");

  const auto j = to_json(r);
  CHECK(j["points"][0]["label"] == "essential");
  CHECK(j["points"][0]["counts"][1] == 3);
  CHECK(j["ns"][1] == 8);

  SpectrumEstimate est;
  est.intervals = {{-2.0, 2.0}};
  est.report = r;
  const auto je = to_json(est);
  CHECK(je["intervals"][0][1] == 2.0);
  CHECK(je["report"]["epsilon"] == 0.1);
}
