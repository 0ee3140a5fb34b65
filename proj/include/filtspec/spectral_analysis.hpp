#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "filtspec/compression.hpp"
#include "filtspec/eigensolver.hpp"
#include "filtspec/operator_model.hpp"

namespace filtspec {

/// (lo, hi), endpoints excluded.
struct OpenInterval {
  double lo;
  double hi;
};

/// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
  double lo;
  double hi;
};

/// Uniform probability measure on the eigenvalues of one compression.
struct EmpiricalMeasure {
  EigenvalueList eigs;

  double weight() const { return eigs.dim() == 0 ? 0.0 : 1.0 / static_cast<double>(eigs.dim()); }
};

struct LadderStep {
  int n = 0;
  std::size_t dim = 0;
  EigenvalueList eigs;
};

/// Eigenvalues of A_n for an increasing schedule of n.
struct EigLadder {
  std::vector<LadderStep> steps;
};

/// Compresses and solves each step of `schedule` (strictly increasing, n >= 1).
/// Steps are independent and run on up to `workers` threads; the result does
/// not depend on the worker count.
EigLadder build_ladder(const OperatorSpec& spec, const Filtration& filt, std::span<const int> schedule,
                       int workers = 1);

/// N_n(U): eigenvalues inside U, with multiplicity.
std::size_t counting(const EigenvalueList& eigs, OpenInterval u);

/// N_n(U) / dim.
double density(const EigenvalueList& eigs, OpenInterval u, std::size_t dim);

double integrate(const EmpiricalMeasure& mu, const RealFn& u);

/// (1/2pi) int u(f(x)) dx by the trapezoid rule on the symbol's grid.
double szego_reference(const SymbolSpec& sym, const RealFn& u);

/// |integrate(mu_n, u) - ref| for each ladder step.
std::vector<double> weak_star_gap(const EigLadder& ladder, double ref, const RealFn& u);

/// max - min eigenvalue of the largest step.
double spectral_diameter(const EigLadder& ladder);

/// 4 * diameter / dim of the smallest step in the tail half.
double default_membership_tol(const EigLadder& ladder);

/// 0.05 * diameter, with the diameter floored at 1 so that point spectra get
/// a usable window.
double default_window_radius(const EigLadder& ladder);

/// True iff dist(lambda, sigma(A_n)) <= tol on every step of the tail half of
/// the ladder: a finite stand-in for "lambda is a limit of eigenvalues".
bool lambda_membership(const EigLadder& ladder, double lambda, std::optional<double> tol = std::nullopt);

enum class PointLabel { Essential, Transient, Indeterminate, NotInLambda };

const char* to_string(PointLabel label);

struct ClassifyThresholds {
  /// Trailing steps inspected for growth and emptiness.
  std::size_t tail_steps = 3;
  /// Required count growth factor per doubling of the dimension in the tail.
  double growth_min = 1.5;
  /// Essential points also need final density at least this large.
  double density_floor = 1e-3;
};

struct PointEvidence {
  std::vector<std::size_t> counts;
  std::vector<double> densities;
};

/// Labels for grid points, with the window counts behind each label.
///
/// With U = (lambda - eps, lambda + eps) and counts c_s over the ladder:
///   not-in-Lambda   c_s == 0 on every tail step;
///   essential       c_s strictly increasing over the tail, growing by at
///                   least growth_min per doubling of dim, final count above
///                   the first-half maximum, final density >= density_floor;
///   transient       every count at most the first-half maximum, some count
///                   nonzero;
///   indeterminate   anything else.
/// A transient label never asserts that the point belongs to the spectrum.
struct ClassificationReport {
  std::vector<double> grid;
  double epsilon = 0.0;
  std::vector<int> ns;
  std::vector<std::size_t> dims;
  std::vector<PointLabel> labels;
  std::vector<PointEvidence> evidence;
};

/// Throws DiagnosticError unless the ladder has at least 4 steps and at least
/// 8x dimension growth, or when the tail is longer than the ladder.
ClassificationReport classify(const EigLadder& ladder, std::span<const double> grid, double eps,
                              const ClassifyThresholds& caps = {});

struct SpectrumEstimate {
  /// Estimate of the essential points, disjoint and sorted.
  std::vector<Interval> intervals;
  /// Maximal runs of essential grid points before the eps-erosion.
  std::vector<Interval> essential_runs;
  double h = 0.0;
  double epsilon = 0.0;
  double radius = 0.0;
  ClassificationReport report;
};

/// Sweeps [-R, R] with pitch h, classifies every grid point and merges the
/// essential ones into maximal runs. A run [x, y] is detected wherever the
/// window (lambda - eps, lambda + eps) meets the essential set; an edge is
/// thus bracketed to within one pitch, and each run is shrunk to
/// [x + eps - h/2, y - eps + h/2] (collapsed to its midpoint if empty).
/// R defaults to max |lambda| over the ladder plus eps.
SpectrumEstimate spectrum_estimate(const EigLadder& ladder, double h, double eps,
                                   std::optional<double> radius = std::nullopt,
                                   const ClassifyThresholds& caps = {});

struct ContainmentViolation {
  double lambda;
  std::string reason;
};

struct ContainmentReport {
  std::vector<double> samples;
  std::vector<ContainmentViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks that sampled points of a known spectrum are limits of eigenvalues
/// and are labeled essential.
ContainmentReport containment_check(const EigLadder& ladder, std::span<const Interval> known, double eps,
                                    std::optional<double> tol = std::nullopt, int samples_per_interval = 21,
                                    const ClassifyThresholds& caps = {});

}  // namespace filtspec
