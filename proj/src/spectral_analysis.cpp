#include "filtspec/spectral_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "filtspec/errors.hpp"

namespace filtspec {

EigLadder build_ladder(const OperatorSpec& spec, const Filtration& filt, std::span<const int> schedule,
                       int workers) {
  if (schedule.empty()) throw DomainError("ladder schedule is empty");
  if (workers < 1) throw DomainError("worker count must be at least 1");
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    if (schedule[s] < 1) throw DomainError("ladder steps must be at least 1");
    if (s > 0 && schedule[s] <= schedule[s - 1]) throw DomainError("ladder schedule must be strictly increasing");
  }

  EigLadder ladder;
  ladder.steps.resize(schedule.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t s = next++; s < schedule.size(); s = next++) {
      try {
        const auto a = compress(spec, filt, schedule[s]);
        ladder.steps[s] = LadderStep{schedule[s], a.dim, a.eigenvalues()};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), schedule.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return ladder;
}

std::size_t counting(const EigenvalueList& eigs, OpenInterval u) {
  if (!(u.lo < u.hi)) return 0;
  const auto& v = eigs.values;
  const auto first = std::upper_bound(v.begin(), v.end(), u.lo);
  const auto last = std::lower_bound(v.begin(), v.end(), u.hi);
  return last > first ? static_cast<std::size_t>(last - first) : 0;
}

double density(const EigenvalueList& eigs, OpenInterval u, std::size_t dim) {
  if (dim == 0) throw DomainError("density needs a positive dimension");
  return static_cast<double>(counting(eigs, u)) / static_cast<double>(dim);
}

double integrate(const EmpiricalMeasure& mu, const RealFn& u) {
  double s = 0.0;
  for (double x : mu.eigs.values) s += u(x);
  return mu.weight() * s;
}

double szego_reference(const SymbolSpec& sym, const RealFn& u) {
  if (!sym.f) throw DomainError("symbol function is empty");
  if (sym.quadrature_points < 2) throw DomainError("quadrature needs at least 2 points");
  const int n = sym.quadrature_points;
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += u(sym.f(-std::numbers::pi + 2.0 * std::numbers::pi * j / n));
  return s / n;
}

std::vector<double> weak_star_gap(const EigLadder& ladder, double ref, const RealFn& u) {
  std::vector<double> gaps;
  gaps.reserve(ladder.steps.size());
  for (const auto& step : ladder.steps) gaps.push_back(std::abs(integrate(EmpiricalMeasure{step.eigs}, u) - ref));
  return gaps;
}

double spectral_diameter(const EigLadder& ladder) {
  if (ladder.steps.empty() || ladder.steps.back().eigs.values.empty()) throw DomainError("ladder is empty");
  const auto& v = ladder.steps.back().eigs.values;
  return v.back() - v.front();
}

namespace {

std::size_t tail_begin(const EigLadder& ladder) { return ladder.steps.size() / 2; }

double distance_to_spectrum(const EigenvalueList& eigs, double lambda) {
  const auto& v = eigs.values;
  if (v.empty()) return std::numeric_limits<double>::infinity();
  const auto it = std::lower_bound(v.begin(), v.end(), lambda);
  double d = std::numeric_limits<double>::infinity();
  if (it != v.end()) d = *it - lambda;
  if (it != v.begin()) d = std::min(d, lambda - *std::prev(it));
  return d;
}

}  // namespace

double default_membership_tol(const EigLadder& ladder) {
  const double diam = spectral_diameter(ladder);
  return 4.0 * diam / static_cast<double>(ladder.steps[tail_begin(ladder)].dim);
}

double default_window_radius(const EigLadder& ladder) { return 0.05 * std::max(spectral_diameter(ladder), 1.0); }

bool lambda_membership(const EigLadder& ladder, double lambda, std::optional<double> tol) {
  if (ladder.steps.empty()) throw DomainError("ladder is empty");
  const double t = tol.value_or(default_membership_tol(ladder));
  for (std::size_t s = tail_begin(ladder); s < ladder.steps.size(); ++s)
    if (distance_to_spectrum(ladder.steps[s].eigs, lambda) > t) return false;
  return true;
}

const char* to_string(PointLabel label) {
  switch (label) {
    case PointLabel::Essential:
      return "essential";
    case PointLabel::Transient:
      return "transient";
    case PointLabel::Indeterminate:
      return "indeterminate";
    case PointLabel::NotInLambda:
      return "not-in-lambda";
  }
  return "unknown";
}

namespace {

PointLabel label_point(const PointEvidence& ev, const std::vector<std::size_t>& dims, const ClassifyThresholds& caps) {
  const std::size_t steps = ev.counts.size();
  const std::size_t tail = steps - caps.tail_steps;
  const auto& c = ev.counts;

  bool tail_empty = true;
  for (std::size_t s = tail; s < steps; ++s) tail_empty = tail_empty && c[s] == 0;
  if (tail_empty) return PointLabel::NotInLambda;

  std::size_t cap = 0;
  for (std::size_t s = 0; s < steps / 2; ++s) cap = std::max(cap, c[s]);

  bool growing = c.back() > cap && ev.densities.back() >= caps.density_floor;
  for (std::size_t s = tail; s + 1 < steps && growing; ++s) {
    const double doublings = std::log2(static_cast<double>(dims[s + 1]) / static_cast<double>(dims[s]));
    const double required = std::pow(caps.growth_min, doublings) * static_cast<double>(c[s]);
    growing = c[s + 1] > c[s] && static_cast<double>(c[s + 1]) >= required;
  }
  if (growing) return PointLabel::Essential;

  const bool bounded = std::all_of(c.begin(), c.end(), [&](std::size_t x) { return x <= cap; });
  const bool seen = std::any_of(c.begin(), c.end(), [](std::size_t x) { return x > 0; });
  if (bounded && seen) return PointLabel::Transient;
  return PointLabel::Indeterminate;
}

}  // namespace

ClassificationReport classify(const EigLadder& ladder, std::span<const double> grid, double eps,
                              const ClassifyThresholds& caps) {
  const auto& steps = ladder.steps;
  if (steps.size() < 4) throw DiagnosticError("classification needs at least 4 ladder steps");
  // Bilateral dimensions are 2n+1, so 8x growth in n is accepted as well.
  if (steps.back().dim < 8 * steps.front().dim && steps.back().n < 8 * steps.front().n)
    throw DiagnosticError("classification needs at least 8x dimension growth across the ladder");
  if (caps.tail_steps < 2 || caps.tail_steps > steps.size())
    throw DiagnosticError("tail length must be between 2 and the ladder length");
  if (!(eps > 0.0)) throw DomainError("window radius must be positive");

  ClassificationReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.epsilon = eps;
  for (const auto& st : steps) {
    report.ns.push_back(st.n);
    report.dims.push_back(st.dim);
  }
  report.labels.reserve(grid.size());
  report.evidence.reserve(grid.size());
  for (double lambda : grid) {
    PointEvidence ev;
    const OpenInterval u{lambda - eps, lambda + eps};
    for (const auto& st : steps) {
      ev.counts.push_back(counting(st.eigs, u));
      ev.densities.push_back(density(st.eigs, u, st.dim));
    }
    report.labels.push_back(label_point(ev, report.dims, caps));
    report.evidence.push_back(std::move(ev));
  }
  return report;
}

SpectrumEstimate spectrum_estimate(const EigLadder& ladder, double h, double eps, std::optional<double> radius,
                                   const ClassifyThresholds& caps) {
  if (!(h > 0.0)) throw DomainError("grid pitch must be positive");
  if (!(eps > 0.0)) throw DomainError("window radius must be positive");
  double r = 0.0;
  if (radius) {
    r = *radius;
  } else {
    for (const auto& st : ladder.steps)
      if (!st.eigs.values.empty())
        r = std::max({r, std::abs(st.eigs.values.front()), std::abs(st.eigs.values.back())});
    r += eps;
  }
  if (!(r >= 0.0)) throw DomainError("radius must be nonnegative");

  SpectrumEstimate est;
  est.h = h;
  est.epsilon = eps;
  est.radius = r;
  const auto points = static_cast<std::size_t>(std::floor(2.0 * r / h + 1e-9)) + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = -r + static_cast<double>(i) * h;
  est.report = classify(ladder, grid, eps, caps);

  for (std::size_t i = 0; i < points;) {
    if (est.report.labels[i] != PointLabel::Essential) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < points && est.report.labels[j + 1] == PointLabel::Essential) ++j;
    est.essential_runs.push_back({grid[i], grid[j]});
    i = j + 1;
  }
  // A left edge a is detected first at the grid point x_i with x_{i-1} + eps <= a < x_i + eps;
  // take the middle of that bracket, and symmetrically on the right.
  const double shrink = std::max(eps - 0.5 * h, 0.0);
  for (const auto& run : est.essential_runs) {
    Interval core{run.lo + shrink, run.hi - shrink};
    if (core.lo > core.hi) core.lo = core.hi = 0.5 * (run.lo + run.hi);
    core.lo = std::max(core.lo, -r);
    core.hi = std::min(core.hi, r);
    if (!est.intervals.empty() && core.lo <= est.intervals.back().hi)
      est.intervals.back().hi = std::max(est.intervals.back().hi, core.hi);
    else
      est.intervals.push_back(core);
  }
  return est;
}

ContainmentReport containment_check(const EigLadder& ladder, std::span<const Interval> known, double eps,
                                    std::optional<double> tol, int samples_per_interval,
                                    const ClassifyThresholds& caps) {
  if (samples_per_interval < 1) throw DomainError("need at least one sample per interval");
  ContainmentReport report;
  for (const auto& iv : known) {
    if (iv.lo > iv.hi) throw DomainError("known interval has lo > hi");
    if (iv.lo == iv.hi || samples_per_interval == 1) {
      report.samples.push_back(iv.lo == iv.hi ? iv.lo : 0.5 * (iv.lo + iv.hi));
      continue;
    }
    for (int s = 0; s < samples_per_interval; ++s)
      report.samples.push_back(iv.lo + (iv.hi - iv.lo) * s / (samples_per_interval - 1));
  }
  const auto labels = classify(ladder, report.samples, eps, caps);
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const double lambda = report.samples[i];
    if (!lambda_membership(ladder, lambda, tol))
      report.violations.push_back({lambda, "not a limit of eigenvalues"});
    if (labels.labels[i] != PointLabel::Essential)
      report.violations.push_back({lambda, std::string("labeled ") + to_string(labels.labels[i])});
  }
  return report;
}

}  // namespace filtspec
