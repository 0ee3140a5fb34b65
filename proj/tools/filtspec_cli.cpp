#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "filtspec/compression.hpp"
#include "filtspec/config.hpp"
#include "filtspec/errors.hpp"
#include "filtspec/io.hpp"
#include "filtspec/spectral_analysis.hpp"

using namespace filtspec;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string op_path;
  std::vector<int> schedule{64, 128, 256, 512, 1024, 2048};
  std::optional<double> eps;
  std::optional<double> pitch;
  std::optional<double> tol;
  std::string out_path;
  std::string format = "csv";
  int workers = 1;

  std::vector<double> points;
  std::string theta_grid;
  int n = 64;
};

struct UsageError : Error {
  using Error::Error;
};

// Result of a subcommand: the text to write and the exit code.
struct Outcome {
  std::string text;
  int code = kExitOk;
};

ConfigEcho base_echo(const std::string& command, const RunConfig& rc, const OperatorConfig& op) {
  ConfigEcho echo{{"command", command}};
  for (const auto& [k, v] : op.entries) echo.emplace_back("op." + k, v);
  std::string sched;
  for (int n : rc.schedule) sched += (sched.empty() ? "" : ",") + std::to_string(n);
  echo.emplace_back("schedule", sched);
  return echo;
}

std::string emit(const RunConfig& rc, const ConfigEcho& echo, const std::string& csv_body, json body) {
  std::ostringstream out;
  if (rc.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = to_json(echo);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    out << j.dump(2) << '\n';
  } else {
    write_csv_header(out, echo);
    out << csv_body;
  }
  return out.str();
}

void validate(const RunConfig& rc) {
  if (rc.schedule.empty()) throw UsageError("--schedule is empty");
  for (std::size_t i = 0; i < rc.schedule.size(); ++i) {
    if (rc.schedule[i] < 1) throw UsageError("--schedule entries must be at least 1");
    if (i > 0 && rc.schedule[i] <= rc.schedule[i - 1]) throw UsageError("--schedule must be strictly increasing");
  }
  if (rc.workers < 1) throw UsageError("--workers must be at least 1");
  for (const auto& v : {rc.eps, rc.pitch, rc.tol})
    if (v && !(*v > 0.0)) throw UsageError("--eps, --grid-pitch and --tol must be positive");
}

struct TestFunction {
  const char* name;
  RealFn u;
};

const std::vector<TestFunction>& test_functions() {
  static const std::vector<TestFunction> fns{
      {"1", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"x^3", [](double x) { return x * x * x; }},
      {"|x|", [](double x) { return std::abs(x); }},
  };
  return fns;
}

Outcome cmd_szego(const RunConfig& rc, const OperatorConfig& op) {
  if (!op.symbol) throw UsageError("szego needs a laurent or toeplitz operator");
  const double tol = rc.tol.value_or(0.01);
  const auto ladder = build_ladder(op.spec, op.filtration(), rc.schedule, rc.workers);

  auto echo = base_echo("szego", rc, op);
  echo.emplace_back("tol", format_number(tol));

  std::ostringstream csv;
  csv << "n,dim,u,integral,reference,gap\n";
  json rows = json::array();
  bool ok = true;
  for (const auto& [name, u] : test_functions()) {
    const double ref = szego_reference(*op.symbol, u);
    const auto gaps = weak_star_gap(ladder, ref, u);
    for (std::size_t s = 0; s < ladder.steps.size(); ++s) {
      const auto& st = ladder.steps[s];
      const double integral = integrate(EmpiricalMeasure{st.eigs}, u);
      csv << st.n << ',' << st.dim << ',' << name << ',' << format_number(integral) << ',' << format_number(ref)
          << ',' << format_number(gaps[s]) << '\n';
      rows.push_back({{"n", st.n}, {"dim", st.dim}, {"u", name}, {"integral", integral}, {"reference", ref},
                      {"gap", gaps[s]}});
    }
    ok = ok && gaps.back() <= tol;
  }
  return {emit(rc, echo, csv.str(), json{{"rows", rows}, {"passed", ok}}), ok ? kExitOk : kExitViolated};
}

Outcome cmd_spectrum(const RunConfig& rc, const OperatorConfig& op) {
  const auto ladder = build_ladder(op.spec, op.filtration(), rc.schedule, rc.workers);
  const double eps = rc.eps.value_or(default_window_radius(ladder));
  const double h = rc.pitch.value_or(eps / 2.0);
  const auto est = spectrum_estimate(ladder, h, eps);

  auto echo = base_echo("spectrum", rc, op);
  echo.emplace_back("eps", format_number(eps));
  echo.emplace_back("grid_pitch", format_number(h));
  for (const auto& iv : est.intervals) echo.emplace_back("interval", format_number(iv.lo) + "," + format_number(iv.hi));

  std::ostringstream csv;
  write_classification_csv(csv, est.report);
  return {emit(rc, echo, csv.str(), json{{"spectrum", to_json(est)}})};
}

Outcome cmd_classify(const RunConfig& rc, const OperatorConfig& op) {
  if (rc.points.empty()) throw UsageError("classify needs --points");
  const auto ladder = build_ladder(op.spec, op.filtration(), rc.schedule, rc.workers);
  const double eps = rc.eps.value_or(default_window_radius(ladder));
  const auto report = classify(ladder, rc.points, eps);

  auto echo = base_echo("classify", rc, op);
  echo.emplace_back("eps", format_number(eps));
  std::ostringstream csv;
  write_classification_csv(csv, report);
  return {emit(rc, echo, csv.str(), json{{"report", to_json(report)}})};
}

std::vector<double> parse_theta_grid(const std::string& text) {
  double start = 0.0;
  double stop = 0.0;
  long steps = 0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> start >> c1 >> stop >> c2 >> steps) || c1 != ':' || c2 != ':' || !in.eof())
    throw UsageError("--theta-grid must be start:stop:steps");
  if (steps < 1) throw UsageError("--theta-grid is empty");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] = steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / (steps - 1);
  return grid;
}

Outcome cmd_butterfly(const RunConfig& rc, const OperatorConfig& op) {
  if (op.kind != "almost_mathieu" && op.kind != "hamiltonian")
    throw UsageError("butterfly needs an almost_mathieu or hamiltonian operator");
  if (rc.theta_grid.empty()) throw UsageError("butterfly needs --theta-grid");
  if (rc.n < 1) throw UsageError("--n must be at least 1");
  const auto grid = parse_theta_grid(rc.theta_grid);
  std::string potential = "zero";
  for (const auto& [k, v] : op.entries)
    if (k == "potential") potential = v;
  const RealFn base = potential_from_name(potential);
  RealFn v = base;
  if (op.kind == "hamiltonian") v = [base](double x) { return base(-x); };

  std::vector<EigenvalueList> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = compress(almost_mathieu_operator(v, grid[i]), Filtration::bilateral(), rc.n).eigenvalues();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(rc.workers), grid.size());
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  ConfigEcho echo{{"command", "butterfly"}};
  for (const auto& [k, val] : op.entries) echo.emplace_back("op." + k, val);
  echo.emplace_back("theta_grid", rc.theta_grid);
  echo.emplace_back("n", std::to_string(rc.n));

  std::ostringstream csv;
  const std::size_t dim = Filtration::bilateral().dim(rc.n);
  csv << "theta_index,theta";
  for (std::size_t k = 1; k <= dim; ++k) csv << ",lambda_" << k;
  csv << '\n';
  json jrows = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << i << ',' << format_number(grid[i]);
    for (double x : rows[i].values) csv << ',' << format_number(x);
    csv << '\n';
    jrows.push_back({{"theta_index", i}, {"theta", grid[i]}, {"eigenvalues", rows[i].values}});
  }
  return {emit(rc, echo, csv.str(), json{{"rows", jrows}})};
}

Outcome cmd_appendix(const RunConfig& rc, const OperatorConfig& op) {
  if (!op.permutation) throw UsageError("appendix needs a permutation operator");
  const Involution& perm = *op.permutation;
  if (rc.schedule.back() > perm.limit()) throw UsageError("--schedule exceeds the permutation limit");
  const double eps = rc.eps.value_or(0.5);
  const auto ladder = build_ladder(op.spec, op.filtration(), rc.schedule, rc.workers);

  auto echo = base_echo("appendix", rc, op);
  echo.emplace_back("eps", format_number(eps));

  std::ostringstream csv;
  csv << "n,dim,count,zero_columns,density,reference\n";
  json rows = json::array();
  bool ok = true;
  for (const auto& st : ladder.steps) {
    const auto count = counting(st.eigs, {-eps, eps});
    // Columns of A_n that vanish: basis vectors mapped outside H_n.
    std::size_t zero_columns = 0;
    for (Index k = 1; k <= st.n; ++k) zero_columns += perm(k) > st.n ? 1 : 0;
    const double dens = static_cast<double>(count) / static_cast<double>(st.dim);
    const double ref = 0.25 * (1.0 - 1.0 / std::sqrt(static_cast<double>(st.n)));
    ok = ok && dens >= ref;
    csv << st.n << ',' << st.dim << ',' << count << ',' << zero_columns << ',' << format_number(dens) << ','
        << format_number(ref) << '\n';
    rows.push_back({{"n", st.n}, {"dim", st.dim}, {"count", count}, {"zero_columns", zero_columns},
                    {"density", dens}, {"reference", ref}});
  }
  return {emit(rc, echo, csv.str(), json{{"rows", rows}, {"passed", ok}}), ok ? kExitOk : kExitViolated};
}

Outcome cmd_degree(const RunConfig& rc, const OperatorConfig& op) {
  if (!op.spec.is_banded()) throw UsageError("degree needs a band-limited operator");
  const auto filt = op.filtration();
  const int K = op.spec.band_half_width();

  auto echo = base_echo("degree", rc, op);
  std::ostringstream csv;
  json diagonals = json::array();
  for (int k = -K; k <= K; ++k) {
    const int deg = degree_estimate(op.spec.diagonal_part(k), filt);
    echo.emplace_back("degree_k" + std::to_string(k), std::to_string(deg));
    diagonals.push_back({{"k", k}, {"degree", deg}, {"sup", op.spec.diag_sup(k)}});
  }
  const int total = degree_estimate(op.spec, filt);
  echo.emplace_back("degree", std::to_string(total));

  std::optional<double> bound;
  if (op.spec.index_mode() == IndexMode::Bilateral) bound = dfnorm_bound(op.spec);
  echo.emplace_back("dfnorm_bound", bound ? format_number(*bound) : "unavailable");

  csv << "n,hs_norm,bound,within\n";
  json rows = json::array();
  bool ok = true;
  for (int n : rc.schedule) {
    const double hs = commutator_hs_norm(op.spec, filt, n);
    const bool within = !bound || hs <= *bound;
    ok = ok && within;
    csv << n << ',' << format_number(hs) << ',' << (bound ? format_number(*bound) : "") << ','
        << (bound ? (within ? "true" : "false") : "") << '\n';
    json row{{"n", n}, {"hs_norm", hs}};
    if (bound) row["within"] = within;
    rows.push_back(row);
  }
  json body{{"diagonals", diagonals}, {"degree", total}, {"rows", rows}};
  body["dfnorm_bound"] = bound ? json(*bound) : json(nullptr);
  return {emit(rc, echo, csv.str(), body), ok ? kExitOk : kExitViolated};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of band-limited self-adjoint operators from finite compressions"};
  app.require_subcommand(1);
  RunConfig rc;

  auto common = [&](CLI::App* sub, bool ladder) {
    sub->add_option("--op", rc.op_path, "Operator config file")->required()->check(CLI::ExistingFile);
    if (ladder) sub->add_option("--schedule", rc.schedule, "Ladder steps n, comma separated")->delimiter(',');
    sub->add_option("--out", rc.out_path, "Output path (default stdout)");
    sub->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", rc.workers, "Worker threads");
  };
  auto opt = [](CLI::App* sub, const char* name, std::optional<double>& target, const char* help) {
    sub->add_option_function<double>(name, [&target](double v) { target = v; }, help);
  };

  auto* szego = app.add_subcommand("szego", "Eigenvalue averages against the symbol average");
  common(szego, true);
  opt(szego, "--tol", rc.tol, "Allowed final gap (default 0.01)");

  auto* spectrum = app.add_subcommand("spectrum", "Essential spectrum estimate from a grid sweep");
  common(spectrum, true);
  opt(spectrum, "--eps", rc.eps, "Window radius");
  opt(spectrum, "--grid-pitch", rc.pitch, "Grid pitch h");

  auto* classify_cmd = app.add_subcommand("classify", "Labels for given points");
  common(classify_cmd, true);
  opt(classify_cmd, "--eps", rc.eps, "Window radius");
  classify_cmd->add_option("--points", rc.points, "Points, comma separated")->delimiter(',')->required();

  auto* butterfly = app.add_subcommand("butterfly", "Eigenvalues of A_n over a sweep of theta");
  common(butterfly, false);
  butterfly->add_option("--theta-grid", rc.theta_grid, "start:stop:steps")->required();
  butterfly->add_option("--n", rc.n, "Compression step");

  auto* appendix = app.add_subcommand("appendix", "Eigenvalue density at 0 for the permutation operator");
  common(appendix, true);
  opt(appendix, "--eps", rc.eps, "Window radius (default 0.5)");

  auto* degree = app.add_subcommand("degree", "Degree, norm bound and commutator norms");
  common(degree, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate(rc);
    const auto op = load_operator_config(rc.op_path);
    Outcome outcome;
    if (szego->parsed()) outcome = cmd_szego(rc, op);
    else if (spectrum->parsed()) outcome = cmd_spectrum(rc, op);
    else if (classify_cmd->parsed()) outcome = cmd_classify(rc, op);
    else if (butterfly->parsed()) outcome = cmd_butterfly(rc, op);
    else if (appendix->parsed()) outcome = cmd_appendix(rc, op);
    else outcome = cmd_degree(rc, op);

    if (rc.out_path.empty()) {
      std::cout << outcome.text;
    } else {
      std::ofstream out(rc.out_path, std::ios::binary);
      if (!out) throw UsageError("cannot write '" + rc.out_path + "'");
      out << outcome.text;
    }
    return outcome.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
