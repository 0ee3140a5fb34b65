#include "filtspec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "filtspec/errors.hpp"

namespace filtspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("invalid number '" + std::string(text) + "' for " + std::string(what));
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("invalid integer '" + std::string(text) + "' for " + std::string(what));
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// "name:p1,p2" -> name, {p1, p2}
std::pair<std::string, std::vector<double>> split_named(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  std::string name(trim(spec.substr(0, colon)));
  std::vector<double> params;
  if (colon != std::string_view::npos) params = parse_list(spec.substr(colon + 1), name);
  return {name, params};
}

void expect_params(const std::string& name, const std::vector<double>& params, std::size_t n) {
  if (params.size() != n)
    throw ConfigError("'" + name + "' takes " + std::to_string(n) + " parameter(s), got " +
                      std::to_string(params.size()));
}

}  // namespace

RealFn potential_from_name(std::string_view spec) {
  const auto [name, p] = split_named(spec);
  if (name == "zero") {
    expect_params(name, p, 0);
    return [](double) { return 0.0; };
  }
  if (name == "linear") {
    expect_params(name, p, 1);
    return [l = p[0]](double x) { return 2.0 * l * x; };
  }
  if (name == "cosine") {
    expect_params(name, p, 1);
    return [l = p[0]](double x) { return 2.0 * l * std::cos(std::numbers::pi * x); };
  }
  if (name == "step") {
    expect_params(name, p, 2);
    return [a = p[0], b = p[1]](double x) { return x < 0.0 ? a : b; };
  }
  throw ConfigError("unknown potential '" + name + "'");
}

SymbolSpec symbol_from_name(std::string_view spec, int quadrature_points) {
  const auto [name, p] = split_named(spec);
  if (name == "constant") {
    expect_params(name, p, 1);
    return {[c = p[0]](double) { return c; }, quadrature_points};
  }
  if (name == "cosine") {
    expect_params(name, p, 1);
    return {[c = p[0]](double x) { return c * std::cos(x); }, quadrature_points};
  }
  if (name == "square") {
    expect_params(name, p, 2);
    return {[a = p[0], b = p[1]](double x) { return std::abs(x) < 0.5 * std::numbers::pi ? a : b; },
            quadrature_points};
  }
  throw ConfigError("unknown symbol '" + name + "'");
}

OperatorConfig parse_operator_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key(trim(v.substr(0, eq)));
    std::string value(trim(v.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    for (const auto& [k, _] : entries)
      if (k == key) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    entries.emplace_back(std::move(key), std::move(value));
  }

  auto get = [&](std::string_view key) -> std::optional<std::string> {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    return std::nullopt;
  };
  auto allow_only = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& [k, _] : entries) {
      bool ok = k == "kind";
      for (auto allowed : keys) ok = ok || k == allowed;
      if (!ok) throw ConfigError("key '" + k + "' is not valid here");
    }
  };

  const auto kind = get("kind");
  if (!kind) throw ConfigError("missing 'kind'");

  if (*kind == "laurent" || *kind == "toeplitz") {
    allow_only({"coefficients", "symbol", "band", "quadrature"});
    const int quad = static_cast<int>(parse_integer(get("quadrature").value_or("4096"), "quadrature"));
    LaurentCoefficients coeffs;
    const auto coeff_text = get("coefficients");
    const auto symbol_text = get("symbol");
    if (coeff_text.has_value() == symbol_text.has_value())
      throw ConfigError("give exactly one of 'coefficients' and 'symbol'");
    if (coeff_text) {
      if (get("band")) throw ConfigError("'band' only applies to 'symbol'");
      coeffs = LaurentCoefficients::symmetric(parse_list(*coeff_text, "coefficients"));
    } else {
      const auto band = parse_integer(get("band").value_or("8"), "band");
      if (band < 0) throw ConfigError("band must be nonnegative");
      try {
        coeffs = fourier_coefficients(symbol_from_name(*symbol_text, quad), static_cast<int>(band));
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
    }
    auto spec = *kind == "laurent" ? laurent_operator(coeffs) : toeplitz_operator(coeffs);
    return OperatorConfig{*kind, entries, std::move(spec), symbol_from_coefficients(coeffs, quad), std::nullopt};
  }

  if (*kind == "almost_mathieu" || *kind == "hamiltonian") {
    const bool am = *kind == "almost_mathieu";
    allow_only({am ? "theta" : "sigma", "potential"});
    const auto angle = get(am ? "theta" : "sigma");
    if (!angle) throw ConfigError(std::string("missing '") + (am ? "theta" : "sigma") + "'");
    const double value = parse_real(*angle, am ? "theta" : "sigma");
    auto v = potential_from_name(get("potential").value_or("zero"));
    auto spec = am ? almost_mathieu_operator(std::move(v), value) : discretized_hamiltonian(std::move(v), value);
    return OperatorConfig{*kind, entries, std::move(spec), std::nullopt, std::nullopt};
  }

  if (*kind == "permutation") {
    allow_only({"limit"});
    const auto limit = parse_integer(get("limit").value_or("65536"), "limit");
    try {
      Involution perm = appendix_permutation(limit);
      return OperatorConfig{*kind, entries, permutation_operator(perm), std::nullopt, perm};
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }

  throw ConfigError("unknown kind '" + *kind + "'");
}

OperatorConfig parse_operator_config_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_operator_config(in);
}

OperatorConfig load_operator_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_operator_config(in);
}

}  // namespace filtspec
