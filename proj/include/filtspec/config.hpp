#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "filtspec/compression.hpp"
#include "filtspec/operator_model.hpp"

namespace filtspec {

/// An operator described by a key-value config file.
///
/// Grammar: one `key = value` per line; `#` starts a comment; blank lines are
/// ignored; keys may not repeat. Recognised keys:
///
///   kind         laurent | toeplitz | almost_mathieu | hamiltonian | permutation
///   coefficients a_0, a_1, ..., a_K      (laurent, toeplitz; a_{-k} = a_k)
///   symbol       constant:c | cosine:c | square:a,b
///                                        (laurent, toeplitz; instead of coefficients)
///   band         K for `symbol`, default 8
///   quadrature   trapezoid points, default 4096
///   theta        rotation angle          (almost_mathieu)
///   sigma        step size               (hamiltonian: theta = 2 sigma^2, potential reflected)
///   potential    zero | linear:l | cosine:l | step:a,b, default zero
///   limit        range of the involution (permutation), default 65536
struct OperatorConfig {
  std::string kind;
  /// Parsed entries in file order, for echoing into outputs.
  std::vector<std::pair<std::string, std::string>> entries;
  OperatorSpec spec;
  /// The (band-limited) symbol of Laurent and Toeplitz operators.
  std::optional<SymbolSpec> symbol;
  std::optional<Involution> permutation;

  Filtration filtration() const { return Filtration(spec.index_mode()); }
};

/// Throws ConfigError on malformed input.
OperatorConfig parse_operator_config(std::istream& in);
OperatorConfig parse_operator_config_string(std::string_view text);
OperatorConfig load_operator_config(const std::filesystem::path& path);

/// Potentials v on [-1, 1]:
///   zero        v = 0
///   linear:l    v(x) = 2 l x
///   cosine:l    v(x) = 2 l cos(pi x)
///   step:a,b    v(x) = a for x < 0, b otherwise
RealFn potential_from_name(std::string_view name);

/// Symbols on [-pi, pi]:
///   constant:c  f = c
///   cosine:c    f(x) = c cos x
///   square:a,b  f(x) = a for |x| < pi/2, b otherwise
SymbolSpec symbol_from_name(std::string_view name, int quadrature_points = 4096);

}  // namespace filtspec
