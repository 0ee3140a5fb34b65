#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "filtspec/compression.hpp"
#include "filtspec/spectral_analysis.hpp"

namespace filtspec {

inline constexpr int kSchemaVersion = 1;

/// Key-value pairs echoed at the top of every output file.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

/// One `# key = value` line per entry.
void write_csv_header(std::ostream& out, const ConfigEcho& echo);

/// Dense storage: one row per matrix row. Tridiagonal storage: columns
/// `index,diagonal,off_diagonal`, the last off-diagonal cell left empty. Band
/// storage: `index,lower_0,...,lower_K` with lower_d = a(index + d, index),
/// cells past the end left empty.
void write_compressed_csv(std::ostream& out, const CompressedMatrix& m);

/// Columns: lambda, label, count_n<n> for each step, density_n<n> for each step.
void write_classification_csv(std::ostream& out, const ClassificationReport& report);

/// Columns: lo, hi.
void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals);

nlohmann::ordered_json to_json(const ClassificationReport& report);
nlohmann::ordered_json to_json(const SpectrumEstimate& est);
nlohmann::ordered_json to_json(const ConfigEcho& echo);

}  // namespace filtspec
