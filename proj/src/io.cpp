#include "filtspec/io.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace filtspec {

std::string format_number(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

void write_csv_header(std::ostream& out, const ConfigEcho& echo) {
  for (const auto& [k, v] : echo) out << "# " << k << " = " << v << '\n';
}

void write_compressed_csv(std::ostream& out, const CompressedMatrix& m) {
  if (const auto* t = std::get_if<TridiagonalForm>(&m.storage)) {
    out << "index,diagonal,off_diagonal\n";
    for (std::size_t i = 0; i < t->dim(); ++i) {
      out << i << ',' << format_number(t->diagonal[i]) << ',';
      if (i < t->off_diagonal.size()) out << format_number(t->off_diagonal[i]);
      out << '\n';
    }
    return;
  }
  if (const auto* b = std::get_if<SymmetricBand>(&m.storage)) {
    out << "index";
    for (int d = 0; d <= b->bandwidth(); ++d) out << ",lower_" << d;
    out << '\n';
    for (std::size_t i = 0; i < b->dim(); ++i) {
      out << i;
      for (std::size_t d = 0; d <= static_cast<std::size_t>(b->bandwidth()); ++d) {
        out << ',';
        if (i + d < b->dim()) out << format_number(b->at(i + d, i));
      }
      out << '\n';
    }
    return;
  }
  const auto& d = std::get<DenseMatrix>(m.storage);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) out << (j ? "," : "") << format_number(d(i, j));
    out << '\n';
  }
}

void write_classification_csv(std::ostream& out, const ClassificationReport& report) {
  out << "lambda,label";
  for (int n : report.ns) out << ",count_n" << n;
  for (int n : report.ns) out << ",density_n" << n;
  out << '\n';
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out << format_number(report.grid[i]) << ',' << to_string(report.labels[i]);
    for (auto c : report.evidence[i].counts) out << ',' << c;
    for (double d : report.evidence[i].densities) out << ',' << format_number(d);
    out << '\n';
  }
}

void write_intervals_csv(std::ostream& out, const std::vector<Interval>& intervals) {
  out << "lo,hi\n";
  for (const auto& iv : intervals) out << format_number(iv.lo) << ',' << format_number(iv.hi) << '\n';
}

nlohmann::ordered_json to_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["epsilon"] = report.epsilon;
  j["ns"] = report.ns;
  j["dims"] = report.dims;
  auto& points = j["points"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    points.push_back({{"lambda", report.grid[i]},
                      {"label", to_string(report.labels[i])},
                      {"counts", report.evidence[i].counts},
                      {"densities", report.evidence[i].densities}});
  }
  return j;
}

nlohmann::ordered_json to_json(const SpectrumEstimate& est) {
  auto intervals = [](const std::vector<Interval>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& iv : v) a.push_back({iv.lo, iv.hi});
    return a;
  };
  nlohmann::ordered_json j;
  j["h"] = est.h;
  j["epsilon"] = est.epsilon;
  j["radius"] = est.radius;
  j["intervals"] = intervals(est.intervals);
  j["essential_runs"] = intervals(est.essential_runs);
  j["report"] = to_json(est.report);
  return j;
}

nlohmann::ordered_json to_json(const ConfigEcho& echo) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : echo) j[k] = v;
  return j;
}

}  // namespace filtspec
