#include "liftzonoid/io.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <spdlog/spdlog.h>
#include <sstream>
#include <vector>

#include "liftzonoid/config.hpp"
#include "liftzonoid/error.hpp"

namespace liftzonoid::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& value) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmpiricalMeasure read_empirical_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  bool first = true;
  bool weighted = false;
  Eigen::Index columns = -1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split(text, ',');
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (!parse_double(fields[k], values[k])) numeric = false;
    }
    if (first && !numeric) {
      weighted = fields.back() == "weight";
      columns = static_cast<Eigen::Index>(fields.size());
      first = false;
      continue;
    }
    first = false;
    if (!numeric) {
      throw Error(ErrorKind::Input, fmt::format("CSV row {}: non-numeric field", row));
    }
    if (columns < 0) columns = static_cast<Eigen::Index>(values.size());
    if (static_cast<Eigen::Index>(values.size()) != columns) {
      throw Error(ErrorKind::Input, fmt::format("CSV row {}: expected {} fields, found {}", row,
                                                columns, values.size()));
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Input, fmt::format("CSV row {}: non-finite value", row));
    }
    rows.push_back(std::move(values));
  }
  const Eigen::Index d = columns - (weighted ? 1 : 0);
  if (rows.empty() || d < 1) throw Error(ErrorKind::Input, "CSV holds no atoms");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix points(d, n);
  Vector weights = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) points(k, i) = rows[i][k];
    if (weighted) {
      weights[i] = rows[i][d];
      if (!(weights[i] > 0.0)) {
        throw Error(ErrorKind::Input, fmt::format("CSV atom {}: weight must be positive", i + 1));
      }
    }
  }
  if (weighted) {
    const double total = weights.sum();
    if (std::abs(total - 1.0) > default_tolerances().renormalize_warn) {
      spdlog::warn("CSV weights sum to {}; renormalizing to 1", total);
    }
  }
  return EmpiricalMeasure::normalized(std::move(points), std::move(weights));
}

EmpiricalMeasure read_empirical_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, fmt::format("cannot open measure file '{}'", path));
  return read_empirical_csv(in);
}

namespace {

Vector vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::Input, fmt::format("'{}' must be a non-empty array", what));
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::Input, fmt::format("'{}' must hold numbers", what));
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

}  // namespace

GaussianMeasure read_gaussian_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("mean") || !spec.contains("covariance")) {
    throw Error(ErrorKind::Input, "Gaussian description needs 'mean' and 'covariance'");
  }
  const Vector m = vector_from_json(spec["mean"], "mean");
  const auto& cov = spec["covariance"];
  if (!cov.is_array() || static_cast<Eigen::Index>(cov.size()) != m.size()) {
    throw Error(ErrorKind::Input, "'covariance' must be a square array matching 'mean'");
  }
  Matrix sigma(m.size(), m.size());
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    const Vector row = vector_from_json(cov[static_cast<std::size_t>(r)], "covariance row");
    if (row.size() != m.size()) throw Error(ErrorKind::Input, "'covariance' must be square");
    sigma.row(r) = row.transpose();
  }
  return GaussianMeasure::from_covariance(m, sigma);
}

GaussianMeasure read_gaussian_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, fmt::format("cannot open Gaussian description '{}'", path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Input, fmt::format("Gaussian description '{}': {}", path, e.what()));
  }
  return read_gaussian_json(j);
}

Vector parse_vector(const std::string& text) {
  const auto fields = split(trim(text), ',');
  Vector v(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t k = 0; k < fields.size(); ++k) {
    double x;
    if (!parse_double(fields[k], x) || !std::isfinite(x)) {
      throw Error(ErrorKind::Input, fmt::format("cannot parse '{}' as a number list", text));
    }
    v[static_cast<Eigen::Index>(k)] = x;
  }
  return v;
}

nlohmann::json to_json(const Vector& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

nlohmann::json to_json(const HalfSpace& h) {
  nlohmann::json j;
  j["u"] = to_json(h.direction.vec());
  if (h.is_whole_space()) j["a"] = "-inf"; else j["a"] = h.offset;
  return j;
}

HalfSpace halfspace_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("u") || !j.contains("a")) {
    throw Error(ErrorKind::Input, "half-space needs 'u' and 'a'");
  }
  const Direction u(vector_from_json(j["u"], "u"));
  const auto& a = j["a"];
  if (a.is_string()) {
    if (a.get<std::string>() != "-inf") throw Error(ErrorKind::Input, "offset string must be \"-inf\"");
    return HalfSpace::whole_space(u);
  }
  if (!a.is_number()) throw Error(ErrorKind::Input, "offset must be a number or \"-inf\"");
  return {u, a.get<double>()};
}

nlohmann::json to_json(const DepthCertificate& cert) {
  nlohmann::json j;
  j["depth"] = cert.depth;
  j["status"] = std::string(to_string(cert.status));
  j["dual_direction"] =
      cert.dual_direction ? to_json(cert.dual_direction->vec()) : nlohmann::json(nullptr);
  j["max_weight_ratio"] = cert.max_weight_ratio;
  j["iterations"] = cert.iterations;
  j["dual_degenerate"] = cert.dual_degenerate;
  j["atom_weights"] = to_json(cert.atom_weights);
  return j;
}

nlohmann::json to_json(const RepresentationResult& rep) {
  nlohmann::json j;
  if (rep.halfspace.is_whole_space()) {
    j["halfspace"] = "whole-space";
  } else {
    j["halfspace"] = to_json(rep.halfspace);
  }
  j["alpha"] = rep.alpha;
  j["residual"] = rep.residual;
  j["unique"] = rep.unique;
  j["method"] = std::string(to_string(rep.method));
  if (rep.method == RepresentationMethod::LpDual) j["boundary_mass"] = rep.boundary_mass;
  return j;
}

nlohmann::json to_json(const BarycentricCoords& coords) {
  return {{"kind", std::string(to_string(coords.kind))},
          {"scalar", coords.scalar},
          {"direction", to_json(coords.direction.vec())}};
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

}  // namespace liftzonoid::io
