#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "liftzonoid/barycentric.hpp"
#include "liftzonoid/depth.hpp"
#include "liftzonoid/measures.hpp"

namespace liftzonoid::io {

// One atom per row. A non-numeric first row is a header; if its last column
// is named `weight`, that column carries (renormalized) weights. Blank lines
// and lines starting with '#' are skipped.
EmpiricalMeasure read_empirical_csv(std::istream& in);
EmpiricalMeasure read_empirical_csv_file(const std::string& path);

// {"mean": [...], "covariance": [[...], ...]}
GaussianMeasure read_gaussian_json(const nlohmann::json& spec);
GaussianMeasure read_gaussian_json_file(const std::string& path);

// "1.5,-2,3" → vector
Vector parse_vector(const std::string& text);

// {"u": [...], "a": number | "-inf"}
nlohmann::json to_json(const HalfSpace& h);
HalfSpace halfspace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const DepthCertificate& cert);
nlohmann::json to_json(const RepresentationResult& rep);
nlohmann::json to_json(const BarycentricCoords& coords);

// 17 significant digits, round-trip safe.
std::string format_number(double x);

}  // namespace liftzonoid::io
