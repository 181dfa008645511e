#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>

#include "liftzonoid/barycentric.hpp"
#include "liftzonoid/depth.hpp"
#include "liftzonoid/directions.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/gaussian.hpp"
#include "liftzonoid/io.hpp"
#include "liftzonoid/normal.hpp"
#include "liftzonoid/parallel.hpp"
#include "liftzonoid/zonoid.hpp"
#include "verify.hpp"

namespace liftzonoid::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string measure_path;
  std::string gaussian_path;
  std::string point;
  std::string direction;
  std::optional<double> alpha;
  std::optional<double> offset;
  std::optional<double> lift;
  int directions = 64;
  std::uint64_t seed = 0;
  std::size_t samples = 100'000;
  std::string out_path;
  std::string format = "json";
  int workers = 1;
  std::string suite;
  std::string to;
  std::string from;
  std::string to_back;
  std::optional<double> scalar;
  std::string function;
  double value = 0.0;
};

Measure load_measure(const Options& o) {
  if (!o.measure_path.empty() && !o.gaussian_path.empty()) {
    throw Error(ErrorKind::Input, "give either --measure or --gaussian, not both");
  }
  if (!o.measure_path.empty()) return io::read_empirical_csv_file(o.measure_path);
  if (!o.gaussian_path.empty()) return io::read_gaussian_json_file(o.gaussian_path);
  throw Error(ErrorKind::Input, "a measure is required (--measure PATH or --gaussian PATH)");
}

std::optional<Measure> maybe_measure(const Options& o) {
  if (o.measure_path.empty() && o.gaussian_path.empty()) return std::nullopt;
  return load_measure(o);
}

Vector required_vector(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::Input, fmt::format("{} is required", flag));
  return io::parse_vector(text);
}

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorKind::Input, fmt::format("{} is required", flag));
  return *v;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

// --- subcommands: each returns (text, exit code) ---------------------------

struct Output {
  Output(std::string t = {}, int c = kOk, std::string n = {})
      : text(std::move(t)), code(c), note(std::move(n)) {}
  std::string text;
  int code;
  std::string note;  // extra line for standard error
};

Output cmd_depth(const Options& o) {
  const Measure mu = load_measure(o);
  const Vector x = required_vector(o.point, "--point");
  if (const auto* g = std::get_if<GaussianMeasure>(&mu)) {
    const double depth = gaussian_depth(*g, x);
    return {dump({{"depth", depth}, {"status", depth == 1.0 ? "Mean" : "Interior"}})};
  }
  const auto cert = zonoid_depth(std::get<EmpiricalMeasure>(mu), x);
  return {dump(io::to_json(cert)), cert.status == DepthStatus::Outside ? kDomain : kOk};
}

bool convex_ring(const std::vector<Vector>& pts) {
  const auto n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e1 = pts[(i + 1) % n] - pts[i];
    const Vector e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
    if (e1[0] * e2[1] - e1[1] * e2[0] < -1e-9) return false;
  }
  return true;
}

Output cmd_contour(const Options& o) {
  const Measure mu = load_measure(o);
  const double alpha = required(o.alpha, "--alpha");
  const auto d = dim(mu);
  if (d >= 2 && o.directions < 4) throw Error(ErrorKind::Input, "--directions must be at least 4");
  const auto grid = direction_grid(d, o.directions, o.seed);
  std::vector<Vector> points(grid.size());
  for_each_task(grid.size(), o.workers, [&](std::size_t k) {
    points[k] = trimmed_boundary_point(mu, {alpha, grid[k]});
  });
  const bool convex = d != 2 || convex_ring(points);
  const json summary = {
      {"alpha", alpha}, {"n_directions", grid.size()}, {"seed", o.seed}, {"convex", convex}};

  std::string text;
  if (o.format == "csv") {
    text = "alpha";
    for (Eigen::Index i = 0; i < d; ++i) text += fmt::format(",u{}", i + 1);
    for (Eigen::Index i = 0; i < d; ++i) text += fmt::format(",x{}", i + 1);
    text += "\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      text += io::format_number(alpha);
      for (Eigen::Index i = 0; i < d; ++i) text += "," + io::format_number(grid[k].vec()[i]);
      for (Eigen::Index i = 0; i < d; ++i) text += "," + io::format_number(points[k][i]);
      text += "\n";
    }
  } else {
    json dirs = json::array(), pts = json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      dirs.push_back(io::to_json(grid[k].vec()));
      pts.push_back(io::to_json(points[k]));
    }
    json j = summary;
    j["directions"] = dirs;
    j["points"] = pts;
    text = dump(j);
  }
  return {text, kOk, summary.dump()};
}

Output cmd_support(const Options& o) {
  const Measure mu = load_measure(o);
  const Vector u = required_vector(o.direction, "--direction");
  if (o.lift) {
    const LiftDirection w(*o.lift, u);
    return {dump({{"kind", "lift"}, {"support", support_lift_zonoid(mu, w)}})};
  }
  if (o.alpha) {
    return {dump({{"kind", "trimmed"}, {"alpha", *o.alpha},
                  {"support", support_trimmed(mu, {*o.alpha, Direction(u)})}})};
  }
  return {dump({{"kind", "zonoid"}, {"support", support_zonoid(mu, Direction(u))}})};
}

Output cmd_barycenter(const Options& o) {
  const Measure mu = load_measure(o);
  const HalfSpace h{Direction(required_vector(o.direction, "--direction")), required(o.offset, "--offset")};
  json j = {{"halfspace", io::to_json(h)},
            {"mass", halfspace_mass(mu, h)},
            {"barycenter", io::to_json(halfspace_barycenter(mu, h))}};
  if (const auto* g = std::get_if<GaussianMeasure>(&mu); g && o.samples > 0) {
    const auto mc = monte_carlo_barycenter(*g, h, o.samples, o.seed, o.workers);
    j["monte_carlo"] = {{"estimate", io::to_json(mc.estimate)},
                        {"standard_error", io::to_json(mc.standard_error())},
                        {"samples", mc.samples}};
  }
  return {dump(j)};
}

Output cmd_represent(const Options& o) {
  const Measure mu = load_measure(o);
  return {dump(io::to_json(represent(mu, required_vector(o.point, "--point"))))};
}

Output cmd_coords(const Options& o) {
  const Measure mu = load_measure(o);
  json j;
  Vector x;
  if (!o.point.empty()) {
    x = io::parse_vector(o.point);
  } else {
    if (o.from.empty()) throw Error(ErrorKind::Input, "give --point or --from with --scalar and --direction");
    const BarycentricCoords c{parse_coords_kind(o.from), required(o.scalar, "--scalar"),
                              Direction(required_vector(o.direction, "--direction"))};
    x = point_from_coords(mu, c);
    j["from"] = io::to_json(c);
  }
  j["point"] = io::to_json(x);
  if (!o.to.empty()) {
    const auto c = coords_from_point(mu, x, parse_coords_kind(o.to));
    j["coords"] = io::to_json(c);
    if (!o.to_back.empty()) {
      const Vector y = point_from_coords(mu, c);
      j["point_back"] = io::to_json(y);
      j["coords_back"] = io::to_json(coords_from_point(mu, y, parse_coords_kind(o.to_back)));
    }
  }
  return {dump(j)};
}

Output cmd_gaussian(const Options& o) {
  const double v = o.value;
  double r = 0.0;
  const auto& f = o.function;
  if (f == "pdf") r = normal::pdf(v);
  else if (f == "cdf") r = normal::cdf(v);
  else if (f == "sf") r = normal::sf(v);
  else if (f == "quantile") r = normal::quantile(v);
  else if (f == "mills") r = normal::mills_ratio(v);
  else if (f == "g") r = normal::g_ratio(v);
  else if (f == "g-inverse") r = normal::g_inverse(v);
  else if (f == "isoperimetric") r = normal::isoperimetric(v);
  else if (f == "radius") r = normal::radius(v);
  else if (f == "radius-inverse") r = normal::radius_inverse(v);
  else throw Error(ErrorKind::Input, fmt::format("unknown function '{}'", f));
  return {fmt::format("{:.15g}\n", r)};
}

Output cmd_polygon(const Options& o) {
  const Measure mu = load_measure(o);
  const auto* e = std::get_if<EmpiricalMeasure>(&mu);
  if (!e) throw Error(ErrorKind::Input, "polygon2d needs an empirical measure");
  const auto poly = zonotope_polygon_2d(*e);
  if (o.format == "csv") {
    std::string text = "x,y\n";
    for (const auto& v : poly.vertices) {
      text += io::format_number(v.x()) + "," + io::format_number(v.y()) + "\n";
    }
    return {text};
  }
  json verts = json::array();
  for (const auto& v : poly.vertices) verts.push_back({v.x(), v.y()});
  return {dump({{"vertices", verts}})};
}

Output cmd_verify(const Options& o) {
  VerifyConfig cfg;
  cfg.suite = o.suite;
  cfg.measure = maybe_measure(o);
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.directions = o.directions;
  cfg.workers = o.workers;
  const json report = run_verify(cfg);
  return {dump(report), report["pass"].get<bool>() ? kOk : kVerifyFailed};
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutsideSupport:
    case ErrorKind::ZeroMass:
    case ErrorKind::NoSolution:
    case ErrorKind::MeanPoint:
    case ErrorKind::NoDual:
    case ErrorKind::NotConverged:
      return kDomain;
    default:
      return kInputError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zonoid depth, trimmed regions and barycentric half-space representations"};
  app.require_subcommand(1);
  Options o;

  auto measure_flags = [&](CLI::App* c) {
    auto* m = c->add_option("--measure", o.measure_path, "CSV of atoms (optional weight column)");
    auto* g = c->add_option("--gaussian", o.gaussian_path, "JSON {mean, covariance}");
    m->excludes(g);
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out_path, "write the result here instead of stdout");
    c->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for grids and sampling");
  };

  auto* depth = app.add_subcommand("depth", "zonoid depth of a point");
  measure_flags(depth);
  common(depth);
  depth->add_option("--point", o.point, "comma-separated coordinates")->required();

  auto* contour = app.add_subcommand("contour", "boundary points of the trimmed region D_alpha");
  measure_flags(contour);
  common(contour);
  contour->add_option("--alpha", o.alpha, "trimming level in (0,1]")->required();
  contour->add_option("--directions", o.directions, "number of directions");

  auto* support = app.add_subcommand("support", "support function of Z, D_alpha or the lift zonoid");
  measure_flags(support);
  common(support);
  support->add_option("--direction", o.direction, "direction u")->required();
  support->add_option("--alpha", o.alpha, "trimmed region level");
  support->add_option("--lift", o.lift, "lift coordinate t for (t, u)");

  auto* bary = app.add_subcommand("barycenter", "mass and barycenter of {<y,u> >= a}");
  measure_flags(bary);
  common(bary);
  bary->add_option("--direction", o.direction, "normal u")->required();
  bary->add_option("--offset", o.offset, "offset a")->required();
  bary->add_option("--samples", o.samples, "Monte-Carlo samples for Gaussian measures (0: none)");

  auto* rep = app.add_subcommand("represent", "half-space whose barycenter is the point");
  measure_flags(rep);
  common(rep);
  rep->add_option("--point", o.point, "comma-separated coordinates")->required();

  auto* coords = app.add_subcommand("coords", "convert between points and offset/support/depth coordinates");
  measure_flags(coords);
  common(coords);
  coords->add_option("--point", o.point, "start from this point");
  coords->add_option("--from", o.from, "start from coordinates of this form");
  coords->add_option("--scalar", o.scalar, "scalar of the starting coordinates");
  coords->add_option("--direction", o.direction, "direction of the starting coordinates");
  coords->add_option("--to", o.to, "coordinate form to produce");
  coords->add_option("--to-back", o.to_back, "form for the reverse conversion check");

  auto* gauss = app.add_subcommand("gaussian", "standard normal scalar functions");
  gauss->add_option("function", o.function,
                    "pdf | cdf | sf | quantile | mills | g | g-inverse | isoperimetric | radius | radius-inverse")
      ->required();
  gauss->add_option("value", o.value, "argument")->required();
  gauss->add_option("--out", o.out_path, "write the result here instead of stdout");

  auto* polygon = app.add_subcommand("polygon2d", "vertices of the zonotope of a planar empirical measure");
  measure_flags(polygon);
  common(polygon);

  auto* verify = app.add_subcommand("verify", "run a property suite and report JSON");
  measure_flags(verify);
  common(verify);
  verify->add_option("--suite", o.suite, "theorem1 | gaussian | roundtrip | oracle")->required();
  verify->add_option("--samples", o.samples, "Monte-Carlo samples");
  verify->add_option("--directions", o.directions, "number of directions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Output result;
    if (*depth) result = cmd_depth(o);
    else if (*contour) result = cmd_contour(o);
    else if (*support) result = cmd_support(o);
    else if (*bary) result = cmd_barycenter(o);
    else if (*rep) result = cmd_represent(o);
    else if (*coords) result = cmd_coords(o);
    else if (*gauss) result = cmd_gaussian(o);
    else if (*polygon) result = cmd_polygon(o);
    else result = cmd_verify(o);

    if (!result.note.empty()) err << result.note << "\n";
    if (o.out_path.empty()) {
      out << result.text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::Input, fmt::format("cannot write '{}'", o.out_path));
      file << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace liftzonoid::cli
