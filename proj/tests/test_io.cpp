#include <doctest.h>

#include <sstream>

#include "liftzonoid/error.hpp"
#include "liftzonoid/io.hpp"

using namespace liftzonoid;
using doctest::Approx;

namespace {

EmpiricalMeasure parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_empirical_csv(in);
}

std::string error_text(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    return e.what();
  }
  FAIL("expected an input error");
  return {};
}

}  // namespace

TEST_CASE("CSV without header is uniform") {
  const auto mu = parse("-1\n1\n");
  CHECK(mu.dim() == 1);
  CHECK(mu.size() == 2);
  CHECK(mu.weights()[0] == 0.5);
  CHECK(mu.points()(0, 1) == 1.0);
}

TEST_CASE("CSV header, comments, blanks and weights") {
  const auto mu = parse("x,y,weight\n# comment\n\n 1, 0 , 1\n0,1,3\n");
  CHECK(mu.dim() == 2);
  CHECK(mu.size() == 2);
  CHECK(mu.weights()[0] == Approx(0.25));
  CHECK(mu.weights()[1] == Approx(0.75));
  const auto plain = parse("x,y\n1,2\n3,4\n");
  CHECK(plain.dim() == 2);
  CHECK(plain.weights()[1] == 0.5);
}

TEST_CASE("CSV errors name the row") {
  CHECK(error_text("1,2\n3,abc\n").find("row 2") != std::string::npos);
  CHECK(error_text("1,2\n3\n").find("row 2") != std::string::npos);
  CHECK(error_text("x\n1\nnan\n").find("row 3") != std::string::npos);
  CHECK(error_text("x,weight\n1,0\n").find("weight") != std::string::npos);
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(io::read_empirical_csv_file("/nonexistent/file.csv"), Error);
}

TEST_CASE("Gaussian JSON") {
  const auto g = io::read_gaussian_json(nlohmann::json::parse(
      R"({"mean": [1, 2], "covariance": [[4, 0], [0, 9]]})"));
  CHECK(g.dim() == 2);
  CHECK(g.mean()[1] == 2.0);
  CHECK(g.covariance()(1, 1) == Approx(9.0));
  CHECK(g.factor()(0, 0) == Approx(2.0));
  CHECK_THROWS_AS(io::read_gaussian_json(nlohmann::json::parse(R"({"mean": [0]})")), Error);
  CHECK_THROWS_AS(io::read_gaussian_json(nlohmann::json::parse(
                      R"({"mean": [0, 0], "covariance": [[1, 0]]})")),
                  Error);
  CHECK_THROWS_AS(io::read_gaussian_json(nlohmann::json::parse(
                      R"({"mean": [0, 0], "covariance": [[1, 1], [1, 1]]})")),
                  Error);
}

TEST_CASE("vectors and numbers") {
  const Vector v = io::parse_vector("1.5, -2,3e-1");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[2] == 0.3);
  CHECK_THROWS_AS(io::parse_vector("1,,2"), Error);
  CHECK_THROWS_AS(io::parse_vector(""), Error);
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_number(2.0 / 3.0)) == 2.0 / 3.0);
}

TEST_CASE("half-space JSON round trip") {
  const HalfSpace h{Direction(Vector::Unit(2, 1)), -0.25};
  const auto j = io::to_json(h);
  CHECK(j["a"] == -0.25);
  const auto back = io::halfspace_from_json(j);
  CHECK(back.offset == h.offset);
  CHECK(back.direction.vec() == h.direction.vec());

  const auto whole = io::to_json(HalfSpace::whole_space(Direction(Vector::Unit(2, 0))));
  CHECK(whole["a"] == "-inf");
  CHECK(io::halfspace_from_json(whole).is_whole_space());

  RepresentationResult mean{HalfSpace::whole_space(Direction(Vector::Unit(2, 0)))};
  const auto rep = io::to_json(mean);
  CHECK(rep["halfspace"] == "whole-space");
  CHECK(rep["alpha"] == 1.0);
}
