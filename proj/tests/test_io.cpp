#include <doctest.h>

#include <sstream>

#include "bmforge/io.hpp"
#include "bmforge/quadrature.hpp"

using namespace bmforge;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}
}  // namespace

TEST_CASE("measure specs") {
  const auto g = measure_from_json(Json::parse(R"({"family": "gaussian", "dim": 3})"));
  CHECK(g.dim() == 3);
  CHECK(g.family() == Family::Gaussian);
  const auto p = measure_from_json(Json::parse(R"({"family": "product_p", "p": 1.5, "dim": 2})"));
  CHECK(p.p() == 1.5);
  const auto t = measure_from_json(Json::parse(R"({"family": "gaussian", "dim": 2, "transform": [[2, 0], [0, 1]]})"));
  CHECK(t.base_family() == Family::Gaussian);
  CHECK(t.family() == Family::Custom);
  CHECK(kind_of([] { measure_from_json(Json::parse(R"({"family": "cauchy", "dim": 2})")); }) ==
        ErrorKind::MalformedSpec);
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"family": "radial_p", "dim": 2, "p": "x"})"), "m.json"); })
            .find("m.json: field '/p'") != std::string::npos);
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"family": "gaussian"})"), "m.json"); }).find("/dim") !=
        std::string::npos);
}

TEST_CASE("body specs") {
  const auto sq = body_from_json(Json::parse(R"({"type": "box", "half_widths": [1, 1]})"));
  CHECK(body_measure(LogConcaveMeasure::lebesgue(2), sq, Backend::Radial).value == 4.0);
  const auto h = body_from_json(Json::parse(R"({"type": "hpolytope", "A": [[1, 0], [0, 1]], "b": [1, 2]})"));
  CHECK(h.support(Vec::Unit(2, 1)) == doctest::Approx(2.0));
  const auto v = body_from_json(Json::parse(R"({"type": "vpolygon", "points": [[1, 0], [0, 1], [-1, 0], [0, -1]]})"));
  CHECK(v.gauge(Vec(Eigen::Vector2d(0.5, 0.5))) == doctest::Approx(1.0));
  const auto l = body_from_json(Json::parse(R"({"type": "lp_ball", "dim": 3, "p": 1.5, "r": 2})"));
  CHECK(l.dim() == 3);
  const auto e = body_from_json(Json::parse(R"({"type": "ellipsoid", "M": [[4, 0], [0, 1]]})"));
  CHECK(e.dim() == 2);
  const auto s = body_from_json(
      Json::parse(R"({"type": "sublevel", "potential": {"family": "gaussian", "dim": 2}, "q": 2})"));
  CHECK(s.radial_function(Vec::Unit(2, 0)) == doctest::Approx(2.0).epsilon(1e-9));
  const auto w = body_from_json(Json::parse(R"({"type": "whole_space", "dim": 2})"));
  CHECK(!w.bounded());
  CHECK(message_of([] { body_from_json(Json::parse(R"({"type": "box", "half_widths": [1, -1]})"), "k.json"); })
            .find("k.json: field '/half_widths'") != std::string::npos);
  CHECK(message_of([] { body_from_json(Json::parse(R"({"type": "hpolytope", "A": [[1, 0], [0]], "b": [1, 1]})")); })
            .find("/A/1") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
  const std::string text = "{\n  \"family\": \"gaussian\",\n  \"dim\": ,\n}";
  const auto msg = message_of([&] { parse_json_text(text, "m.json"); });
  CHECK(msg.find("m.json:3:") != std::string::npos);
}

TEST_CASE("test function specs") {
  const auto mu = LogConcaveMeasure::gaussian(2);
  const Vec x = Vec(Eigen::Vector2d(0.3, -0.7));
  CHECK(test_function_from_json(Json("potential"), mu)->value(x) == doctest::Approx(mu.V(x)));
  CHECK(test_function_from_json(Json("linear:2,1"), mu)->value(x) == doctest::Approx(-0.1));
  const auto poly = test_function_from_json(
      Json::parse(R"({"terms": [{"coef": 2, "exp": [2, 0]}, {"coef": -1, "exp": [1, 1]}]})"), mu);
  CHECK(poly->value(x) == doctest::Approx(2 * 0.09 + 0.21));
  CHECK(kind_of([&] { test_function_from_json(Json("linear:1"), mu); }) == ErrorKind::MalformedSpec);
}

TEST_CASE("csv formatting") {
  std::ostringstream ss;
  CsvWriter w(ss, {"a", "b", "c"});
  w.row({std::string("x,y"), 1.0 / 3.0, 7LL});
  w.row({std::string("plain"), kInf, -2LL});
  CHECK(ss.str() == "a,b,c\n\"x,y\",0.333333333333,7\nplain,inf,-2\n");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(json_number(kInf) == Json("inf"));
}
