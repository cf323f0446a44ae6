#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmforge/cli.hpp"
#include "bmforge/io.hpp"

using namespace bmforge;

namespace {
const std::string kSpecs = BMFORGE_SPEC_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

std::string spec(const std::string& name) { return kSpecs + "/" + name; }
}  // namespace

TEST_CASE("cli measure") {
  const auto r = run({"measure", "--measure", spec("gauss2.json"), "--body", spec("square.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("body,measure,backend,value,stderr,nodes\n") == 0);
  CHECK(r.out.find(",radial,0.466064942674,0,") != std::string::npos);
  const auto j = Json::parse(r.err);
  CHECK(j["schema"] == 1);
}

TEST_CASE("cli exponent and exit codes") {
  const auto h = run({"exponent", "--measure", spec("lebesgue2.json"), "--bodyK", spec("square.json"), "--bodyL",
                      spec("sq2x.json"), "--grid", "9"});
  REQUIRE(h.code == kExitOk);
  CHECK(Json::parse(h.err)["p_star"].get<double>() >= 0.5);
  const auto v = run({"exponent", "--measure", spec("lebesgue2.json"), "--bodyK", spec("square.json"), "--bodyL",
                      spec("thin_rect.json"), "--p-claim", "0.75"});
  CHECK(v.code == kExitViolation);
  const auto missing = run({"measure", "--measure", spec("gauss2.json")});
  CHECK(missing.code == kExitError);
  const auto bad = run({"measure", "--measure", spec("nope.json"), "--body", spec("square.json")});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("malformed spec") != std::string::npos);
}

TEST_CASE("cli certify") {
  const auto p1 = run({"certify", "--prop", "prop1", "--measure", spec("gauss2.json"), "--body", spec("square.json"),
                       "--u", "potential"});
  REQUIRE(p1.code == kExitOk);
  const auto j = Json::parse(p1.out);
  CHECK(std::abs(j["slack"].get<double>()) <= 1e-8);
  const auto kp = run({"certify", "--prop", "keyprop", "--measure", spec("lebesgue2.json"), "--body",
                       spec("thin_rect.json"), "--grid", "32"});
  REQUIRE(kp.code == kExitOk);
  CHECK(Json::parse(kp.out)["p_certified"].get<double>() >= 0.48);
}

TEST_CASE("cli output is deterministic") {
  const auto dir = std::filesystem::temp_directory_path();
  auto once = [&](const std::string& tag) {
    const auto path = (dir / ("bmforge_det_" + tag + ".csv")).string();
    const auto r = run({"measure", "--measure", spec("gauss2.json"), "--body", spec("parallelogram.json"),
                        "--backend", "mc", "--budget", "20000", "--seed", "7", "--out", path, "--summary",
                        (dir / ("bmforge_det_" + tag + ".json")).string()});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto a = once("a");
  const auto b = once("b");
  CHECK(a == b);
  CHECK(a.find(",mc,") != std::string::npos);
}
