#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"
#include "bmforge/test_functions.hpp"

namespace bmforge {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses text as JSON; syntax errors become MalformedSpec with line and column.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

/// {"family": "gaussian"|"product_p"|"radial_p"|"lebesgue", "p": real, "dim": n,
///  "transform": [[...], ...] (optional pushforward)}
LogConcaveMeasure measure_from_json(const Json& j, const std::string& origin = "measure");
/// {"family": ..., "p", "dim"} or {"family": "smoothed_l1", "dim", "eps"}.
PotentialPtr potential_from_json(const Json& j, const std::string& origin = "potential");
/// {"type": "hpolytope"|"vpolygon"|"lp_ball"|"ellipsoid"|"sublevel"|"box"|"whole_space", ...}
ConvexBody body_from_json(const Json& j, const std::string& origin = "body");
/// "potential", "half_square", "linear:a,b,...", or {"terms": [{"coef": c, "exp": [..]}, ...]}.
TestFunctionPtr test_function_from_json(const Json& j, const LogConcaveMeasure& mu, const std::string& origin = "u");

Json body_to_json(const ConvexBody& K);
Json measure_to_json(const LogConcaveMeasure& mu);

/// Fixed 12 significant digits; inf and nan spelled out.
std::string format_number(double x);
/// Finite numbers as numbers, others as strings.
Json json_number(double x);

using CsvCell = std::variant<std::string, double, long long>;

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<CsvCell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace bmforge
