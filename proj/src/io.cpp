#include "bmforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bmforge {

namespace {

[[noreturn]] void malformed(const std::string& origin, const std::string& field, const std::string& what) {
  fail(ErrorKind::MalformedSpec, origin + ": field '" + field + "': " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& origin, const std::string& path) {
  if (!j.is_object()) malformed(origin, path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(origin, path + "/" + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& key, const std::string& origin, const std::string& path) {
  const Json& v = member(j, key, origin, path);
  if (!v.is_number()) malformed(origin, path + "/" + key, "expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback, const std::string& origin,
                 const std::string& path) {
  return j.contains(key) ? number(j, key, origin, path) : fallback;
}

int integer(const Json& j, const std::string& key, const std::string& origin, const std::string& path) {
  const Json& v = member(j, key, origin, path);
  if (!v.is_number_integer()) malformed(origin, path + "/" + key, "expected an integer");
  return v.get<int>();
}

Vec vector_of(const Json& v, const std::string& origin, const std::string& path) {
  if (!v.is_array() || v.empty()) malformed(origin, path, "expected a non-empty array of numbers");
  Vec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) malformed(origin, path + "/" + std::to_string(i), "expected a number");
    out[static_cast<int>(i)] = v[i].get<double>();
  }
  return out;
}

Mat matrix_of(const Json& v, const std::string& origin, const std::string& path) {
  if (!v.is_array() || v.empty()) malformed(origin, path, "expected a non-empty array of rows");
  const Vec first = vector_of(v[0], origin, path + "/0");
  Mat M(static_cast<int>(v.size()), first.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec r = vector_of(v[i], origin, path + "/" + std::to_string(i));
    if (r.size() != first.size()) malformed(origin, path + "/" + std::to_string(i), "rows differ in length");
    M.row(static_cast<int>(i)) = r.transpose();
  }
  return M;
}

std::string string_of(const Json& j, const std::string& key, const std::string& origin, const std::string& path) {
  const Json& v = member(j, key, origin, path);
  if (!v.is_string()) malformed(origin, path + "/" + key, "expected a string");
  return v.get<std::string>();
}

// Rethrow library errors raised while building an object as spec errors.
template <class F>
auto build(const std::string& origin, const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedSpec) throw;
    malformed(origin, path, e.what());
  }
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::MalformedSpec, origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                       ": invalid JSON");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MalformedSpec, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

PotentialPtr potential_from_json(const Json& j, const std::string& origin) {
  const std::string family = string_of(j, "family", origin, "");
  const int n = integer(j, "dim", origin, "");
  if (n < 1 || n > 64) malformed(origin, "/dim", "dimension must lie in [1, 64]");
  if (family == "smoothed_l1") {
    const double eps = number_or(j, "eps", 0.05, origin, "");
    return build(origin, "/eps", [&] { return make_smoothed_l1_potential(n, eps); });
  }
  return measure_from_json(j, origin).potential_ptr();
}

LogConcaveMeasure measure_from_json(const Json& j, const std::string& origin) {
  const std::string family = string_of(j, "family", origin, "");
  const int n = integer(j, "dim", origin, "");
  if (n < 1 || n > 64) malformed(origin, "/dim", "dimension must lie in [1, 64]");
  auto base = [&]() -> LogConcaveMeasure {
    if (family == "gaussian") return LogConcaveMeasure::gaussian(n);
    if (family == "lebesgue") return LogConcaveMeasure::lebesgue(n);
    if (family == "product_p" || family == "radial_p") {
      const double p = number(j, "p", origin, "");
      if (!(p >= 1.0)) malformed(origin, "/p", "p must be at least 1");
      return build(origin, "/p", [&] {
        return family == "product_p" ? LogConcaveMeasure::product_p(n, p) : LogConcaveMeasure::radial_p(n, p);
      });
    }
    malformed(origin, "/family", "unknown family '" + family + "'");
  }();
  if (!j.contains("transform")) return base;
  const Mat T = matrix_of(j["transform"], origin, "/transform");
  if (T.rows() != n || T.cols() != n) malformed(origin, "/transform", "expected an n x n matrix");
  return build(origin, "/transform", [&] { return LogConcaveMeasure::pushforward(base, T); });
}

ConvexBody body_from_json(const Json& j, const std::string& origin) {
  const std::string type = string_of(j, "type", origin, "");
  if (type == "hpolytope") {
    const Mat A = matrix_of(member(j, "A", origin, ""), origin, "/A");
    const Vec b = vector_of(member(j, "b", origin, ""), origin, "/b");
    if (b.size() != A.rows()) malformed(origin, "/b", "length must match the rows of A");
    return build(origin, "", [&] { return ConvexBody::hpolytope(A, b); });
  }
  if (type == "vpolygon") {
    const Json& pts = member(j, "points", origin, "");
    if (!pts.is_array() || pts.size() < 3) malformed(origin, "/points", "expected at least three points");
    PointList P;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec v = vector_of(pts[i], origin, "/points/" + std::to_string(i));
      if (v.size() != 2) malformed(origin, "/points/" + std::to_string(i), "expected a point in the plane");
      P.push_back(v);
    }
    return build(origin, "/points", [&] { return ConvexBody::vpolygon(P); });
  }
  if (type == "box") {
    const Vec w = vector_of(member(j, "half_widths", origin, ""), origin, "/half_widths");
    return build(origin, "/half_widths", [&] { return ConvexBody::box(w); });
  }
  if (type == "lp_ball") {
    const int n = integer(j, "dim", origin, "");
    const double p = number(j, "p", origin, "");
    const double r = number_or(j, "r", 1.0, origin, "");
    return build(origin, "", [&] { return ConvexBody::lp_ball(n, p, r); });
  }
  if (type == "ellipsoid") {
    const Mat M = matrix_of(member(j, "M", origin, ""), origin, "/M");
    return build(origin, "/M", [&] { return ConvexBody::ellipsoid(M); });
  }
  if (type == "sublevel") {
    const PotentialPtr W = potential_from_json(member(j, "potential", origin, ""), origin + "/potential");
    const double q = number(j, "q", origin, "");
    return build(origin, "", [&] { return ConvexBody::sublevel(W, q); });
  }
  if (type == "whole_space") return ConvexBody::whole_space(integer(j, "dim", origin, ""));
  malformed(origin, "/type", "unknown body type '" + type + "'");
}

TestFunctionPtr test_function_from_json(const Json& j, const LogConcaveMeasure& mu, const std::string& origin) {
  const int n = mu.dim();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "potential") return potential_function(mu.potential_ptr());
    if (s == "half_square") return half_square_norm(n);
    if (s.rfind("linear:", 0) == 0) {
      std::vector<double> c;
      std::stringstream ss(s.substr(7));
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          c.push_back(std::stod(tok));
        } catch (const std::exception&) {
          malformed(origin, "", "bad coefficient '" + tok + "'");
        }
      }
      if (static_cast<int>(c.size()) != n) malformed(origin, "", "linear function needs one coefficient per axis");
      return linear_function(Eigen::Map<const Vec>(c.data(), n));
    }
    malformed(origin, "", "unknown function '" + s + "'");
  }
  const Json& terms = member(j, "terms", origin, "");
  if (!terms.is_array() || terms.empty()) malformed(origin, "/terms", "expected a non-empty array");
  std::vector<Monomial> mono;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "/terms/" + std::to_string(i);
    Monomial m;
    m.coef = number(terms[i], "coef", origin, path);
    const Vec e = vector_of(member(terms[i], "exp", origin, path), origin, path + "/exp");
    if (e.size() != n) malformed(origin, path + "/exp", "expected one exponent per axis");
    for (int k = 0; k < n; ++k) {
      if (e[k] < 0 || e[k] != std::floor(e[k])) malformed(origin, path + "/exp", "exponents must be natural numbers");
      m.exponents.push_back(static_cast<int>(e[k]));
    }
    mono.push_back(m);
  }
  return std::make_shared<Polynomial>(n, std::move(mono));
}

Json body_to_json(const ConvexBody& K) {
  Json j;
  j["dim"] = K.dim();
  j["description"] = K.describe();
  if (const auto v = K.polygon_vertices()) {
    Json pts = Json::array();
    for (const auto& p : *v) pts.push_back({json_number(p[0]), json_number(p[1])});
    j["type"] = "vpolygon";
    j["points"] = pts;
  }
  return j;
}

Json measure_to_json(const LogConcaveMeasure& mu) {
  Json j;
  j["family"] = std::string(family_name(mu.base_family()));
  j["dim"] = mu.dim();
  j["p"] = json_number(mu.p());
  j["description"] = mu.describe();
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  std::vector<CsvCell> cells(header.begin(), header.end());
  row(cells);
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  require(cells.size() == columns_, ErrorKind::InvalidArgument, "csv row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (const auto* s = std::get_if<std::string>(&cells[i])) {
      if (s->find_first_of(",\"\n") == std::string::npos) {
        out_ << *s;
      } else {
        out_ << '"';
        for (char c : *s) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
      }
    } else if (const auto* d = std::get_if<double>(&cells[i])) {
      out_ << format_number(*d);
    } else {
      out_ << std::get<long long>(cells[i]);
    }
  }
  out_ << '\n';
}

}  // namespace bmforge
