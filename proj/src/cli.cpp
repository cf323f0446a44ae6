#include "bmforge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>

#include "bmforge/certificates.hpp"
#include "bmforge/exponent.hpp"
#include "bmforge/io.hpp"
#include "bmforge/parallel.hpp"
#include "bmforge/radial.hpp"
#include "bmforge/random_bodies.hpp"
#include "bmforge/spectral.hpp"
#include "bmforge/unimodal.hpp"

namespace bmforge {

namespace {

struct Common {
  std::string measure;
  std::string body;
  std::string backend = "radial";
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;
  std::string summary;
};

struct Sinks {
  std::ostream& out;
  std::ostream& err;
  std::unique_ptr<std::ofstream> out_file;
  std::unique_ptr<std::ofstream> summary_file;

  Sinks(const Common& c, std::ostream& o, std::ostream& e) : out(o), err(e) {
    if (!c.out.empty()) {
      out_file = std::make_unique<std::ofstream>(c.out, std::ios::binary);
      if (!*out_file) fail(ErrorKind::InvalidArgument, "cannot write " + c.out);
    }
    if (!c.summary.empty()) {
      summary_file = std::make_unique<std::ofstream>(c.summary, std::ios::binary);
      if (!*summary_file) fail(ErrorKind::InvalidArgument, "cannot write " + c.summary);
    }
  }
  std::ostream& table() { return out_file ? *out_file : out; }
  std::ostream& report() { return summary_file ? *summary_file : err; }
  void summary(Json j) {
    j["schema"] = kSchemaVersion;
    report() << j.dump(2) << '\n';
  }
};

void add_common(CLI::App* sub, Common& c, bool backend) {
  sub->add_option("--out", c.out, "CSV output path (default stdout)");
  sub->add_option("--summary", c.summary, "JSON summary path (default stderr)");
  sub->add_option("--seed", c.seed, "root seed");
  if (backend) {
    sub->add_option("--backend", c.backend, "radial, grid or mc")->check(CLI::IsMember({"radial", "grid", "mc"}));
    sub->add_option("--budget", c.budget, "node budget (0 picks the default)");
    sub->add_option("--tol", c.tol, "relative tolerance");
  }
}

Backend backend_of(const Common& c) { return parse_backend(c.backend); }

int cmd_measure(const Common& c, std::ostream& o, std::ostream& e) {
  const auto mu = measure_from_json(load_json_file(c.measure), c.measure);
  const auto K = body_from_json(load_json_file(c.body), c.body);
  const auto m = body_measure(mu, K, backend_of(c), c.budget, c.seed, c.tol);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"body", "measure", "backend", "value", "stderr", "nodes"});
  w.row({K.describe(), mu.describe(), std::string(backend_name(m.backend)), m.value, m.std_error,
         static_cast<long long>(m.nodes)});
  s.summary({{"command", "measure"},
             {"value", json_number(m.value)},
             {"error", json_number(m.error)},
             {"stderr", json_number(m.std_error)},
             {"converged", m.converged}});
  return kExitOk;
}

struct ExponentArgs {
  std::string bodyK, bodyL;
  int grid = 33;
  std::optional<double> p_claim;
};

int cmd_exponent(const Common& c, const ExponentArgs& a, std::ostream& o, std::ostream& e) {
  const auto mu = measure_from_json(load_json_file(c.measure), c.measure);
  const auto K = body_from_json(load_json_file(a.bodyK), a.bodyK);
  const auto L = body_from_json(load_json_file(a.bodyL), a.bodyL);
  ScanOptions so;
  so.backend = backend_of(c);
  so.budget = c.budget;
  so.seed = c.seed;
  so.rel_tol = c.tol;
  const auto r = interpolation_scan(mu, K, L, default_lambda_grid(a.grid), so);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"lambda", "m", "err"});
  for (const auto& pt : r.points) w.row({pt.lambda, pt.ok ? pt.m : std::numeric_limits<double>::quiet_NaN(), pt.error});
  Json bounds = Json::array();
  for (const auto& b : r.reference_bounds) bounds.push_back({{"name", b.name}, {"value", json_number(b.value)}, {"rate", b.rate}});
  Json j{{"command", "exponent"},
         {"p_star", json_number(r.p_star)},
         {"at_cap", r.at_cap},
         {"partial", r.partial},
         {"bounds", bounds},
         {"caveat", kBoundCaveat}};
  int code = r.partial ? kExitError : kExitOk;
  if (a.p_claim) {
    const auto sl = slack_at(r, *a.p_claim);
    j["p_claim"] = *a.p_claim;
    j["slack"] = json_number(sl.slack);
    j["slack_error"] = json_number(sl.error);
    j["slack_lambda"] = sl.lambda;
    j["violation"] = !sl.pass;
    if (!sl.pass) code = kExitViolation;
  }
  s.summary(j);
  return code;
}

struct SpectralArgs {
  int grid = 0;
  bool even = false;
};

int cmd_spectral(const Common& c, const SpectralArgs& a, std::ostream& o, std::ostream& e) {
  const auto mu = measure_from_json(load_json_file(c.measure), c.measure);
  const auto K = body_from_json(load_json_file(c.body), c.body);
  SpectralOptions so;
  so.grid = a.grid;
  const auto r = a.even ? even_poincare(mu, K, so) : poincare(mu, K, so);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"domain", "grid", "lambda1", "C_poin", "convergence"});
  w.row({K.describe(), static_cast<long long>(r.grid), r.lambda1, r.C_poin, r.convergence});
  s.summary({{"command", "spectral"},
             {"C_poin", json_number(r.C_poin)},
             {"lambda1", json_number(r.lambda1)},
             {"convergence", json_number(r.convergence)},
             {"even", r.even},
             {"richardson", r.richardson},
             {"grid", r.grid},
             {"coarse_grid", r.coarse_grid}});
  return kExitOk;
}

struct CertifyArgs {
  std::string prop;
  std::string u;
  std::string bodyA;
  std::optional<double> cpoin;
  std::optional<double> p;
  std::optional<double> k1;
  double alpha = 10.0;
  int grid = 0;
};

Json report_json(const CertificateReport& r) {
  return {{"lhs", json_number(r.lhs)},
          {"rhs", json_number(r.rhs)},
          {"slack", json_number(r.slack)},
          {"error", json_number(r.error)},
          {"pass", r.pass},
          {"vacuous", r.vacuous},
          {"divergent", r.divergent},
          {"p_certified", json_number(r.p_certified)},
          {"mean_Lu", json_number(r.mean_Lu)},
          {"var_Lu", json_number(r.var_Lu)},
          {"denominator", json_number(r.denominator)},
          {"t_star", json_number(r.t_star)},
          {"grid", r.grid},
          {"note", r.note}};
}

TestFunctionPtr parse_u(const std::string& spec, const LogConcaveMeasure& mu, const std::string& fallback) {
  const std::string s = spec.empty() ? fallback : spec;
  if (!s.empty() && s.front() == '{') return test_function_from_json(parse_json_text(s, "--u"), mu, "--u");
  return test_function_from_json(Json(s), mu, "--u");
}

int cmd_certify(const Common& c, const CertifyArgs& a, std::ostream& o, std::ostream& e) {
  const auto mu = measure_from_json(load_json_file(c.measure), c.measure);
  Json j{{"command", "certify"}, {"prop", a.prop}, {"measure", mu.describe()}};
  bool pass = true;
  if (a.prop == "sublevel") {
    const auto sb = sublevel_body(mu, a.alpha);
    pass = sb.measure >= 0.9 && sb.ball_contained && sb.max_gradient <= sb.gradient_bound;
    j.update({{"alpha", a.alpha},
              {"level", json_number(sb.level)},
              {"measure_A", json_number(sb.measure)},
              {"measure_error", json_number(sb.measure_error)},
              {"ball_contained", sb.ball_contained},
              {"max_gradient", json_number(sb.max_gradient)},
              {"gradient_bound", json_number(sb.gradient_bound)},
              {"pass", pass}});
  } else {
    const auto K = body_from_json(load_json_file(c.body), c.body);
    j["body"] = K.describe();
    IntegrationOptions io;
    io.rel_tol = c.tol;
    io.budget = c.budget;
    io.seed = c.seed;
    if (a.prop == "keyprop") {
      const double p = a.p.value_or(1.0 / mu.dim());
      CertificateReport r;
      if (a.u.empty() || a.u == "torsion") {
        const auto t = solve_torsion(mu, K, [](const Vec&, const Vec&) { return 1.0; }, a.grid);
        r = check_keyprop(mu, t.field, p);
        j["torsion"] = {{"C", json_number(t.C)},
                        {"residual", json_number(t.residual)},
                        {"boundary_defect", json_number(t.boundary_defect)},
                        {"solver_iterations", t.solver_iterations}};
      } else {
        r = check_keyprop(mu, K, *parse_u(a.u, mu, ""), p, io);
      }
      j["p"] = p;
      j.update(report_json(r));
      pass = r.pass;
    } else if (a.prop == "prop2") {
      const auto A = a.bodyA.empty() ? K : body_from_json(load_json_file(a.bodyA), a.bodyA);
      double C = 0.0;
      if (a.cpoin) {
        C = *a.cpoin;
      } else {
        SpectralOptions so;
        so.grid = a.grid;
        const auto sp = poincare(mu, A, so);
        C = sp.C_poin + sp.convergence;
      }
      const auto r = check_prop2(mu, K, A, *parse_u(a.u, mu, "half_square"), C, io);
      j["C_poin"] = json_number(C);
      j.update(report_json(r));
      pass = r.pass;
    } else if (a.prop == "prop1") {
      const auto r = check_prop1(mu, K, *parse_u(a.u, mu, "potential"), io);
      j.update(report_json(r));
      pass = r.pass;
    } else if (a.prop == "meas-simple") {
      const auto b = meas_simple_bound(mu, K, a.k1);
      j.update({{"bound", json_number(b.bound)},
                {"k1", json_number(b.k1)},
                {"avg_LV", json_number(b.avg_LV)},
                {"error", json_number(b.error)},
                {"infinite", b.infinite}});
    } else {
      fail(ErrorKind::InvalidArgument, "unknown proposition '" + a.prop + "'");
    }
  }
  j["schema"] = kSchemaVersion;
  Sinks s(c, o, e);
  s.table() << j.dump(2) << '\n';
  return pass ? kExitOk : kExitViolation;
}

struct RadialArgs {
  double p = 2.0;
  double q = 2.0;
  int n_max = 64;
  int k_max = 64;
};

int cmd_radial(const Common& c, const RadialArgs& a, std::ostream& o, std::ostream& e) {
  const auto lm = lemma_maybe_suite(a.p, a.q, 2, a.n_max);
  const RadialProfile prof(make_product_potential(1, a.p), Vec::Ones(1));
  const auto br = bracket_suite(prof, 4, a.k_max);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"suite", "index", "value", "derived"});
  for (const auto& r : lm.rows) w.row({std::string("ratio"), static_cast<long long>(r.n), r.sup_ratio, r.normalized});
  for (const auto& r : br.rows) w.row({std::string("bracket"), static_cast<long long>(r.k), r.ratio, r.tail_ratio});
  const bool pass = lm.pass && br.pass;
  s.summary({{"command", "radial"},
             {"p", a.p},
             {"q", a.q},
             {"ratio_constant", json_number(lm.fit.constant)},
             {"ratio_validation_slack", json_number(lm.fit.validation_slack)},
             {"ratio_slope", json_number(lm.slope)},
             {"bracket_lower_ok", br.lower_ok},
             {"bracket_upper_constant", json_number(br.upper_fit.constant)},
             {"tail_c", json_number(br.tail_c)},
             {"pass", pass}});
  return pass ? kExitOk : kExitViolation;
}

struct EntArgs {
  double p = 1.5;
  double q = 2.0;
  int fit_bodies = 8;
};

int cmd_ent(const Common& c, const EntArgs& a, std::ostream& o, std::ostream& e) {
  const auto K = body_from_json(load_json_file(c.body), c.body);
  const auto fit = fit_unimod_constant(a.p, a.q, 3, a.fit_bodies, c.seed);
  const auto m = check_unimod_moment(a.p, a.q, K, fit.fit.constant);
  const auto mono = check_monotone_form(LogConcaveMeasure::product_p(K.dim(), a.p), a.q, K);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"body", "p", "q", "lhs", "measure", "ratio", "constant", "bound", "pass"});
  w.row({K.describe(), a.p, a.q, m.lhs, m.measure, m.ratio, fit.fit.constant, m.bound,
         static_cast<long long>(m.pass)});
  const bool pass = m.pass && fit.fit.pass && mono.pass;
  s.summary({{"command", "ent-check"},
             {"constant", json_number(fit.fit.constant)},
             {"full_space_value", json_number(fit.exact)},
             {"validation_slack", json_number(fit.fit.validation_slack)},
             {"monotone_slack", json_number(mono.slack)},
             {"monotone_error", json_number(mono.error)},
             {"pass", pass}});
  return pass ? kExitOk : kExitViolation;
}

struct SweepArgs {
  double p_claim = 0.5;
  std::size_t trials = 20;
  std::string family = "polygons";
  int grid = 33;
};

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& o, std::ostream& e) {
  const auto mu = measure_from_json(load_json_file(c.measure), c.measure);
  require(mu.dim() == 2, ErrorKind::InvalidArgument, "sweep generators produce planar bodies");
  PairGenerator gen;
  if (a.family == "polygons") {
    gen = [](std::mt19937_64& rng) {
      auto K = random_symmetric_polygon(rng);
      return std::make_pair(K, random_symmetric_polygon(rng));
    };
  } else {
    gen = [](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> U(2.0, 40.0);
      const double ratio = U(rng);
      return std::make_pair(ConvexBody::box(Vec::Ones(2)), ConvexBody::box(Vec(Eigen::Vector2d(0.2, 0.2 / ratio))));
    };
  }
  ScanOptions so;
  so.backend = backend_of(c);
  so.budget = c.budget;
  so.seed = c.seed;
  so.rel_tol = c.tol;
  const auto r = falsification_sweep(mu, gen, a.p_claim, a.trials, c.seed, default_lambda_grid(a.grid), so);
  Sinks s(c, o, e);
  CsvWriter w(s.table(), {"trial", "min_slack", "error", "lambda", "pass"});
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    const auto& sl = r.per_trial[t];
    w.row({static_cast<long long>(t), sl.slack, sl.error, sl.lambda, static_cast<long long>(sl.pass)});
  }
  Json witness = Json::array();
  for (const auto& B : r.witness) witness.push_back(body_to_json(B));
  s.summary({{"command", "sweep"},
             {"p_claim", a.p_claim},
             {"trials", r.trials},
             {"violations", r.violations},
             {"worst_slack", json_number(r.worst_slack)},
             {"worst_error", json_number(r.worst_error)},
             {"worst_lambda", r.worst_lambda},
             {"worst_trial", r.worst_trial},
             {"witness", witness}});
  return r.violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimensional Brunn-Minkowski laboratory"};
  app.require_subcommand(1);
  Common common;
  ExponentArgs ex;
  SpectralArgs sp;
  CertifyArgs ce;
  RadialArgs ra;
  EntArgs en;
  SweepArgs sw;
  std::function<int()> action;

  auto* measure = app.add_subcommand("measure", "mu(K) by the chosen backend");
  measure->add_option("--measure", common.measure, "measure spec (JSON)")->required();
  measure->add_option("--body", common.body, "body spec (JSON)")->required();
  add_common(measure, common, true);
  measure->callback([&] { action = [&] { return cmd_measure(common, out, err); }; });

  auto* exponent = app.add_subcommand("exponent", "scan mu((1 - t) K + t L) and estimate the exponent");
  exponent->add_option("--measure", common.measure, "measure spec (JSON)")->required();
  exponent->add_option("--bodyK", ex.bodyK, "body at t = 0")->required();
  exponent->add_option("--bodyL", ex.bodyL, "body at t = 1")->required();
  exponent->add_option("--grid", ex.grid, "number of lambda points")->check(CLI::Range(3, 1025));
  exponent->add_option("--p-claim", ex.p_claim, "exit 2 when this exponent fails");
  add_common(exponent, common, true);
  exponent->callback([&] { action = [&] { return cmd_exponent(common, ex, out, err); }; });

  auto* spectral = app.add_subcommand("spectral", "Poincare constant of mu restricted to K (n <= 2)");
  spectral->add_option("--measure", common.measure, "measure spec (JSON)")->required();
  spectral->add_option("--body", common.body, "body spec (JSON)")->required();
  spectral->add_option("--grid", sp.grid, "cells along the longest axis");
  spectral->add_flag("--even", sp.even, "restrict to even functions");
  add_common(spectral, common, false);
  spectral->callback([&] { action = [&] { return cmd_spectral(common, sp, out, err); }; });

  auto* certify = app.add_subcommand("certify", "evaluate a certificate inequality");
  certify->add_option("--prop", ce.prop, "certificate to evaluate")
      ->required()
      ->check(CLI::IsMember({"keyprop", "prop2", "prop1", "meas-simple", "sublevel"}));
  certify->add_option("--measure", common.measure, "measure spec (JSON)")->required();
  certify->add_option("--body", common.body, "body spec (JSON)");
  certify->add_option("--bodyA", ce.bodyA, "inner body for prop2 (default K)");
  certify->add_option("--u", ce.u, "potential, half_square, linear:a,b, torsion or JSON polynomial");
  certify->add_option("--cpoin", ce.cpoin, "Poincare constant for prop2 (default: computed on A)");
  certify->add_option("--p", ce.p, "exponent for keyprop (default 1/n)");
  certify->add_option("--k1", ce.k1, "curvature lower bound for meas-simple");
  certify->add_option("--alpha", ce.alpha, "sublevel parameter");
  certify->add_option("--grid", ce.grid, "PDE / spectral grid");
  add_common(certify, common, true);
  certify->callback([&] {
    if (ce.prop != "sublevel" && common.body.empty()) throw CLI::RequiredError("--body");
    action = [&] { return cmd_certify(common, ce, out, err); };
  });

  auto* radial = app.add_subcommand("radial", "radial integral lemmas");
  radial->add_option("--p", ra.p, "potential exponent");
  radial->add_option("--q", ra.q, "moment exponent");
  radial->add_option("--nmax", ra.n_max, "largest dimension")->check(CLI::Range(3, 4096));
  radial->add_option("--kmax", ra.k_max, "largest bracket index")->check(CLI::Range(5, 4096));
  add_common(radial, common, false);
  radial->callback([&] { action = [&] { return cmd_radial(common, ra, out, err); }; });

  auto* ent = app.add_subcommand("ent-check", "moment bound for product measures restricted to K");
  ent->add_option("--p", en.p, "product exponent in [1, 2]")->check(CLI::Range(1.0, 2.0));
  ent->add_option("--q", en.q, "moment exponent")->check(CLI::PositiveNumber);
  ent->add_option("--body", common.body, "body spec (JSON)")->required();
  ent->add_option("--fit-bodies", en.fit_bodies, "random bodies per dimension in the fit");
  add_common(ent, common, false);
  ent->callback([&] { action = [&] { return cmd_ent(common, en, out, err); }; });

  auto* sweep = app.add_subcommand("sweep", "search random pairs for violations of an exponent");
  sweep->add_option("--measure", common.measure, "measure spec (JSON)")->required();
  sweep->add_option("--p-claim", sw.p_claim, "exponent under test")->required();
  sweep->add_option("--trials", sw.trials, "random pairs");
  sweep->add_option("--family", sw.family, "pair generator")->check(CLI::IsMember({"polygons", "rectangles"}));
  sweep->add_option("--grid", sw.grid, "number of lambda points")->check(CLI::Range(3, 1025));
  add_common(sweep, common, true);
  sweep->callback([&] { action = [&] { return cmd_sweep(common, sw, out, err); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace bmforge
