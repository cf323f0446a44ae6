// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bmforge/certificates.hpp"
#include "bmforge/cli.hpp"
#include "bmforge/exponent.hpp"
#include "bmforge/gauss_kronrod.hpp"
#include "bmforge/parallel.hpp"
#include "bmforge/radial.hpp"
#include "bmforge/random_bodies.hpp"
#include "bmforge/spectral.hpp"
#include "bmforge/unimodal.hpp"
#include "bmforge/whitening.hpp"

using namespace bmforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome gaussian_bm() {
  const auto mu = LogConcaveMeasure::gaussian(2);
  const auto grid = default_lambda_grid(33);
  const std::size_t trials = 100;
  std::vector<SlackAt> slack(trials);
  std::vector<double> max_err(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = make_stream(2024, t);
    const auto K = random_symmetric_polygon(rng);
    const auto L = random_symmetric_polygon(rng);
    const auto r = interpolation_scan(mu, K, L, grid);
    slack[t] = slack_at(r, 0.5);
    for (const auto& pt : r.points) max_err[t] = std::max(max_err[t], pt.error);
  });
  Outcome o;
  double worst = kInf, err = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    o.pass = o.pass && slack[t].pass && max_err[t] <= 1e-6;
    worst = std::min(worst, slack[t].slack);
    err = std::max(err, max_err[t]);
  }
  o.detail = fmt("min slack %.3g, max quadrature error %.2g over 100 pairs x 33 lambdas", worst, err);
  return o;
}

Outcome lebesgue_sharpness() {
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto grid = default_lambda_grid(33);
  const auto h = interpolation_scan(leb, ConvexBody::box(v2(1, 1)), ConvexBody::box(v2(2, 2)), grid);
  double worst_h = 0.0;
  const double a0 = std::sqrt(h.points.front().m), a1 = std::sqrt(h.points.back().m);
  for (const auto& pt : h.points)
    worst_h = std::max(worst_h, std::abs(std::sqrt(pt.m) - (1 - pt.lambda) * a0 - pt.lambda * a1));
  const auto r = interpolation_scan(leb, ConvexBody::box(v2(1, 1)), ConvexBody::box(v2(0.2, 0.01)), grid);
  const auto f = slack_at(r, 0.75);
  Outcome o;
  o.pass = worst_h <= 3e-10 && r.p_star >= 0.5 && r.p_star <= 0.56 && f.slack < 0 && !f.pass;
  o.detail = fmt("homothet |slack| %.2g, 20:1 p_star %.4f, slack at 0.75 %.3g", worst_h, r.p_star, f.slack);
  return o;
}

Outcome poincare_constants() {
  Outcome o;
  const auto a = poincare_1d(LogConcaveMeasure::lebesgue(1), 0.0, 1.0);
  const auto b = poincare(LogConcaveMeasure::lebesgue(2), ConvexBody::box(v2(0.5, 0.5)));
  const bool leb = std::abs(a.C_poin * kPi - 1) <= 0.01 && std::abs(b.C_poin * kPi - 1) <= 0.02;
  const auto g = LogConcaveMeasure::gaussian(2);
  std::vector<ConvexBody> domains = {ConvexBody::box(v2(1, 1)),          ConvexBody::box(v2(2, 0.5)),
                                     ConvexBody::box(v2(3, 3)),          ConvexBody::lp_ball(2, 2.0, 1.5),
                                     ConvexBody::lp_ball(2, 1.0, 2.0),   ConvexBody::whole_space(2)};
  for (std::uint64_t t = 0; t < 3; ++t) {
    auto rng = make_stream(77, t);
    domains.push_back(random_symmetric_polygon(rng));
  }
  double worst = -kInf, worst_even = -kInf;
  for (const auto& K : domains) {
    const auto r = poincare(g, K);
    worst = std::max(worst, r.C_poin - (1.0 + r.convergence));
    const auto e = even_poincare(g, K);
    worst_even = std::max(worst_even, e.C_poin - (1.0 / std::sqrt(2.0) + e.convergence));
  }
  const auto g1 = poincare(LogConcaveMeasure::gaussian(1), ConvexBody::box(Vec::Constant(1, 1.3)));
  worst = std::max(worst, g1.C_poin - (1.0 + g1.convergence));
  o.pass = leb && worst <= 0.0 && worst_even <= 0.0;
  o.detail = fmt("pi C on [0,1]: %.6f, on [0,1]^2: %.6f, max excess over bound %.3g", a.C_poin * kPi,
                 b.C_poin * kPi, std::max(worst, worst_even));
  return o;
}

Outcome brascamp_lieb() {
  Mat T(2, 2);
  T << 1.0, 0.5, 0.0, 0.8;
  const std::vector<LogConcaveMeasure> measures = {
      LogConcaveMeasure::gaussian(2), LogConcaveMeasure::product_p(2, 1.5), LogConcaveMeasure::radial_p(2, 1.5),
      LogConcaveMeasure::pushforward(LogConcaveMeasure::gaussian(2), T)};
  const std::size_t trials = 200;
  std::vector<VarianceCheck> res(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = make_stream(4242, t);
    const auto& mu = measures[t % measures.size()];
    const auto K = random_symmetric_polygon(rng);
    const auto f = random_polynomial(rng, 2, 1 + static_cast<int>(t % 4), Parity::Any);
    res[t] = brascamp_lieb_check(mu, K, *f);
  });
  Outcome o;
  double worst = kInf;
  for (const auto& r : res) {
    o.pass = o.pass && r.pass;
    worst = std::min(worst, r.slack / std::max(r.error, 1e-300));
  }
  const auto eq = brascamp_lieb_check(LogConcaveMeasure::gaussian(2), ConvexBody::whole_space(2),
                                      *linear_function(v2(0.6, -0.8)));
  o.pass = o.pass && std::abs(eq.slack) <= 1e-6;
  o.detail = fmt("min slack/error %.3g over 200 triples, linear-f equality gap %.2g", worst, std::abs(eq.slack));
  return o;
}

Outcome radial_lemmas() {
  Outcome o;
  double min_slack = kInf;
  for (double p : {1.0, 2.0}) {
    for (double q : {1.0, 2.0, 4.0}) {
      const auto r = lemma_maybe_suite(p, q, 2, 64);
      o.pass = o.pass && r.pass;
      min_slack = std::min(min_slack, r.fit.validation_slack);
    }
    const auto b = bracket_suite(RadialProfile(make_product_potential(1, p), Vec::Ones(1)), 4, 64);
    o.pass = o.pass && b.pass;
  }
  o.detail = fmt("min validation slack %.3g (roundoff floor 1e-12)", min_slack);
  return o;
}

Outcome certificates() {
  Outcome o;
  double eq_gap = 0.0;
  for (const auto& mu : {LogConcaveMeasure::gaussian(2), LogConcaveMeasure::radial_p(2, 4.0)}) {
    const auto r = check_prop1(mu, ConvexBody::box(v2(1.0, 0.7)), *potential_function(mu.potential_ptr()));
    o.pass = o.pass && !r.divergent && std::abs(r.slack) <= 3 * r.error + 1e-12;
    eq_gap = std::max(eq_gap, std::abs(r.slack));
  }
  const std::vector<LogConcaveMeasure> measures = {LogConcaveMeasure::gaussian(2), LogConcaveMeasure::product_p(2, 1.5),
                                                   LogConcaveMeasure::radial_p(2, 4.0)};
  const std::size_t trials = 100;
  std::vector<CertificateReport> res(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = make_stream(99, t);
    std::uniform_real_distribution<double> W(0.4, 2.0), S(0.4, 1.0);
    const auto& mu = measures[t % measures.size()];
    const Vec w = v2(W(rng), W(rng));
    const auto K = ConvexBody::box(w);
    const double s = S(rng);
    const auto A = t % 2 == 0 ? ConvexBody::box(s * w) : ConvexBody::lp_ball(2, 2.0, s * w.minCoeff());
    const auto u = random_polynomial(rng, 2, 4, Parity::Even, 2);
    SpectralOptions so;
    so.grid = 64;
    const auto sp = poincare(mu, A, so);
    res[t] = check_prop2(mu, K, A, *u, sp.C_poin + sp.convergence);
  });
  std::size_t vacuous = 0;
  for (const auto& r : res) {
    o.pass = o.pass && r.pass;
    vacuous += r.vacuous;
  }
  double min_p = kInf;
  const auto leb = LogConcaveMeasure::lebesgue(2);
  for (const Vec& w : {v2(1, 1), v2(1, 0.5), v2(2, 0.3), v2(0.5, 0.05)}) {
    const auto t = solve_torsion(leb, ConvexBody::box(w), [](const Vec&, const Vec&) { return 1.0; }, 64);
    min_p = std::min(min_p, check_keyprop(leb, t.field, 0.5).p_certified);
  }
  o.pass = o.pass && min_p >= 0.48;
  o.detail = fmt("prop1 gap %.2g, prop2 vacuous %g/100, torsion p >= %.4f", eq_gap, static_cast<double>(vacuous), min_p);
  return o;
}

Outcome meas_simple() {
  Outcome o;
  double R_star = kInf;
  for (int n : {1, 2}) {
    const auto mu = LogConcaveMeasure::gaussian(n);
    double prev = 0.0;
    double found = kInf;
    for (int i = 1; i <= 40; ++i) {
      const double R = 0.25 * i;
      const auto K = n == 1 ? ConvexBody::box(Vec::Constant(1, R)) : ConvexBody::lp_ball(2, 2.0, R);
      const auto b = meas_simple_bound(mu, K, 1.0);
      const double v = b.infinite ? kInf : b.bound;
      if (v < prev - 3 * b.error) o.pass = false;
      prev = v;
      if (v > 10 && !std::isfinite(found)) found = R;
    }
    if (!std::isfinite(found)) o.pass = false;
    R_star = std::isfinite(R_star) ? std::max(R_star, found) : found;
    const auto whole = integrate_over_body(
        mu, ConvexBody::whole_space(n), [&](const Vec& x, double* v) { v[0] = bregman_terms(mu, x).LV; }, 1);
    if (std::abs(whole.value[0]) > 1e-6) o.pass = false;
  }
  o.detail = fmt("bound exceeds 10 by R = %.2f; whole-space avg LV vanishes", R_star);
  return o;
}

Outcome klartag() {
  Outcome o;
  Mat T(2, 2);
  T << 1.5, 0.4, 0.0, 0.6;
  const auto g = whiten(LogConcaveMeasure::pushforward(LogConcaveMeasure::gaussian(2), T), ConvexBody::whole_space(2));
  const auto l = whiten(LogConcaveMeasure::product_p(2, 1.0), ConvexBody::whole_space(2));
  double min_measure = kInf;
  for (const auto& mu : {g.measure, l.measure}) {
    const auto s = sublevel_body(mu, 10.0);
    o.pass = o.pass && s.measure >= 0.9 && s.ball_contained;
    min_measure = std::min(min_measure, s.measure);
  }
  std::size_t pairs = 0;
  for (const auto& W : {make_gaussian_potential(2), make_smoothed_l1_potential(2, 0.05)}) {
    for (double lambda : {0.25, 0.5}) {
      const auto c = check_gradient_image(W, 20.0, 20.0, lambda, 10000, 5);
      o.pass = o.pass && c.pass && c.pairs >= 10000;
      pairs += c.pairs;
    }
  }
  for (double lambda : {0.25, 0.5, 2.0 / 3.0}) {
    const auto c = check_gradient_image(make_gaussian_potential(3), 20.0, 20.0, lambda, 10000, 6);
    o.pass = o.pass && c.pass && c.pairs >= 10000;
    pairs += c.pairs;
  }
  o.detail = fmt("min mu(A) %.4f, %.0f gradient pairs", min_measure, static_cast<double>(pairs));
  return o;
}

Outcome ent_corollary() {
  Outcome o;
  double worst_identity = 0.0;
  QuadOptions qo;
  qo.rel_tol = 1e-13;
  qo.abs_tol = 0.0;
  for (double p : {1.0, 1.5, 2.0})
    for (double q : {1.0, 2.0}) {
      const auto fit = fit_unimod_constant(p, q, 3, 8, 31);
      o.pass = o.pass && fit.fit.pass;
      // Fubini: n one-dimensional integrals.
      auto w = [&](double t) { return std::exp(-std::pow(t, p) / p); };
      auto m = [&](double t) { return std::pow(t, q) * w(t); };
      const double C1 = (integrate(m, 0, 1, qo).value + integrate(m, 1, 200, qo).value) /
                        (integrate(w, 0, 1, qo).value + integrate(w, 1, 200, qo).value);
      for (int n = 1; n <= 3; ++n) {
        const auto r = check_unimod_moment(p, q, ConvexBody::whole_space(n), C1);
        worst_identity = std::max(worst_identity, std::abs(r.lhs - n * C1));
      }
    }
  o.pass = o.pass && worst_identity <= 1e-6;
  o.detail = fmt("full-space identity error %.2g", worst_identity);
  return o;
}

std::string run_to_string(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

Outcome determinism() {
  const std::string d = BMFORGE_SPEC_DIR;
  const std::vector<std::vector<std::string>> suites = {
      {"measure", "--measure", d + "/gauss2.json", "--body", d + "/parallelogram.json", "--backend", "mc", "--budget",
       "50000", "--seed", "11"},
      {"measure", "--measure", d + "/product15_2.json", "--body", d + "/disc.json", "--backend", "grid"},
      {"exponent", "--measure", d + "/gauss2.json", "--bodyK", d + "/square.json", "--bodyL", d + "/parallelogram.json",
       "--grid", "9", "--backend", "mc", "--budget", "20000", "--seed", "3"},
      {"sweep", "--measure", d + "/gauss2.json", "--p-claim", "0.5", "--trials", "4", "--grid", "9", "--seed", "5"},
      {"spectral", "--measure", d + "/gauss2.json", "--body", d + "/disc.json", "--grid", "48"},
      {"radial", "--p", "1.5", "--q", "2", "--nmax", "16", "--kmax", "16"},
      {"ent-check", "--p", "1.5", "--q", "1", "--body", d + "/square.json", "--fit-bodies", "3"},
  };
  Outcome o;
  std::size_t compared = 0;
  for (const auto& args : suites) {
    int c1 = 0, c2 = 0, c3 = 0;
    setenv("BMFORGE_THREADS", "1", 1);
    const auto a = run_to_string(args, c1);
    const auto b = run_to_string(args, c2);
    setenv("BMFORGE_THREADS", "4", 1);
    const auto c = run_to_string(args, c3);
    unsetenv("BMFORGE_THREADS");
    o.pass = o.pass && c1 != kExitError && a == b && a == c && c1 == c2 && c1 == c3 && !a.empty();
    ++compared;
  }
  o.detail = fmt("%.0f CLI suites byte-identical across reruns and worker counts", static_cast<double>(compared));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gaussian dimensional Brunn-Minkowski at p = 1/2", 300, gaussian_bm},
      {2, "lebesgue sharpness of 1/n", 60, lebesgue_sharpness},
      {3, "poincare constants", 120, poincare_constants},
      {4, "brascamp-lieb checker", 180, brascamp_lieb},
      {5, "radial lemma suite", 60, radial_lemmas},
      {6, "certificate suite", 300, certificates},
      {7, "measure-simple bound", 60, meas_simple},
      {8, "sublevel constructions", 120, klartag},
      {9, "moment corollary", 120, ent_corollary},
      {10, "determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool ok = o.pass && in_time;
    failures += !ok;
    std::printf("%s %2d %-48s %7.1fs/%gs  %s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                o.detail.c_str(), in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
