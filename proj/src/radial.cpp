#include "bmforge/radial.hpp"

#include <algorithm>
#include <cmath>

#include "bmforge/gauss_kronrod.hpp"

namespace bmforge {

namespace {

constexpr double kLogDrop = 700.0;

QuadOptions tight() {
  QuadOptions o;
  o.abs_tol = 0.0;
  o.rel_tol = 1e-12;
  o.max_intervals = 1 << 16;
  return o;
}

// log int_a^b exp(h(t)) dt where h is concave with maximizer t_star;
// the integrand is rescaled by its maximum on [a, b].
double log_integral_concave(const std::function<double(double)>& h, double t_star, double a,
                            double b, double k) {
  const double tm = std::clamp(t_star, a, b);
  double hmax = h(tm);
  if (!std::isfinite(hmax)) hmax = 0.0;
  std::vector<double> breaks;
  for (double f : {0.25, 0.5, 1.0, 1.5, 2.0, 4.0})
    if (t_star > 0.0) breaks.push_back(f * t_star);
  breaks.push_back(tm);
  QuadResult r;
  if (k < 0.0 && a == 0.0) {
    // t = s^m removes the t^k singularity.
    const double m = 1.0 / (k + 1.0);
    auto g = [&](double s) {
      if (s <= 0.0) return 0.0;
      const double t = std::pow(s, m);
      return m * std::exp(h(t) + (m - 1.0) * std::log(s) - hmax);
    };
    std::vector<double> sb;
    for (double t : breaks) sb.push_back(std::pow(t, 1.0 / m));
    r = integrate(g, 0.0, std::pow(b, 1.0 / m), tight(), sb);
  } else {
    auto g = [&](double t) {
      if (t <= 0.0) return k == 0.0 ? std::exp(h(0.0) - hmax) : 0.0;
      return std::exp(h(t) - hmax);
    };
    r = integrate(g, a, b, tight(), breaks);
  }
  return std::log(r.value) + hmax;
}

}  // namespace

double log_radial_J(double p, double k, double R) {
  require(p >= 1.0, ErrorKind::InvalidArgument, "radial_J needs p >= 1");
  require(k > -1.0, ErrorKind::InvalidArgument, "radial_J needs k > -1");
  require(R > 0.0, ErrorKind::InvalidArgument, "radial_J needs R > 0");
  auto h = [&](double t) { return (t > 0.0 ? k * std::log(t) : 0.0) - std::pow(t, p) / p; };
  const double t_star = k > 0.0 ? std::pow(k, 1.0 / p) : 0.0;
  const double hmax = k > 0.0 ? h(t_star) : 0.0;
  // Past `cut` the integrand is below e^{-700} times its maximum.
  double cut = std::max(t_star, 1.0);
  while (h(cut) - hmax > -kLogDrop) cut *= 1.5;
  const double b = std::min(R, cut);
  return log_integral_concave(h, t_star, 0.0, b, k);
}

double radial_J(double p, double k, double R) { return std::exp(log_radial_J(p, k, R)); }

RadialProfile::RadialProfile(const LogConcaveMeasure& mu, const Vec& theta)
    : RadialProfile(mu.potential_ptr(), theta) {}

RadialProfile::RadialProfile(PotentialPtr V, const Vec& theta)
    : Vp_(std::move(V)), theta_(theta.normalized()) {
  require(theta.size() == Vp_->dim(), ErrorKind::DimensionMismatch, "direction has wrong dimension");
  V0_ = Vp_->value(Vec::Zero(Vp_->dim()));
}

double RadialProfile::V(double t) const { return Vp_->value(t * theta_); }
double RadialProfile::dV(double t) const { return radial_derivative(*Vp_, theta_, t); }

double RadialProfile::log_g(double k, double t) const {
  return (k == 0.0 ? 0.0 : k * std::log(t)) - V(t);
}

double RadialProfile::log_J(double k, double R) const {
  require(k > -1.0, ErrorKind::InvalidArgument, "profile integral needs k > -1");
  auto h = [&](double t) { return (t > 0.0 && k != 0.0 ? k * std::log(t) : 0.0) - (V(t) - V0_); };
  const double t_star = k > 0.0 ? radial_t0(*this, k) : 0.0;
  const double hmax = k > 0.0 ? h(t_star) : 0.0;
  double b = R;
  if (!std::isfinite(R)) {
    b = radial_cutoff(*Vp_, theta_, kLogDrop - hmax, k);
    if (!std::isfinite(b)) fail(ErrorKind::InfiniteRadius, "profile integral diverges");
    b = std::max(b, t_star);
  }
  return log_integral_concave(h, t_star, 0.0, b, k);
}

double RadialProfile::J(double k, double R) const { return std::exp(log_J(k, R)); }

double radial_t0(const RadialProfile& profile, double k) {
  require(k > 0.0, ErrorKind::InvalidArgument, "maximizer needs k > 0");
  auto F = [&](double t) { return t * profile.dV(t) - k; };
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (F(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 400) fail(ErrorKind::MaximizerAtInfinity, "t V'(t) never reaches k");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

HoldoutFit holdout_fit_upper(const std::vector<double>& values) {
  HoldoutFit fit;
  fit.constant = -kInf;
  fit.validation_slack = kInf;
  for (std::size_t i = 0; i < values.size(); i += 2) fit.constant = std::max(fit.constant, values[i]);
  for (std::size_t i = 1; i < values.size(); i += 2)
    fit.validation_slack = std::min(fit.validation_slack, fit.constant - values[i]);
  // Entries equal to the constant up to roundoff count as covered.
  fit.pass = std::isfinite(fit.constant) && fit.validation_slack >= -1e-12 * std::max(1.0, std::abs(fit.constant));
  return fit;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument,
          "slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

LemmaMaybeReport lemma_maybe_suite(double p, double q, int n_min, int n_max) {
  LemmaMaybeReport rep;
  rep.p = p;
  rep.q = q;
  std::vector<double> Rs;
  for (int j = 0; j <= 24; ++j) Rs.push_back(std::pow(10.0, -1.0 + 3.0 * j / 24.0));
  Rs.push_back(kInf);
  std::vector<double> norm, ns, sups;
  for (int n = n_min; n <= n_max; ++n) {
    double sup = 0.0;
    for (double R : Rs) {
      const double r = std::exp(log_radial_J(p, n + q - 1.0, R) - log_radial_J(p, n - 1.0, R));
      sup = std::max(sup, r);
    }
    const double nr = sup / std::pow(static_cast<double>(n), q / p);
    rep.rows.push_back({p, q, n, sup, nr});
    norm.push_back(nr);
    ns.push_back(n);
    sups.push_back(sup);
  }
  rep.fit = holdout_fit_upper(norm);
  rep.slope = log_log_slope(ns, sups);
  rep.pass = rep.fit.pass && rep.slope <= q / p + 0.05;
  return rep;
}

BracketReport bracket_suite(const RadialProfile& profile, int k_min, int k_max) {
  BracketReport rep;
  rep.lower_ok = true;
  std::vector<double> upper, tail;
  for (int ki = k_min; ki <= k_max; ++ki) {
    const double k = ki;
    const double t0 = radial_t0(profile, k);
    const double logJ = profile.log_J(k);
    const double ratio = std::exp(logJ - std::log(t0) - (profile.log_g(k, t0) + profile.V(0.0)));
    // Tail beyond 5 t0; the integrand is decreasing there.
    const double a = 5.0 * t0;
    const double V0 = profile.V(0.0);
    auto h = [&](double t) { return k * std::log(t) - (profile.V(t) - V0); };
    double b = a * 2.0;
    while (h(b) - h(a) > -700.0) b *= 1.5;
    const double log_tail = log_integral_concave(h, t0, a, b, k);
    const double tail_ratio = std::exp(log_tail - logJ);
    rep.rows.push_back({k, ratio, tail_ratio});
    if (ratio < 1.0 / (k + 1.0)) rep.lower_ok = false;
    upper.push_back(std::sqrt(k) * ratio);
    tail.push_back((log_tail - logJ) / k);
  }
  rep.upper_fit = holdout_fit_upper(upper);
  rep.tail_fit = holdout_fit_upper(tail);
  rep.tail_c = -rep.tail_fit.constant;
  rep.pass = rep.lower_ok && rep.upper_fit.pass && rep.tail_fit.pass && rep.tail_c > 0.0;
  return rep;
}

}  // namespace bmforge
