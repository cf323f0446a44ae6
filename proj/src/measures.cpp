#include "bmforge/measures.hpp"

#include <cmath>
#include <cstdio>

#include "bmforge/gauss_kronrod.hpp"

namespace bmforge {

namespace {

// int_0^inf t^k e^{-t^p/p} dt by quadrature, split at the mode.
double radial_moment_quadrature(double p, double k) {
  const double mode = k > 0.0 ? std::pow(k, 1.0 / p) : 1.0;
  const double cut = std::pow(p * (k * std::log(std::max(mode, 1.0) * 8.0 + 8.0) + 750.0), 1.0 / p);
  const double breaks[] = {0.5 * mode, mode, 2.0 * mode, 4.0 * mode};
  QuadOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-13;
  auto f = [&](double t) {
    if (t <= 0.0) return k == 0.0 ? 1.0 : 0.0;
    return std::exp(k * std::log(t) - std::pow(t, p) / p);
  };
  const auto r = integrate(f, 0.0, std::max(cut, 8.0 * mode), opts, breaks);
  return r.value;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::ProductP: return "product_p";
    case Family::RadialP: return "radial_p";
    case Family::Lebesgue: return "lebesgue";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

double log_radial_moment_closed_form(double p, double k) {
  return ((k + 1.0) / p - 1.0) * std::log(p) + std::lgamma((k + 1.0) / p);
}

LogConcaveMeasure LogConcaveMeasure::gaussian(int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  LogConcaveMeasure m;
  m.n_ = n;
  m.family_ = m.base_family_ = Family::Gaussian;
  m.p_ = 2.0;
  m.V_ = make_gaussian_potential(n);
  m.T_ = Mat::Identity(n, n);
  m.log_Z_ = 0.5 * n * std::log(2.0 * kPi);
  return m;
}

LogConcaveMeasure LogConcaveMeasure::product_p(int n, double p) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  require(p >= 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "product family needs p >= 1");
  LogConcaveMeasure m;
  m.n_ = n;
  m.family_ = m.base_family_ = Family::ProductP;
  m.p_ = p;
  m.V_ = make_product_potential(n, p);
  m.T_ = Mat::Identity(n, n);
  m.log_Z_ = std::log(normalizing_constant(m));
  return m;
}

LogConcaveMeasure LogConcaveMeasure::radial_p(int n, double p) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  require(p >= 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "radial family needs p >= 1");
  LogConcaveMeasure m;
  m.n_ = n;
  m.family_ = m.base_family_ = Family::RadialP;
  m.p_ = p;
  m.V_ = make_radial_potential(n, p);
  m.T_ = Mat::Identity(n, n);
  m.log_Z_ = std::log(normalizing_constant(m));
  return m;
}

LogConcaveMeasure LogConcaveMeasure::lebesgue(int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  LogConcaveMeasure m;
  m.n_ = n;
  m.family_ = m.base_family_ = Family::Lebesgue;
  m.p_ = 0.0;
  m.V_ = make_zero_potential(n);
  m.T_ = Mat::Identity(n, n);
  m.normalized_ = false;
  return m;
}

LogConcaveMeasure LogConcaveMeasure::pushforward(const LogConcaveMeasure& base, const Mat& T) {
  require(T.rows() == base.n_ && T.cols() == base.n_, ErrorKind::DimensionMismatch,
          "pushforward map has wrong shape");
  LogConcaveMeasure m = base;
  m.family_ = Family::Custom;
  m.T_ = T * base.T_;
  m.V_ = make_pushforward_potential(base.V_, T);
  if (m.normalized_) m.log_Z_ = base.log_Z_ + std::log(std::abs(T.determinant()));
  return m;
}

double LogConcaveMeasure::log_normalizer() const {
  if (!normalized_) fail(ErrorKind::Unnormalized, "Lebesgue measure has no normalization");
  return log_Z_;
}

double LogConcaveMeasure::log_density(const Vec& x) const {
  return normalized_ ? -V_->value(x) - log_Z_ : -V_->value(x);
}

double LogConcaveMeasure::density(const Vec& x) const { return std::exp(log_density(x)); }

bool LogConcaveMeasure::rotation_invariant() const {
  if (family_ == Family::Gaussian || family_ == Family::RadialP || family_ == Family::Lebesgue)
    return true;
  if (family_ == Family::Custom &&
      (base_family_ == Family::Gaussian || base_family_ == Family::RadialP ||
       base_family_ == Family::Lebesgue)) {
    const Mat G = T_.transpose() * T_;
    const double s = G.trace() / n_;
    return (G - s * Mat::Identity(n_, n_)).cwiseAbs().maxCoeff() <= 1e-12 * s;
  }
  return family_ == Family::ProductP && p_ == 2.0;
}

Vec LogConcaveMeasure::sample(std::mt19937_64& rng) const {
  Vec x(n_);
  std::normal_distribution<double> normal;
  switch (base_family_) {
    case Family::Gaussian:
      for (int i = 0; i < n_; ++i) x[i] = normal(rng);
      break;
    case Family::ProductP: {
      // |X_i| = (p G)^{1/p} with G ~ Gamma(1/p).
      std::gamma_distribution<double> gamma(1.0 / p_, 1.0);
      std::bernoulli_distribution coin(0.5);
      for (int i = 0; i < n_; ++i) {
        const double a = std::pow(p_ * gamma(rng), 1.0 / p_);
        x[i] = coin(rng) ? a : -a;
      }
      break;
    }
    case Family::RadialP: {
      // |X| = (p G)^{1/p} with G ~ Gamma(n/p), direction uniform.
      std::gamma_distribution<double> gamma(static_cast<double>(n_) / p_, 1.0);
      Vec d(n_);
      for (int i = 0; i < n_; ++i) d[i] = normal(rng);
      const double r = std::pow(p_ * gamma(rng), 1.0 / p_);
      x = r * d.normalized();
      break;
    }
    case Family::Lebesgue:
    case Family::Custom:
      fail(ErrorKind::Unnormalized, "Lebesgue measure cannot be sampled");
  }
  return T_ * x;
}

std::string LogConcaveMeasure::describe() const {
  char buf[96];
  switch (family_) {
    case Family::Gaussian:
    case Family::Lebesgue:
      std::snprintf(buf, sizeof buf, "%s[n=%d]", family_name(family_).data(), n_);
      break;
    case Family::ProductP:
    case Family::RadialP:
      std::snprintf(buf, sizeof buf, "%s[n=%d,p=%g]", family_name(family_).data(), n_, p_);
      break;
    case Family::Custom:
      std::snprintf(buf, sizeof buf, "custom(%s)[n=%d]", family_name(base_family_).data(), n_);
      break;
  }
  return buf;
}

double normalizing_constant(const LogConcaveMeasure& mu) {
  const int n = mu.dim();
  switch (mu.family()) {
    case Family::Gaussian: return std::pow(2.0 * kPi, 0.5 * n);
    case Family::ProductP: return std::pow(2.0 * radial_moment_quadrature(mu.p(), 0.0), n);
    case Family::RadialP:
      return std::exp(log_unit_sphere_area(n)) * radial_moment_quadrature(mu.p(), n - 1.0);
    case Family::Lebesgue: fail(ErrorKind::Unnormalized, "Lebesgue measure has no normalization");
    case Family::Custom: return std::exp(mu.log_normalizer());
  }
  return 0.0;
}

BregmanTerms bregman_terms(const LogConcaveMeasure& mu, const Vec& x) {
  require(x.size() == mu.dim(), ErrorKind::DimensionMismatch, "point has wrong dimension");
  BregmanTerms t;
  const Potential& V = mu.potential();
  const Vec g = V.gradient(x);
  t.grad_sq = g.squaredNorm();
  t.grad_dot_x = g.dot(x);
  t.laplacian = V.laplacian(x);
  t.LV = t.laplacian - t.grad_sq;
  t.one_sided = !V.smooth_at(x);
  return t;
}

}  // namespace bmforge
