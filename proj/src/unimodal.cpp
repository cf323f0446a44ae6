#include "bmforge/unimodal.hpp"

#include <algorithm>
#include <cmath>

#include "bmforge/parallel.hpp"
#include "bmforge/quadrature.hpp"
#include "bmforge/random_bodies.hpp"

namespace bmforge {

namespace {

double lq_power_value(const Vec& x, double q) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), q);
  return s;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

Integral integrate_scalar(const LogConcaveMeasure& mu, const ConvexBody& K, const std::function<double(const Vec&)>& h,
                          bool even) {
  IntegrationOptions o;
  o.even = even && K.symmetric();
  const auto r = integrate_over_body(
      mu, K, [&](const Vec& x, double* out) { out[0] = h(x); }, 1, o);
  return {r.value[0], r.error[0]};
}

/// int e^{-g} h dmu, splitting the layers of g into body integrals.
Integral integrate_against(const LogConcaveMeasure& mu, const LayerCakeFunction& g,
                           const std::function<double(const Vec&)>& h) {
  const int n = mu.dim();
  auto smooth = [&](const Vec& x) { return g.exp_neg_continuous(x) * h(x); };
  const auto& L = g.layer_list();
  // On K_j minus K_{j-1} the layers contribute c_j = exp(-sum_{i<j} w_i).
  std::vector<double> c(L.size() + 1, 1.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < L.size(); ++j) {
    acc += L[j].second;
    c[j + 1] = std::exp(-acc);
  }
  Integral out;
  for (std::size_t j = 0; j < L.size(); ++j) {
    const double coef = c[j] - c[j + 1];
    if (coef == 0.0) continue;
    const auto I = integrate_scalar(mu, L[j].first, smooth, true);
    out.value += coef * I.value;
    out.error += std::abs(coef) * I.error;
  }
  if (c.back() > 0.0) {
    const auto I = integrate_scalar(mu, ConvexBody::whole_space(n), smooth, true);
    out.value += c.back() * I.value;
    out.error += c.back() * I.error;
  }
  return out;
}

}  // namespace

LayerCakeFunction LayerCakeFunction::zero(int n) { return LayerCakeFunction(n); }

LayerCakeFunction LayerCakeFunction::indicator(const ConvexBody& K) { return layers({{K, kInf}}); }

LayerCakeFunction LayerCakeFunction::layers(std::vector<std::pair<ConvexBody, double>> layers) {
  require(!layers.empty(), ErrorKind::InvalidArgument, "layer list is empty");
  const int n = layers.front().first.dim();
  const auto dirs = n == 1 ? std::vector<Vec>{Vec::Ones(1)} : probe_directions(n, 64);
  for (const auto& [K, w] : layers) {
    require(K.dim() == n, ErrorKind::DimensionMismatch, "layers differ in dimension");
    require(K.symmetric(), ErrorKind::InvalidArgument, "layers must be symmetric");
    require(w > 0.0, ErrorKind::InvalidArgument, "layer weights must be positive");
  }
  std::stable_sort(layers.begin(), layers.end(), [&](const auto& a, const auto& b) {
    return a.first.radial_function(dirs[0]) < b.first.radial_function(dirs[0]);
  });
  for (std::size_t i = 1; i < layers.size(); ++i)
    for (const Vec& th : dirs)
      require(layers[i - 1].first.radial_function(th) <= layers[i].first.radial_function(th) * (1 + 1e-12),
              ErrorKind::InvalidArgument, "layers are not nested");
  LayerCakeFunction f(n);
  f.layers_ = std::move(layers);
  return f;
}

LayerCakeFunction LayerCakeFunction::gauge_power(const ConvexBody& G, double scale, double power) {
  require(G.symmetric(), ErrorKind::InvalidArgument, "gauge body must be symmetric");
  require(scale >= 0.0 && power > 0.0, ErrorKind::InvalidArgument, "need scale >= 0 and power > 0");
  LayerCakeFunction f(G.dim());
  f.gauge_ = GaugePart{G, scale, power};
  return f;
}

LayerCakeFunction LayerCakeFunction::lq_power(int n, double q) {
  return gauge_power(ConvexBody::lp_ball(n, q, 1.0), 1.0, q);
}

double LayerCakeFunction::operator()(const Vec& x) const {
  double v = 0.0;
  if (gauge_) v += gauge_->scale * std::pow(gauge_->G.gauge(x), gauge_->power);
  for (const auto& [K, w] : layers_)
    if (!K.contains(x)) v += w;
  return v;
}

double LayerCakeFunction::exp_neg_continuous(const Vec& x) const {
  return gauge_ ? std::exp(-gauge_->scale * std::pow(gauge_->G.gauge(x), gauge_->power)) : 1.0;
}

LayerCakeCheck check_layer_cake(const LayerCakeFunction& f, double radius, std::size_t samples, std::uint64_t seed) {
  const int n = f.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  std::uniform_real_distribution<double> U(-radius, radius), T(0.0, 1.0);
  LayerCakeCheck c;
  for (std::size_t s = 0; s < samples; ++s) {
    // Orthonormal pair spanning the slice.
    Vec e1(n), e2(n);
    for (int i = 0; i < n; ++i) {
      e1[i] = N01(rng);
      e2[i] = N01(rng);
    }
    e1.normalize();
    if (n > 1) {
      e2 -= e2.dot(e1) * e1;
      e2.normalize();
    } else {
      e2.setZero();
    }
    const Vec a = U(rng) * e1 + U(rng) * e2;
    const Vec b = U(rng) * e1 + U(rng) * e2;
    const double t = T(rng);
    const double fa = f(a), fb = f(b), fm = f(t * a + (1 - t) * b);
    ++c.checked;
    const bool even_ok = std::abs(f(-a) - fa) <= 1e-9 * (1 + std::abs(fa)) || (std::isinf(fa) && std::isinf(f(-a)));
    const bool qc_ok = fm <= std::max(fa, fb) + 1e-9 * (1 + std::abs(fm));
    if (!even_ok || !qc_ok) ++c.violations;
  }
  c.pass = c.violations == 0;
  return c;
}

double unimod_constant(double p, double q) {
  require(p > 0.0 && q > -1.0, ErrorKind::InvalidArgument, "need p > 0 and q > -1");
  return std::exp((q / p) * std::log(p) + std::lgamma((q + 1.0) / p) - std::lgamma(1.0 / p));
}

UnimodMoment check_unimod_moment(double p, double q, const ConvexBody& K, double C) {
  require(p >= 1.0 && p <= 2.0, ErrorKind::InvalidArgument, "p must lie in [1, 2]");
  require(q > 0.0, ErrorKind::InvalidArgument, "q must be positive");
  require(K.symmetric(), ErrorKind::InvalidArgument, "K must be symmetric");
  const int n = K.dim();
  require(n <= 3, ErrorKind::InvalidArgument, "moment check supports n <= 3");
  const auto mu = LogConcaveMeasure::product_p(n, p);
  IntegrationOptions o;
  o.even = true;
  const auto r = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* out) {
        out[0] = lq_power_value(x, q);
        out[1] = 1.0;
      },
      2, o);
  UnimodMoment m;
  m.lhs = r.value[0];
  m.lhs_error = r.error[0];
  m.measure = r.value[1];
  m.measure_error = r.error[1];
  m.ratio = m.lhs / (n * m.measure);
  m.bound = C * n * m.measure;
  m.pass = m.lhs <= m.bound + 3.0 * (m.lhs_error + C * n * m.measure_error);
  return m;
}

UnimodFit fit_unimod_constant(double p, double q, int max_dim, int bodies_per_dim, std::uint64_t seed) {
  UnimodFit fit;
  fit.p = p;
  fit.q = q;
  fit.exact = unimod_constant(p, q);
  std::vector<ConvexBody> bodies;
  // Odd count per dimension keeps every whole-space entry in the training half.
  const int per_dim = bodies_per_dim | 1;
  for (int n = 1; n <= max_dim; ++n) {
    bodies.push_back(ConvexBody::whole_space(n));
    fit.dims.push_back(n);
    for (int b = 0; b < per_dim; ++b) {
      auto rng = make_stream(seed, static_cast<std::uint64_t>(n * 1000 + b));
      if (n == 1) {
        std::uniform_real_distribution<double> U(0.05, 4.0);
        bodies.push_back(ConvexBody::box(Vec::Constant(1, U(rng))));
      } else {
        bodies.push_back(random_symmetric_body(rng, n));
      }
      fit.dims.push_back(n);
    }
  }
  fit.ratios.resize(bodies.size());
  parallel_for(bodies.size(), [&](std::size_t i) { fit.ratios[i] = check_unimod_moment(p, q, bodies[i], 0.0).ratio; });
  fit.fit = holdout_fit_upper(fit.ratios);
  return fit;
}

CorrelationCheck check_correlation(const LogConcaveMeasure& mu, const LayerCakeFunction& f,
                                   const LayerCakeFunction& g) {
  require(mu.normalized(), ErrorKind::Unnormalized, "correlation needs a probability measure");
  require(f.dim() == mu.dim() && g.dim() == mu.dim(), ErrorKind::DimensionMismatch,
          "functions and measure differ in dimension");
  // Integrate over the layers of whichever function has more of them.
  const bool swap = f.layer_list().size() > g.layer_list().size();
  const LayerCakeFunction& outer = swap ? f : g;
  const LayerCakeFunction& inner = swap ? g : f;
  const auto both = integrate_against(mu, outer, [&](const Vec& x) { return inner.exp_neg(x); });
  const auto Fi = integrate_against(mu, inner, [](const Vec&) { return 1.0; });
  const auto Fo = integrate_against(mu, outer, [](const Vec&) { return 1.0; });
  CorrelationCheck c;
  c.lhs = both.value;
  c.rhs = Fi.value * Fo.value;
  c.slack = c.lhs - c.rhs;
  c.error = both.error + Fi.error * Fo.value + Fi.value * Fo.error;
  c.pass = c.slack >= -3.0 * c.error - 1e-13;
  return c;
}

CorrelationCheck check_monotone_form(const LogConcaveMeasure& mu, double q, const ConvexBody& K) {
  require(mu.normalized(), ErrorKind::Unnormalized, "monotone form needs a probability measure");
  require(K.dim() == mu.dim(), ErrorKind::DimensionMismatch, "body and measure differ in dimension");
  const int n = mu.dim();
  IntegrationOptions o;
  o.even = true;
  auto both = [&](const ConvexBody& B) {
    return integrate_over_body(
        mu, B,
        [&](const Vec& x, double* out) {
          out[0] = lq_power_value(x, q);
          out[1] = 1.0;
        },
        2, o);
  };
  const auto k = both(K);
  const auto w = both(ConvexBody::whole_space(n));
  CorrelationCheck c;
  c.lhs = k.value[0];
  c.rhs = k.value[1] * w.value[0];
  c.slack = c.rhs - c.lhs;
  c.error = k.error[0] + k.error[1] * w.value[0] + k.value[1] * w.error[0];
  c.pass = c.slack >= -3.0 * c.error - 1e-13;
  return c;
}

}  // namespace bmforge
