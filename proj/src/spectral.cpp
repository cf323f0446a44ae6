#include "bmforge/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "bmforge/grid_operator.hpp"

namespace bmforge {

namespace {

struct Domain {
  double lo_x, hi_x, lo_y, hi_y;
  bool rectangular;
  Membership inside;
};

double axis_extent(const LogConcaveMeasure& mu, const ConvexBody& K, const Vec& e, double drop) {
  double s;
  try {
    s = K.support(e);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::InfiniteSupport) throw;
    s = kInf;
  }
  if (std::isfinite(s)) return s;
  require(mu.normalized(), ErrorKind::InfiniteSupport, "unbounded domain needs a decaying measure");
  const double cut = std::max(radial_cutoff(mu.potential(), e, drop), radial_cutoff(mu.potential(), -e, drop));
  require(std::isfinite(cut), ErrorKind::InfiniteSupport, "measure does not decay along an axis");
  return cut;
}

Domain domain_2d(const LogConcaveMeasure& mu, const ConvexBody& K, double drop) {
  const double wx = axis_extent(mu, K, Vec::Unit(2, 0), drop), wy = axis_extent(mu, K, Vec::Unit(2, 1), drop);
  Domain d{-wx, wx, -wy, wy, false, {}};
  if (K.kind() == ConvexBody::Kind::WholeSpace || K.box_half_widths()) {
    d.rectangular = true;
  } else {
    d.inside = [&K](double x, double y) { return K.gauge(Vec(Eigen::Vector2d(x, y))) <= 1.0; };
  }
  return d;
}

SpectralReport solve_pair(const LogConcaveMeasure& mu, int dim, const Domain& d, const SpectralOptions& opts) {
  const int N = opts.grid > 0 ? opts.grid : (dim == 1 ? 512 : 128);
  const double wx = d.hi_x - d.lo_x, wy = d.hi_y - d.lo_y;
  auto cells = [&](int n_long) {
    if (dim == 1) return std::pair<int, int>{n_long, 1};
    const double longest = std::max(wx, wy);
    auto count = [&](double w) { return std::max(8, 2 * static_cast<int>(std::lround(0.5 * n_long * w / longest))); };
    return std::pair<int, int>{count(wx), count(wy)};
  };
  auto eig = [&](int n_long) {
    const auto [nx, ny] = cells(n_long);
    const WeightedGrid g = build_weighted_grid(mu.potential(), dim, d.lo_x, d.hi_x, d.lo_y, d.hi_y, nx, ny, d.inside);
    return smallest_neumann_eigenpair(g, opts.even, opts.tol);
  };
  const auto fine = eig(N);
  const auto coarse = eig(std::max(4, N / 2));
  SpectralReport r;
  r.grid = N;
  r.coarse_grid = std::max(4, N / 2);
  r.lambda_fine = fine.lambda;
  r.lambda_coarse = coarse.lambda;
  r.iterations = fine.iterations + coarse.iterations;
  r.even = opts.even;
  if (std::abs(fine.lambda - coarse.lambda) > 0.1 * fine.lambda)
    fail(ErrorKind::GridTooCoarse, "eigenvalue moved by more than 10% between grids " + std::to_string(r.coarse_grid) +
                                       " and " + std::to_string(N));
  const double C_fine = 1.0 / std::sqrt(fine.lambda);
  if (d.rectangular) {
    r.richardson = true;
    r.lambda1 = (4.0 * fine.lambda - coarse.lambda) / 3.0;
    r.C_poin = 1.0 / std::sqrt(r.lambda1);
    r.convergence = std::abs(r.C_poin - C_fine) + 1e-12 * r.C_poin;
  } else {
    r.lambda1 = fine.lambda;
    r.C_poin = C_fine;
    r.convergence = 2.0 * std::abs(C_fine - 1.0 / std::sqrt(coarse.lambda)) + 1e-12 * r.C_poin;
  }
  return r;
}

}  // namespace

SpectralReport poincare_1d(const LogConcaveMeasure& mu, double a, double b, const SpectralOptions& opts) {
  require(mu.dim() == 1, ErrorKind::DimensionMismatch, "poincare_1d needs a one-dimensional measure");
  require(a < b, ErrorKind::InvalidArgument, "interval must satisfy a < b");
  if (opts.even)
    require(std::abs(a + b) <= 1e-12 * (b - a), ErrorKind::InvalidArgument, "even subspace needs a symmetric interval");
  const Domain d{a, b, 0.0, 0.0, true, {}};
  return solve_pair(mu, 1, d, opts);
}

SpectralReport poincare_2d(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts) {
  require(mu.dim() == 2 && K.dim() == 2, ErrorKind::DimensionMismatch, "poincare_2d needs n = 2");
  return solve_pair(mu, 2, domain_2d(mu, K, opts.truncation_drop), opts);
}

SpectralReport poincare(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts) {
  require(mu.dim() == K.dim(), ErrorKind::DimensionMismatch, "measure and body differ in dimension");
  if (K.dim() == 1) {
    const Vec e = Vec::Unit(1, 0);
    return poincare_1d(mu, -axis_extent(mu, K, -e, opts.truncation_drop), axis_extent(mu, K, e, opts.truncation_drop),
                       opts);
  }
  require(K.dim() == 2, ErrorKind::InvalidArgument, "spectral solver supports n <= 2");
  return poincare_2d(mu, K, opts);
}

SpectralReport even_poincare(const LogConcaveMeasure& mu, const ConvexBody& K, SpectralOptions opts) {
  require(K.symmetric(), ErrorKind::InvalidArgument, "even subspace needs a symmetric body");
  opts.even = true;
  return poincare(mu, K, opts);
}

Vec solve_hessian(const Mat& H, const Vec& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (std::isfinite(H(i, i))) keep.push_back(i);
  Vec out = Vec::Zero(n);
  if (keep.empty()) return out;
  const int m = static_cast<int>(keep.size());
  Mat Hs(m, m);
  Vec gs(m);
  for (int a = 0; a < m; ++a) {
    gs[a] = g[keep[static_cast<std::size_t>(a)]];
    for (int b = 0; b < m; ++b) Hs(a, b) = H(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
  }
  const Vec xs = Hs.ldlt().solve(gs);
  for (int a = 0; a < m; ++a) out[keep[static_cast<std::size_t>(a)]] = xs[a];
  return out;
}

VarianceCheck brascamp_lieb_check(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& f,
                                  const IntegrationOptions& opts) {
  require(mu.dim() == f.dim(), ErrorKind::DimensionMismatch, "test function and measure differ in dimension");
  if (mu.potential().degeneracy() == HessianDegeneracy::Everywhere || !mu.normalized())
    fail(ErrorKind::SingularHessian, "Hess V is singular on a set of positive measure");
  const Potential& V = mu.potential();
  const int n = mu.dim();
  if (V.degeneracy() == HessianDegeneracy::Hyperplanes && V.degeneracy_order() >= 1.0)
    fail(ErrorKind::SingularHessian, "(Hess V)^{-1} is not integrable near the coordinate hyperplanes");
  if (V.degeneracy() == HessianDegeneracy::Origin && V.degeneracy_order() >= n &&
      f.gradient(Vec::Zero(n)).norm() > 1e-12) {
    VarianceCheck c;
    c.rhs = kInf;
    c.slack = kInf;
    c.divergent = true;
    c.pass = true;
    return c;
  }
  IntegrationOptions o = opts;
  o.even = K.symmetric() && f.even();
  const auto r = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* out) {
        const double v = f.value(x);
        const Vec g = f.gradient(x);
        out[0] = 1.0;
        out[1] = v;
        out[2] = v * v;
        out[3] = g.dot(solve_hessian(mu.hessian_V(x), g));
      },
      4, o);
  const double m = r.value[0], I1 = r.value[1], I2 = r.value[2], Q = r.value[3];
  VarianceCheck c;
  c.lhs = m * I2 - I1 * I1;
  c.rhs = m * Q;
  c.slack = c.rhs - c.lhs;
  c.error = r.error[0] * (I2 + Q) + m * (r.error[2] + r.error[3]) + 2.0 * std::abs(I1) * r.error[1];
  c.pass = c.slack >= -3.0 * c.error;
  return c;
}

KlsRoute kls_route_bound(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts) {
  KlsRoute k;
  k.spectral = poincare(mu, K, opts);
  k.sqrt_cov_norm = std::sqrt(covariance_restriction(mu, K).op_norm);
  k.ratio = k.spectral.C_poin / k.sqrt_cov_norm;
  return k;
}

}  // namespace bmforge
