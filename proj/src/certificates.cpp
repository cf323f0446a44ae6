#include "bmforge/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "bmforge/gauss_kronrod.hpp"
#include "bmforge/grid_operator.hpp"
#include "bmforge/spectral.hpp"

namespace bmforge {

namespace {

struct Avg {
  double value;
  double error;
};

// I / m with first-order error propagation.
Avg ratio(double I, double eI, double m, double em) { return {I / m, eI / m + std::abs(I) * em / (m * m)}; }

bool integrand_even(const ConvexBody& K, const TestFunction& u) { return K.symmetric() && u.even(); }

double frob_sq(const Mat& H) { return H.squaredNorm(); }

// tr(D^2u H^{-1} D^2u)
double weighted_trace(const Mat& Hu, const Mat& HV) {
  double t = 0.0;
  for (int c = 0; c < Hu.cols(); ++c) t += Hu.col(c).dot(solve_hessian(HV, Hu.col(c)));
  return t;
}

void finish(CertificateReport& r) {
  r.slack = r.lhs - r.rhs;
  r.pass = r.vacuous || r.divergent || r.slack >= -3.0 * r.error;
}

double torsion_mean(const ScalarField& f, const LogConcaveMeasure& mu) {
  double s = 0.0, m = 0.0;
  const double V0 = mu.V0();
  for (std::size_t k = 0; k < f.nodes(); ++k) {
    const double w = f.weight(k) * std::exp(-(mu.V(f.point(k)) - V0));
    s += w * f.u[k];
    m += w;
  }
  return s / m;
}

}  // namespace

TorsionResult solve_torsion_1d(const LogConcaveMeasure& mu, double a, double b, double f_a, double f_b, int N) {
  require(mu.dim() == 1, ErrorKind::DimensionMismatch, "one-dimensional torsion needs n = 1");
  require(a < b && N >= 4, ErrorKind::InvalidArgument, "need a < b and at least four intervals");
  const double V0 = mu.V0();
  auto V = [&](double x) { return mu.V(Vec::Constant(1, x)) - V0; };
  auto rho = [&](double x) { return std::exp(-V(x)); };
  const double h = (b - a) / N;
  QuadOptions qo;
  qo.abs_tol = 0.0;
  qo.rel_tol = 1e-13;
  std::vector<double> P(static_cast<std::size_t>(N) + 1, 0.0);  // int_a^{x_i} rho
  for (int i = 0; i < N; ++i)
    P[static_cast<std::size_t>(i) + 1] = P[static_cast<std::size_t>(i)] + integrate(rho, a + i * h, a + (i + 1) * h, qo).value;
  const double Z = P.back();
  TorsionResult out;
  out.C = (f_b * rho(b) + f_a * rho(a)) / Z;
  const double C = out.C;
  auto du_from = [&](double x, double Px) { return (C * Px - f_a * rho(a)) / rho(x); };

  ScalarField& f = out.field;
  f.dim = 1;
  f.nx = N;
  f.x0 = a;
  f.hx = h;
  f.even = std::abs(a + b) <= 1e-12 * (b - a) && f_a == f_b;
  const std::size_t M = static_cast<std::size_t>(N) + 1;
  f.u.assign(M, 0.0);
  f.gx.assign(M, 0.0);
  f.hxx.assign(M, 0.0);
  f.gy.assign(M, 0.0);
  f.hyy.assign(M, 0.0);
  f.hxy.assign(M, 0.0);
  for (int i = 0; i < N; ++i) {
    const double xi = a + i * h;
    const double Pi = P[static_cast<std::size_t>(i)];
    auto du = [&](double x) { return du_from(x, Pi + (x > xi ? integrate(rho, xi, x, qo).value : 0.0)); };
    f.u[static_cast<std::size_t>(i) + 1] = f.u[static_cast<std::size_t>(i)] + integrate(du, xi, xi + h, qo).value;
  }
  for (std::size_t i = 0; i < M; ++i) {
    const double x = a + static_cast<double>(i) * h;
    f.gx[i] = du_from(x, P[i]);
    f.hxx[i] = C + mu.grad_V(Vec::Constant(1, x))[0] * f.gx[i];
  }
  const double mean = torsion_mean(f, mu);
  for (auto& v : f.u) v -= mean;

  for (std::size_t i = 1; i + 1 < M; ++i) {
    const double x = a + static_cast<double>(i) * h;
    const double d2 = (f.u[i + 1] - 2.0 * f.u[i] + f.u[i - 1]) / (h * h);
    const double d1 = (f.u[i + 1] - f.u[i - 1]) / (2.0 * h);
    out.residual = std::max(out.residual, std::abs(d2 - mu.grad_V(Vec::Constant(1, x))[0] * d1 - C));
  }
  const double dl = (-3.0 * f.u[0] + 4.0 * f.u[1] - f.u[2]) / (2.0 * h);
  const double dr = (3.0 * f.u[M - 1] - 4.0 * f.u[M - 2] + f.u[M - 3]) / (2.0 * h);
  out.boundary_defect = std::max(std::abs(-dl - f_a), std::abs(dr - f_b));
  return out;
}

TorsionResult solve_torsion(const LogConcaveMeasure& mu, const ConvexBody& K, const BoundaryData& fdata, int N) {
  require(mu.dim() == K.dim(), ErrorKind::DimensionMismatch, "measure and body differ in dimension");
  const auto w = K.box_half_widths();
  require(w.has_value(), ErrorKind::InvalidArgument, "torsion problems are solved on centred boxes");
  const int n = K.dim();
  if (n == 1) {
    const Vec e = Vec::Ones(1);
    return solve_torsion_1d(mu, -(*w)[0], (*w)[0], fdata(-(*w)[0] * e, -e), fdata((*w)[0] * e, e),
                            N > 0 ? N : 2000);
  }
  require(n == 2, ErrorKind::InvalidArgument, "torsion solver supports n <= 2");
  const int nx = N > 0 ? N : 128;
  const double wx = (*w)[0], wy = (*w)[1];
  const int ny = std::max(4, 2 * static_cast<int>(std::lround(0.5 * nx * wy / wx)));
  const double hx = 2.0 * wx / nx, hy = 2.0 * wy / ny;
  const double V0 = mu.V0();
  auto rho = [&](double x, double y) { return std::exp(-(mu.V(Vec(Eigen::Vector2d(x, y))) - V0)); };
  auto trap = [](int i, int m) { return (i == 0 || i == m) ? 0.5 : 1.0; };

  // Nodes become the cells of a padded grid.
  WeightedGrid g;
  g.nx = nx + 1;
  g.ny = ny + 1;
  g.stride = static_cast<std::size_t>(g.nx) + 2;
  g.hx = hx;
  g.hy = hy;
  g.x0 = -wx - 0.5 * hx;
  g.y0 = -wy - 0.5 * hy;
  const std::size_t S = g.size();
  g.diag.assign(S, 0.0);
  g.east.assign(S, 0.0);
  g.north.assign(S, 0.0);
  g.mass.assign(S, 0.0);
  g.active.assign(S, 0);
  std::vector<double> flux(S, 0.0);
  const Vec ex = Vec::Unit(2, 0), ey = Vec::Unit(2, 1);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const std::size_t c = g.index(i, j);
      const double x = -wx + i * hx, y = -wy + j * hy;
      g.active[c] = 1;
      g.mass[c] = rho(x, y) * hx * hy * trap(i, nx) * trap(j, ny);
      if (i < nx) g.east[c] = rho(x + 0.5 * hx, y) * hy * trap(j, ny) / hx;
      if (j < ny) g.north[c] = rho(x, y + 0.5 * hy) * hx * trap(i, nx) / hy;
      const Vec p(Eigen::Vector2d(x, y));
      if (i == 0) flux[c] += fdata(p, -ex) * rho(x, y) * hy * trap(j, ny);
      if (i == nx) flux[c] += fdata(p, ex) * rho(x, y) * hy * trap(j, ny);
      if (j == 0) flux[c] += fdata(p, -ey) * rho(x, y) * hx * trap(i, nx);
      if (j == ny) flux[c] += fdata(p, ey) * rho(x, y) * hx * trap(i, nx);
    }
  g.active_count = static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1);
  for (std::size_t c = g.begin(); c < g.end(); ++c)
    g.diag[c] = g.active[c] ? g.east[c] + g.east[c - 1] + g.north[c] + g.north[c - g.stride] : 1.0;

  double total_flux = 0.0, total_mass = 0.0;
  for (std::size_t c = 0; c < S; ++c) {
    total_flux += flux[c];
    total_mass += g.mass[c];
  }
  TorsionResult out;
  out.C = total_flux / total_mass;
  std::vector<double> rhs(S), sol(S, 0.0);
  for (std::size_t c = 0; c < S; ++c) rhs[c] = flux[c] - out.C * g.mass[c];
  const auto pr = solve_neumann(g, rhs, sol, 1e-12, 200000);
  out.solver_iterations = pr.iterations;

  ScalarField& f = out.field;
  f.dim = 2;
  f.nx = nx;
  f.ny = ny;
  f.x0 = -wx;
  f.y0 = -wy;
  f.hx = hx;
  f.hy = hy;
  const std::size_t M = f.nodes();
  f.u.assign(M, 0.0);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) f.u[f.index(i, j)] = sol[g.index(i, j)];
  const double mean = torsion_mean(f, mu);
  for (auto& v : f.u) v -= mean;

  // Derivatives with ghost values from the Neumann data.
  f.gx.assign(M, 0.0);
  f.gy.assign(M, 0.0);
  f.hxx.assign(M, 0.0);
  f.hyy.assign(M, 0.0);
  f.hxy.assign(M, 0.0);
  const std::size_t row = static_cast<std::size_t>(nx + 1);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const std::size_t k = f.index(i, j);
      const Vec p = f.point(k);
      const double uc = f.u[k];
      const double ul = i > 0 ? f.u[k - 1] : f.u[k + 1] + 2.0 * hx * fdata(p, -ex);
      const double ur = i < nx ? f.u[k + 1] : f.u[k - 1] + 2.0 * hx * fdata(p, ex);
      const double ud = j > 0 ? f.u[k - row] : f.u[k + row] + 2.0 * hy * fdata(p, -ey);
      const double uu = j < ny ? f.u[k + row] : f.u[k - row] + 2.0 * hy * fdata(p, ey);
      f.gx[k] = (ur - ul) / (2.0 * hx);
      f.gy[k] = (uu - ud) / (2.0 * hy);
      f.hxx[k] = (ur - 2.0 * uc + ul) / (hx * hx);
      f.hyy[k] = (uu - 2.0 * uc + ud) / (hy * hy);
    }
  auto d1 = [&](const std::vector<double>& v, std::size_t k, int i, int m, std::size_t step, double h) {
    if (i == 0) return (-3.0 * v[k] + 4.0 * v[k + step] - v[k + 2 * step]) / (2.0 * h);
    if (i == m) return (3.0 * v[k] - 4.0 * v[k - step] + v[k - 2 * step]) / (2.0 * h);
    return (v[k + step] - v[k - step]) / (2.0 * h);
  };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const std::size_t k = f.index(i, j);
      f.hxy[k] = 0.5 * (d1(f.gy, k, i, nx, 1, hx) + d1(f.gx, k, j, ny, row, hy));
    }
  double even_defect = 0.0;
  for (std::size_t k = 0; k < M; ++k) even_defect = std::max(even_defect, std::abs(f.u[k] - f.u[M - 1 - k]));
  f.even = even_defect <= 1e-9 * (1.0 + *std::max_element(f.u.begin(), f.u.end()));

  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      const std::size_t k = f.index(i, j);
      out.residual = std::max(out.residual, std::abs(f.L(mu, k) - out.C));
    }
  for (int j = 0; j <= ny; ++j) {
    const std::size_t kl = f.index(0, j), kr = f.index(nx, j);
    out.boundary_defect = std::max(out.boundary_defect, std::abs(-d1(f.u, kl, 0, nx, 1, hx) - fdata(f.point(kl), -ex)));
    out.boundary_defect = std::max(out.boundary_defect, std::abs(d1(f.u, kr, nx, nx, 1, hx) - fdata(f.point(kr), ex)));
  }
  for (int i = 0; i <= nx; ++i) {
    const std::size_t kd = f.index(i, 0), ku = f.index(i, ny);
    out.boundary_defect = std::max(out.boundary_defect, std::abs(-d1(f.u, kd, 0, ny, row, hy) - fdata(f.point(kd), -ey)));
    out.boundary_defect = std::max(out.boundary_defect, std::abs(d1(f.u, ku, ny, ny, row, hy) - fdata(f.point(ku), ey)));
  }
  return out;
}

CertificateReport check_keyprop(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& u, double p,
                                const IntegrationOptions& opts) {
  require(mu.dim() == u.dim(), ErrorKind::DimensionMismatch, "test function and measure differ in dimension");
  IntegrationOptions o = opts;
  o.even = integrand_even(K, u);
  const auto r = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* out) {
        const Vec g = u.gradient(x);
        const Mat Hu = u.hessian(x);
        const Mat HV = mu.hessian_V(x);
        const double Lu = Hu.trace() - g.dot(mu.grad_V(x));
        out[0] = 1.0;
        out[1] = frob_sq(Hu) + (HV.allFinite() ? g.dot(HV * g) : 0.0);
        out[2] = Lu;
        out[3] = Lu * Lu;
      },
      4, o);
  CertificateReport c;
  const Avg lhs = ratio(r.value[1], r.error[1], r.value[0], r.error[0]);
  const Avg mean = ratio(r.value[2], r.error[2], r.value[0], r.error[0]);
  const Avg sec = ratio(r.value[3], r.error[3], r.value[0], r.error[0]);
  c.lhs = lhs.value;
  c.mean_Lu = mean.value;
  c.var_Lu = std::max(0.0, sec.value - mean.value * mean.value);
  const double e_var = sec.error + 2.0 * std::abs(mean.value) * mean.error;
  c.rhs = p * mean.value * mean.value + c.var_Lu;
  c.error = lhs.error + 2.0 * p * std::abs(mean.value) * mean.error + e_var;
  c.p_certified = mean.value * mean.value > 1e-300 ? (c.lhs - c.var_Lu) / (mean.value * mean.value) : kInf;
  finish(c);
  return c;
}

CertificateReport check_keyprop(const LogConcaveMeasure& mu, const ScalarField& f, double p) {
  require(mu.dim() == f.dim, ErrorKind::DimensionMismatch, "field and measure differ in dimension");
  const double V0 = mu.V0();
  double S[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};
  for (std::size_t k = 0; k < f.nodes(); ++k) {
    const Vec x = f.point(k);
    const double rho = std::exp(-(mu.V(x) - V0));
    const Vec g = f.gradient(k);
    const Mat Hu = f.hessian(k);
    const Mat HV = mu.hessian_V(x);
    const double Lu = Hu.trace() - g.dot(mu.grad_V(x));
    const double vals[4] = {1.0, frob_sq(Hu) + (HV.allFinite() ? g.dot(HV * g) : 0.0), Lu, Lu * Lu};
    const double w[2] = {f.weight(k) * rho, f.coarse_weight(k) * rho};
    for (int level = 0; level < 2; ++level)
      for (int c = 0; c < 4; ++c) S[level][c] += w[level] * vals[c];
  }
  auto evaluate = [&](const double* s, double& lhs, double& mean, double& var) {
    lhs = s[1] / s[0];
    mean = s[2] / s[0];
    var = std::max(0.0, s[3] / s[0] - mean * mean);
  };
  double lhs, mean, var, lhs2, mean2, var2;
  evaluate(S[0], lhs, mean, var);
  evaluate(S[1], lhs2, mean2, var2);
  CertificateReport c;
  c.grid = f.nx;
  c.lhs = lhs;
  c.mean_Lu = mean;
  c.var_Lu = var;
  c.rhs = p * mean * mean + var;
  c.error = std::abs((lhs - p * mean * mean - var) - (lhs2 - p * mean2 * mean2 - var2));
  c.p_certified = mean * mean > 1e-300 ? (lhs - var) / (mean * mean) : kInf;
  finish(c);
  return c;
}

CertificateReport check_prop2(const LogConcaveMeasure& mu, const ConvexBody& K, const ConvexBody& A,
                              const TestFunction& u, double C_poin, const IntegrationOptions& opts) {
  require(mu.dim() == K.dim() && K.dim() == A.dim() && u.dim() == K.dim(), ErrorKind::DimensionMismatch,
          "measure, bodies and function differ in dimension");
  require(u.even(), ErrorKind::InvalidArgument, "prop2 needs an even u");
  require(K.symmetric() && A.symmetric(), ErrorKind::InvalidArgument, "prop2 needs symmetric K and A");
  const int n = K.dim();
  IntegrationOptions o = opts;
  o.even = true;
  const auto rk = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* out) {
        out[0] = 1.0;
        out[1] = frob_sq(u.hessian(x));
      },
      2, o);
  const double C2 = C_poin * C_poin;
  const auto ra = integrate_over_body(
      mu, A,
      [&](const Vec& x, double* out) {
        const Vec gV = mu.grad_V(x);
        out[0] = 1.0;
        out[1] = u.hessian(x).trace() - u.gradient(x).dot(gV);
        out[2] = C2 * gV.squaredNorm() - 2.0 * gV.dot(x);
      },
      3, o);
  CertificateReport c;
  const Avg lhs = ratio(rk.value[1], rk.error[1], rk.value[0], rk.error[0]);
  const Avg a = ratio(ra.value[1], ra.error[1], ra.value[0], ra.error[0]);
  const Avg d = ratio(ra.value[2], ra.error[2], ra.value[0], ra.error[0]);
  const double share = ra.value[0] / rk.value[0];
  const double e_share = ra.error[0] / rk.value[0] + share * rk.error[0] / rk.value[0];
  c.lhs = lhs.value;
  c.mean_Lu = a.value;
  c.denominator = n + d.value;
  if (c.denominator <= 0.0) {
    c.vacuous = true;
    c.note = "denominator not positive; bound vacuous";
    c.rhs = 0.0;
    finish(c);
    return c;
  }
  c.t_star = -a.value / c.denominator;
  c.rhs = share * a.value * a.value / c.denominator;
  c.error = lhs.error + e_share * a.value * a.value / c.denominator +
            share * 2.0 * std::abs(a.value) * a.error / c.denominator +
            share * a.value * a.value * d.error / (c.denominator * c.denominator);
  finish(c);
  return c;
}

CertificateReport check_prop1(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& u,
                              const IntegrationOptions& opts) {
  require(mu.dim() == u.dim() && mu.dim() == K.dim(), ErrorKind::DimensionMismatch,
          "measure, body and function differ in dimension");
  const Potential& V = mu.potential();
  const int n = K.dim();
  if (V.degeneracy() == HessianDegeneracy::Everywhere)
    fail(ErrorKind::SingularHessian, "Hess V vanishes on a set of positive measure");
  if (V.degeneracy() == HessianDegeneracy::Hyperplanes && V.degeneracy_order() >= 1.0)
    fail(ErrorKind::SingularHessian, "(Hess V)^{-1} is not integrable near the coordinate hyperplanes");
  CertificateReport c;
  if (V.degeneracy() == HessianDegeneracy::Origin && V.degeneracy_order() >= n &&
      u.hessian(Vec::Zero(n)).norm() > 1e-12) {
    c.divergent = true;
    c.lhs = kInf;
    c.note = "left side diverges at the origin";
    finish(c);
    c.slack = kInf;
    return c;
  }
  IntegrationOptions o = opts;
  o.even = integrand_even(K, u);
  const auto r = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* out) {
        const Vec g = u.gradient(x);
        const Mat Hu = u.hessian(x);
        const auto b = bregman_terms(mu, x);
        out[0] = 1.0;
        out[1] = weighted_trace(Hu, mu.hessian_V(x));
        out[2] = g.squaredNorm();
        out[3] = Hu.trace() - g.dot(mu.grad_V(x));
        out[4] = b.LV;
      },
      5, o);
  const Avg T = ratio(r.value[1], r.error[1], r.value[0], r.error[0]);
  const Avg G = ratio(r.value[2], r.error[2], r.value[0], r.error[0]);
  const Avg Lu = ratio(r.value[3], r.error[3], r.value[0], r.error[0]);
  const Avg LV = ratio(r.value[4], r.error[4], r.value[0], r.error[0]);
  c.lhs = T.value;
  c.mean_Lu = Lu.value;
  c.denominator = LV.value;
  if (LV.value <= 3.0 * LV.error + 1e-14) {
    c.vacuous = true;
    c.note = "average of LV vanishes; bound vacuous";
    c.rhs = G.value;
    finish(c);
    return c;
  }
  c.t_star = Lu.value / LV.value;
  c.rhs = G.value + Lu.value * Lu.value / LV.value;
  c.error = T.error + G.error + 2.0 * std::abs(Lu.value) * Lu.error / LV.value +
            Lu.value * Lu.value * LV.error / (LV.value * LV.value);
  finish(c);
  return c;
}

MeasSimpleBound meas_simple_bound(const LogConcaveMeasure& mu, const ConvexBody& K, std::optional<double> k1) {
  require(mu.dim() == K.dim(), ErrorKind::DimensionMismatch, "measure and body differ in dimension");
  const int n = K.dim();
  MeasSimpleBound out;
  if (k1) {
    out.k1 = *k1;
  } else {
    out.k1 = kInf;
    std::vector<Vec> dirs = n == 1 ? std::vector<Vec>{Vec::Ones(1), -Vec::Ones(1)} : probe_directions(n, 64);
    for (const Vec& th : dirs) {
      double R;
      try {
        R = K.radial_function(th);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InfiniteRadius) throw;
        R = kInf;
      }
      R = std::min(R, radial_cutoff(mu.potential(), th, 50.0));
      for (int s = 0; s <= 10; ++s) {
        const Mat H = mu.hessian_V((0.1 * s * R) * th);
        if (!H.allFinite()) continue;
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        out.k1 = std::min(out.k1, es.eigenvalues().minCoeff());
      }
    }
  }
  if (!(out.k1 > 0.0)) fail(ErrorKind::SingularHessian, "measure is not uniformly strictly log-concave on K");
  IntegrationOptions o;
  o.even = K.symmetric();
  const auto r = integrate_over_body(
      mu, K,
      [&](const Vec& x, double* v) {
        v[0] = 1.0;
        v[1] = bregman_terms(mu, x).LV;
      },
      2, o);
  const Avg lv = ratio(r.value[1], r.error[1], r.value[0], r.error[0]);
  out.avg_LV = lv.value;
  if (lv.value <= 3.0 * lv.error + 1e-13) {
    out.infinite = true;
    out.bound = kInf;
    out.error = kInf;
    return out;
  }
  out.bound = out.k1 / lv.value;
  out.error = out.k1 * lv.error / (lv.value * lv.value);
  return out;
}

SublevelBody sublevel_body(const LogConcaveMeasure& mu, double alpha) {
  const int n = mu.dim();
  require(n >= 2, ErrorKind::InvalidArgument, "the scaled sublevel body needs n >= 2");
  require(alpha > 0.0, ErrorKind::InvalidArgument, "alpha must be positive");
  const PotentialPtr& W = mu.potential_ptr();
  const Vec zero = Vec::Zero(n);
  const double W0 = W->value(zero);
  const auto dirs = probe_directions(n, 256);
  for (const Vec& th : dirs)
    if (!std::isfinite(radial_cutoff(*W, th, alpha * n)))
      fail(ErrorKind::InfiniteRadius, "sublevel set is unbounded");
  SublevelBody out{scaled(ConvexBody::sublevel(W, W0 + alpha * n), (n - 1.0) / n), W0 + alpha * n};
  const auto m = body_measure(mu, out.body, Backend::Radial);
  out.measure = m.value;
  out.measure_error = m.error;
  out.ball_contained = true;
  for (const Vec& th : dirs)
    if (W->value(0.1 * th) > out.level) out.ball_contained = false;
  for (const Vec& th : dirs) {
    const double R = out.body.radial_function(th);
    for (double s : {0.2, 0.4, 0.6, 0.8, 1.0}) out.max_gradient = std::max(out.max_gradient, W->gradient((s * R) * th).norm());
  }
  out.gradient_bound = 10.0 * alpha * n * n;
  return out;
}

GradientImageCheck check_gradient_image(PotentialPtr W, double q, double r, double lambda, std::size_t samples,
                                        std::uint64_t seed) {
  require(q > 0.0 && r > 0.0, ErrorKind::InvalidArgument, "q and r must be positive");
  require(lambda > 0.0 && lambda <= 1.0, ErrorKind::InvalidArgument, "lambda must lie in (0, 1]");
  const int n = W->dim();
  const double W0 = W->value(Vec::Zero(n));
  const ConvexBody X = ConvexBody::sublevel(W, q + W0);
  const ConvexBody Z = ConvexBody::sublevel(W, r + W0);
  GradientImageCheck out;
  out.bound = (1.0 - lambda) * q / lambda + r;
  out.max_value = -kInf;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto direction = [&] {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = N01(rng);
    return Vec(v / v.norm());
  };
  auto consider = [&](const Vec& x, const Vec& g, const Vec& z) {
    const double val = g.dot(z);
    ++out.pairs;
    if (val > out.max_value) {
      out.max_value = val;
      out.witness_x = x;
      out.witness_z = z;
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec tx = direction(), tz = direction();
    const double fx = s % 8 == 0 ? 1.0 : std::pow(U(rng), 1.0 / n);
    const double fz = s % 8 == 1 ? 1.0 : std::pow(U(rng), 1.0 / n);
    const Vec x = (1.0 - lambda) * fx * X.radial_function(tx) * tx;
    const Vec z = fz * Z.radial_function(tz) * tz;
    const Vec g = W->gradient(x);
    consider(x, g, z);
    if (s % 2 == 0 && g.norm() > 0.0) {
      const Vec gh = g / g.norm();
      consider(x, g, Z.radial_function(gh) * gh);
    }
  }
  out.max_violation = std::max(0.0, out.max_value - out.bound);
  out.pass = out.max_value <= out.bound + 1e-9 * (1.0 + out.bound);
  return out;
}

}  // namespace bmforge
