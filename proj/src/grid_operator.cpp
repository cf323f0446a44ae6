#include "bmforge/grid_operator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "bmforge/simd/kernels.hpp"

namespace bmforge {

namespace {

// Subtracts the plain mean over active cells (A's null space is the constants).
void project_range(const WeightedGrid& g, std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (g.active[i]) s += b[i];
  s /= static_cast<double>(g.active_count);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = g.active[i] ? b[i] - s : 0.0;
}

// Removes the M-weighted mean.
void project_mass(const WeightedGrid& g, std::vector<double>& x) {
  double s = 0.0, m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += g.mass[i] * x[i];
    m += g.mass[i];
  }
  s /= m;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.active[i] ? x[i] - s : 0.0;
}

double mass_norm(const WeightedGrid& g, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += g.mass[i] * x[i] * x[i];
  return std::sqrt(s);
}

void symmetrize(const WeightedGrid& g, std::vector<double>& x) {
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t a = g.index(i, j), b = g.index(g.nx - 1 - i, g.ny - 1 - j);
      if (a < b) {
        const double m = 0.5 * (x[a] + x[b]);
        x[a] = x[b] = m;
      }
    }
}

}  // namespace

WeightedGrid build_weighted_grid(const Potential& V, int dim, double lo_x, double hi_x, double lo_y,
                                 double hi_y, int nx, int ny, const Membership& inside) {
  require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "grid operator supports n = 1, 2");
  require(nx >= 2 && (dim == 1 || ny >= 2), ErrorKind::GridTooCoarse, "grid needs at least two cells per axis");
  if (dim == 1) ny = 1;
  WeightedGrid g;
  g.nx = nx;
  g.ny = ny;
  g.stride = static_cast<std::size_t>(nx) + 2;
  g.x0 = lo_x;
  g.hx = (hi_x - lo_x) / nx;
  g.y0 = dim == 2 ? lo_y : 0.0;
  g.hy = dim == 2 ? (hi_y - lo_y) / ny : 1.0;
  const std::size_t N = g.size();
  g.diag.assign(N, 0.0);
  g.east.assign(N, 0.0);
  g.north.assign(N, 0.0);
  g.mass.assign(N, 0.0);
  g.active.assign(N, 0);

  Vec p(dim);
  const double V0 = V.value(Vec::Zero(dim));
  auto rho = [&](double x, double y) {
    p[0] = x;
    if (dim == 2) p[1] = y;
    return std::exp(-(V.value(p) - V0));
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = g.cx(i), y = dim == 2 ? g.cy(j) : 0.0;
      if (!inside || inside(x, y)) g.active[g.index(i, j)] = 1;
    }

  // Keep the largest 4-connected component.
  std::vector<int> label(N, -1);
  int best_label = -1;
  std::size_t best_size = 0;
  int next = 0;
  for (std::size_t s = 0; s < N; ++s) {
    if (!g.active[s] || label[s] >= 0) continue;
    std::deque<std::size_t> q{s};
    label[s] = next;
    std::size_t count = 0;
    while (!q.empty()) {
      const std::size_t c = q.front();
      q.pop_front();
      ++count;
      for (std::size_t nb : {c + 1, c - 1, c + g.stride, c - g.stride})
        if (g.active[nb] && label[nb] < 0) {
          label[nb] = next;
          q.push_back(nb);
        }
    }
    if (count > best_size) {
      best_size = count;
      best_label = next;
    }
    ++next;
  }
  for (std::size_t s = 0; s < N; ++s)
    if (g.active[s] && label[s] != best_label) g.active[s] = 0;
  g.active_count = best_size;
  require(best_size >= 4, ErrorKind::GridTooCoarse, "domain resolved by fewer than four cells");

  const double ce = g.hy / g.hx, cn = g.hx / g.hy;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      if (!g.active[c]) continue;
      const double x = g.cx(i), y = dim == 2 ? g.cy(j) : 0.0;
      g.mass[c] = rho(x, y) * g.hx * g.hy;
      if (g.active[c + 1]) g.east[c] = ce * rho(x + 0.5 * g.hx, y);
      if (dim == 2 && g.active[c + g.stride]) g.north[c] = cn * rho(x, y + 0.5 * g.hy);
    }
  for (std::size_t c = g.begin(); c < g.end(); ++c)
    g.diag[c] = g.active[c] ? g.east[c] + g.east[c - 1] + g.north[c] + g.north[c - g.stride] : 1.0;
  return g;
}

void apply_operator(const WeightedGrid& g, const std::vector<double>& x, std::vector<double>& y) {
  y.assign(g.size(), 0.0);
  simd::kernels().stencil5(g.diag.data(), g.east.data(), g.north.data(), x.data(), y.data(), g.stride,
                           g.begin(), g.end());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!g.active[i]) y[i] = 0.0;
}

PcgResult solve_neumann(const WeightedGrid& g, std::vector<double> b, std::vector<double>& y, double tol,
                        int max_iter) {
  const auto& k = simd::kernels();
  const std::size_t N = g.size();
  project_range(g, b);
  if (y.size() != N) y.assign(N, 0.0);
  const double bnorm = std::sqrt(k.dot(b.data(), b.data(), N));
  PcgResult res;
  if (bnorm == 0.0) {
    std::fill(y.begin(), y.end(), 0.0);
    return res;
  }
  std::vector<double> r(N), z(N), p(N), Ap(N);
  apply_operator(g, y, Ap);
  for (std::size_t i = 0; i < N; ++i) r[i] = b[i] - Ap[i];
  project_range(g, r);
  for (std::size_t i = 0; i < N; ++i) z[i] = g.active[i] ? r[i] / g.diag[i] : 0.0;
  p = z;
  double rz = k.dot(r.data(), z.data(), N);
  for (int it = 0; it < max_iter; ++it) {
    const double rn = std::sqrt(k.dot(r.data(), r.data(), N));
    res.relative_residual = rn / bnorm;
    if (res.relative_residual <= tol) return res;
    apply_operator(g, p, Ap);
    const double pAp = k.dot(p.data(), Ap.data(), N);
    if (!(pAp > 0.0)) break;
    const double alpha = rz / pAp;
    k.axpy(alpha, p.data(), y.data(), N);
    k.axpy(-alpha, Ap.data(), r.data(), N);
    for (std::size_t i = 0; i < N; ++i) z[i] = g.active[i] ? r[i] / g.diag[i] : 0.0;
    const double rz_new = k.dot(r.data(), z.data(), N);
    k.xpay(z.data(), rz_new / rz, p.data(), N);
    rz = rz_new;
    res.iterations = it + 1;
  }
  if (res.relative_residual > 1e3 * tol)
    fail(ErrorKind::SolverFailed, "conjugate gradients stalled at relative residual " +
                                      std::to_string(res.relative_residual));
  return res;
}

EigenResult smallest_neumann_eigenpair(const WeightedGrid& g, bool even, double tol) {
  // Block inverse iteration with Rayleigh-Ritz; clusters of nearly equal
  // eigenvalues (square domains, even Gaussian modes) then converge at the rate
  // lambda_1 / lambda_{b+1}.
  constexpr int kBlock = 4;
  const std::size_t N = g.size();
  std::vector<std::vector<double>> X(kBlock, std::vector<double>(N, 0.0));
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double sx = 0.5 * g.nx * g.hx, sy = 0.5 * g.ny * g.hy;
  const double mx = g.x0 + sx, my = g.y0 + sy;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t c = g.index(i, j);
      if (!g.active[c]) continue;
      const double u = (g.cx(i) - mx) / sx, v = g.ny > 1 ? (g.cy(j) - my) / sy : 0.0;
      const double seeds_even[kBlock] = {u * u, v * v, u * v, u * u * u * u};
      const double seeds_odd[kBlock] = {u, v, u * v * v, u * u * u};
      for (int b = 0; b < kBlock; ++b)
        X[static_cast<std::size_t>(b)][c] = (even ? seeds_even[b] : seeds_odd[b]) + 0.05 * U(rng);
    }

  EigenResult out;
  std::vector<std::vector<double>> Y(kBlock, std::vector<double>(N, 0.0)), AY(kBlock);
  std::vector<double> b(N);
  double lambda_prev = 0.0;
  Eigen::VectorXd ritz = Eigen::VectorXd::Ones(kBlock);
  for (int it = 0; it < 500; ++it) {
    for (int k = 0; k < kBlock; ++k) {
      auto& x = X[static_cast<std::size_t>(k)];
      auto& y = Y[static_cast<std::size_t>(k)];
      if (even) symmetrize(g, x);
      project_mass(g, x);
      for (std::size_t i = 0; i < N; ++i) b[i] = g.mass[i] * x[i];
      if (it > 0)
        for (std::size_t i = 0; i < N; ++i) y[i] = x[i] / ritz[k];
      else
        std::fill(y.begin(), y.end(), 0.0);
      const auto pr = solve_neumann(g, b, y, std::min(1e-11, 0.1 * tol));
      out.inner_iterations += pr.iterations;
      if (even) symmetrize(g, y);
      project_mass(g, y);
      const double nrm = mass_norm(g, y);
      for (auto& v : y) v /= nrm;
      apply_operator(g, y, AY[static_cast<std::size_t>(k)]);
    }
    Eigen::MatrixXd Ar(kBlock, kBlock), Mr(kBlock, kBlock);
    for (int a = 0; a < kBlock; ++a)
      for (int c = a; c < kBlock; ++c) {
        double sa = 0.0, sm = 0.0;
        const auto& ya = Y[static_cast<std::size_t>(a)];
        const auto& yc = Y[static_cast<std::size_t>(c)];
        const auto& ayc = AY[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < N; ++i) {
          sa += ya[i] * ayc[i];
          sm += g.mass[i] * ya[i] * yc[i];
        }
        Ar(a, c) = Ar(c, a) = sa;
        Mr(a, c) = Mr(c, a) = sm;
      }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ar, Mr);
    if (ges.info() != Eigen::Success) fail(ErrorKind::SolverFailed, "Rayleigh-Ritz step failed");
    ritz = ges.eigenvalues();
    const Eigen::MatrixXd W = ges.eigenvectors();
    for (int k = 0; k < kBlock; ++k) {
      auto& x = X[static_cast<std::size_t>(k)];
      std::fill(x.begin(), x.end(), 0.0);
      for (int a = 0; a < kBlock; ++a) {
        const double w = W(a, k);
        const auto& ya = Y[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < N; ++i) x[i] += w * ya[i];
      }
    }
    out.iterations = it + 1;
    const double lambda = ritz[0];
    if (lambda_prev > 0.0 && std::abs(lambda - lambda_prev) <= tol * lambda) {
      out.lambda = lambda;
      out.vector = X[0];
      return out;
    }
    lambda_prev = lambda;
  }
  fail(ErrorKind::SolverFailed, "inverse iteration did not converge");
}

}  // namespace bmforge
