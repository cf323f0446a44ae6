#include "bmforge/scalar_field.hpp"

#include <algorithm>
#include <cmath>

namespace bmforge {

namespace {

double trap(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace

Vec ScalarField::point(std::size_t k) const {
  const int i = static_cast<int>(k % static_cast<std::size_t>(nx + 1));
  Vec p(dim);
  p[0] = x0 + i * hx;
  if (dim == 2) p[1] = y0 + static_cast<int>(k / static_cast<std::size_t>(nx + 1)) * hy;
  return p;
}

Vec ScalarField::gradient(std::size_t k) const {
  Vec g(dim);
  g[0] = gx[k];
  if (dim == 2) g[1] = gy[k];
  return g;
}

Mat ScalarField::hessian(std::size_t k) const {
  Mat H(dim, dim);
  H(0, 0) = hxx[k];
  if (dim == 2) {
    H(0, 1) = H(1, 0) = hxy[k];
    H(1, 1) = hyy[k];
  }
  return H;
}

double ScalarField::laplacian(std::size_t k) const { return hxx[k] + (dim == 2 ? hyy[k] : 0.0); }

double ScalarField::weight(std::size_t k) const {
  const int i = static_cast<int>(k % static_cast<std::size_t>(nx + 1));
  double w = trap(i, nx) * hx;
  if (dim == 2) w *= trap(static_cast<int>(k / static_cast<std::size_t>(nx + 1)), ny) * hy;
  return w;
}

double ScalarField::coarse_weight(std::size_t k) const {
  const int i = static_cast<int>(k % static_cast<std::size_t>(nx + 1));
  const int j = dim == 2 ? static_cast<int>(k / static_cast<std::size_t>(nx + 1)) : 0;
  if (i % 2 != 0 || j % 2 != 0 || nx % 2 != 0 || (dim == 2 && ny % 2 != 0)) return 0.0;
  double w = trap(i / 2, nx / 2) * 2.0 * hx;
  if (dim == 2) w *= trap(j / 2, ny / 2) * 2.0 * hy;
  return w;
}

double ScalarField::L(const LogConcaveMeasure& mu, std::size_t k) const {
  return laplacian(k) - gradient(k).dot(mu.grad_V(point(k)));
}

double evenness_defect(const ScalarField& f) {
  double d = 0.0;
  const std::size_t N = f.nodes();
  for (std::size_t k = 0; k < N; ++k) d = std::max(d, std::abs(f.u[k] - f.u[N - 1 - k]));
  return d;
}

}  // namespace bmforge

namespace bmforge {

namespace {

// d/ds of values v[0..n] with spacing h: centred inside, one-sided at the ends.
double diff1(const std::vector<double>& v, std::size_t k, int i, int n, std::size_t step, double h) {
  if (i == 0) return (-3.0 * v[k] + 4.0 * v[k + step] - v[k + 2 * step]) / (2.0 * h);
  if (i == n) return (3.0 * v[k] - 4.0 * v[k - step] + v[k - 2 * step]) / (2.0 * h);
  return (v[k + step] - v[k - step]) / (2.0 * h);
}

double diff2(const std::vector<double>& v, std::size_t k, int i, int n, std::size_t step, double h) {
  if (n < 3) return (v[k + step] - 2.0 * v[k] + v[k - step]) / (h * h);
  if (i == 0) return (2.0 * v[k] - 5.0 * v[k + step] + 4.0 * v[k + 2 * step] - v[k + 3 * step]) / (h * h);
  if (i == n) return (2.0 * v[k] - 5.0 * v[k - step] + 4.0 * v[k - 2 * step] - v[k - 3 * step]) / (h * h);
  return (v[k + step] - 2.0 * v[k] + v[k - step]) / (h * h);
}

}  // namespace

void differentiate(ScalarField& f) {
  const std::size_t N = f.nodes(), row = static_cast<std::size_t>(f.nx + 1);
  f.gx.assign(N, 0.0);
  f.hxx.assign(N, 0.0);
  f.gy.assign(N, 0.0);
  f.hyy.assign(N, 0.0);
  f.hxy.assign(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    const int i = static_cast<int>(k % row);
    f.gx[k] = diff1(f.u, k, i, f.nx, 1, f.hx);
    f.hxx[k] = diff2(f.u, k, i, f.nx, 1, f.hx);
    if (f.dim == 2) {
      const int j = static_cast<int>(k / row);
      f.gy[k] = diff1(f.u, k, j, f.ny, row, f.hy);
      f.hyy[k] = diff2(f.u, k, j, f.ny, row, f.hy);
    }
  }
  if (f.dim == 2)
    for (std::size_t k = 0; k < N; ++k) {
      const int i = static_cast<int>(k % row), j = static_cast<int>(k / row);
      f.hxy[k] = 0.5 * (diff1(f.gy, k, i, f.nx, 1, f.hx) + diff1(f.gx, k, j, f.ny, row, f.hy));
    }
}

ScalarField sample_field(const TestFunction& u, const Vec& half_widths, int nx, bool analytic_derivatives) {
  const int n = static_cast<int>(half_widths.size());
  require(n == 1 || n == 2, ErrorKind::InvalidArgument, "fields live in one or two dimensions");
  require(u.dim() == n, ErrorKind::DimensionMismatch, "function and box differ in dimension");
  ScalarField f;
  f.dim = n;
  f.nx = nx;
  f.hx = 2.0 * half_widths[0] / nx;
  f.x0 = -half_widths[0];
  if (n == 2) {
    f.ny = std::max(2, 2 * static_cast<int>(std::lround(0.5 * nx * half_widths[1] / half_widths[0])));
    f.hy = 2.0 * half_widths[1] / f.ny;
    f.y0 = -half_widths[1];
  }
  f.even = u.even();
  const std::size_t N = f.nodes();
  f.u.resize(N);
  f.gx.resize(N);
  f.hxx.resize(N);
  f.gy.assign(N, 0.0);
  f.hyy.assign(N, 0.0);
  f.hxy.assign(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    const Vec x = f.point(k);
    f.u[k] = u.value(x);
    if (!analytic_derivatives) continue;
    const Vec g = u.gradient(x);
    const Mat H = u.hessian(x);
    f.gx[k] = g[0];
    f.hxx[k] = H(0, 0);
    if (n == 2) {
      f.gy[k] = g[1];
      f.hyy[k] = H(1, 1);
      f.hxy[k] = H(0, 1);
    }
  }
  if (!analytic_derivatives) differentiate(f);
  return f;
}

}  // namespace bmforge
