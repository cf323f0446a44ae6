#include "bmforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bmforge/gauss_kronrod.hpp"
#include "bmforge/parallel.hpp"
#include "bmforge/radial.hpp"
#include "bmforge/simd/kernels.hpp"

namespace bmforge {

namespace {

constexpr double kTailDrop = 750.0;

struct InnerProblem {
  const LogConcaveMeasure& mu;
  const ConvexBody& K;
  const FieldIntegrand& f;
  int m;
  std::vector<double> k;  // t-exponents n - 1 + a_i
  double k_min, k_max;
  double V0;
  bool flat;  // V constant
  double rel_tol;
};

// Writes m inner integrals then m error estimates for direction u.
std::size_t inner_integral(const InnerProblem& P, const Vec& u, double* out) {
  const int m = P.m;
  double rb = kInf, rb_err = 0.0;
  try {
    const RadialValue r = P.K.radial(u);
    rb = r.value;
    rb_err = r.error;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InfiniteRadius) throw;
  }
  const Potential& V = P.mu.potential();
  double R = rb;
  bool truncated = false;
  if (!P.flat) {
    const double cut = radial_cutoff(V, u, kTailDrop, std::max(P.k_max, 0.0));
    if (cut < R) {
      R = cut;
      truncated = true;
    }
  }
  if (!std::isfinite(R))
    fail(ErrorKind::InfiniteRadius, "unbounded domain for a measure without decay");

  const bool subst = P.k_min < 0.0;
  const double mm = subst ? 1.0 / (P.k_min + 1.0) : 1.0;
  std::vector<double> fx(static_cast<std::size_t>(m));
  Vec x(u.size());
  auto point = [&](double t, double jac, double* o) {
    x = t * u;
    P.f(x, fx.data());
    const double rho = P.flat ? 1.0 : std::exp(-(V.value(x) - P.V0));
    const double lt = std::log(t);
    for (int i = 0; i < m; ++i) {
      const double tk = P.k[static_cast<std::size_t>(i)] == 0.0
                            ? 1.0
                            : std::exp(P.k[static_cast<std::size_t>(i)] * lt);
      o[i] = jac * tk * fx[static_cast<std::size_t>(i)] * rho;
    }
  };
  VectorIntegrand g;
  double upper = R;
  if (subst) {
    upper = std::pow(R, 1.0 / mm);
    g = [&](double s, double* o) {
      if (s <= 0.0) {
        std::fill(o, o + m, 0.0);
        return;
      }
      const double t = std::pow(s, mm);
      point(t, mm * std::pow(s, mm - 1.0), o);
    };
  } else {
    g = [&](double t, double* o) {
      if (t <= 0.0) {
        std::fill(o, o + m, 0.0);
        return;
      }
      point(t, 1.0, o);
    };
  }
  std::vector<double> breaks;
  const double L = V.length_scale();
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double t = s * L;
    if (t < R) breaks.push_back(subst ? std::pow(t, 1.0 / mm) : t);
  }
  QuadOptions qo;
  qo.abs_tol = 0.0;
  qo.rel_tol = std::min(1e-12, 1e-2 * P.rel_tol);
  qo.max_intervals = 4096;
  const QuadResultN r = integrate(g, m, 0.0, upper, qo, breaks);
  for (int i = 0; i < m; ++i) {
    out[i] = r.value[static_cast<std::size_t>(i)];
    out[m + i] = r.error[static_cast<std::size_t>(i)];
  }
  if (rb_err > 0.0 && !truncated) {
    std::vector<double> edge(static_cast<std::size_t>(m));
    point(R, 1.0, edge.data());
    for (int i = 0; i < m; ++i) out[m + i] += std::abs(edge[static_cast<std::size_t>(i)]) * rb_err;
  }
  return r.evaluations;
}

double angle_mod(double a, double period) {
  a = std::fmod(a, period);
  return a < 0 ? a + period : a;
}

BodyIntegral sphere_integrate(const InnerProblem& P, const ConvexBody& K,
                              const IntegrationOptions& opts) {
  const int n = K.dim();
  const int m = P.m;
  const auto mz = static_cast<std::size_t>(m);
  BodyIntegral out;
  out.value.assign(mz, 0.0);
  out.error.assign(mz, 0.0);
  std::vector<double> buf(2 * mz);

  if (n == 1) {
    for (double s : {1.0, -1.0}) {
      if (opts.even && s < 0) {
        for (std::size_t i = 0; i < mz; ++i) {
          out.value[i] *= 2.0;
          out.error[i] *= 2.0;
        }
        break;
      }
      out.nodes += inner_integral(P, Vec::Constant(1, s), buf.data());
      for (std::size_t i = 0; i < mz; ++i) {
        out.value[i] += buf[i];
        out.error[i] += buf[mz + i];
      }
    }
    return out;
  }

  if (n == 2) {
    const double period = opts.even ? kPi : 2.0 * kPi;
    std::vector<double> breaks;
    for (double a : K.kink_angles()) breaks.push_back(angle_mod(a, period));
    for (const Vec& d : P.mu.potential().kink_directions())
      breaks.push_back(angle_mod(std::atan2(d[1], d[0]), period));
    std::sort(breaks.begin(), breaks.end());
    std::size_t evals = 0;
    VectorIntegrand g = [&](double phi, double* o) {
      const Vec u = Vec(Eigen::Vector2d(std::cos(phi), std::sin(phi)));
      evals += inner_integral(P, u, o);
    };
    QuadOptions qo;
    qo.rel_tol = opts.rel_tol;
    qo.abs_tol = opts.abs_tol;
    qo.max_intervals = 20000;
    qo.tracked = mz;
    const QuadResultN r = integrate(g, 2 * m, 0.0, period, qo, breaks);
    const double factor = opts.even ? 2.0 : 1.0;
    for (std::size_t i = 0; i < mz; ++i) {
      out.value[i] = factor * r.value[i];
      out.error[i] = factor * (r.error[i] + std::abs(r.value[mz + i]));
    }
    out.nodes = evals;
    out.converged = r.converged;
    return out;
  }

  if (n == 3) {
    // Product Gauss-Legendre in (polar, azimuth) on each octant; error from halving.
    const int N = opts.budget > 0
                      ? std::max(4, static_cast<int>(std::sqrt(static_cast<double>(opts.budget) / 8.0)))
                      : 24;
    // Quintic grading flattens power-type singularities on the octant faces.
    auto grade = [](double u) { return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u); };
    auto grade_jacobian = [](double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); };
    auto run = [&](int nodes_per_axis, std::vector<double>& val, std::vector<double>& err) {
      const GaussRule rule = gauss_legendre(nodes_per_axis);
      struct Dir {
        Vec u;
        double w;
      };
      std::vector<Dir> dirs;
      const int z_halves = opts.even ? 1 : 2;
      for (int zh = 0; zh < z_halves; ++zh)
        for (int q = 0; q < 4; ++q)
          for (int a = 0; a < nodes_per_axis; ++a)
            for (int b = 0; b < nodes_per_axis; ++b) {
              const double ua = 0.5 * (rule.nodes[static_cast<std::size_t>(a)] + 1.0);
              const double ub = 0.5 * (rule.nodes[static_cast<std::size_t>(b)] + 1.0);
              const double theta = 0.5 * kPi * (zh + grade(ua));
              const double phi = 0.5 * kPi * (q + grade(ub));
              const double z = std::cos(theta), rr = std::sin(theta);
              const double w = 0.25 * kPi * rule.weights[static_cast<std::size_t>(a)] * grade_jacobian(ua) * rr *
                               0.25 * kPi * rule.weights[static_cast<std::size_t>(b)] * grade_jacobian(ub);
              dirs.push_back({Vec(Eigen::Vector3d(rr * std::cos(phi), rr * std::sin(phi), z)), w});
            }
      std::vector<double> all(dirs.size() * 2 * mz);
      std::vector<std::size_t> counts(dirs.size());
      parallel_for(dirs.size(), [&](std::size_t i) {
        counts[i] = inner_integral(P, dirs[i].u, all.data() + i * 2 * mz);
      });
      val.assign(mz, 0.0);
      err.assign(mz, 0.0);
      std::size_t total = 0;
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t c = 0; c < mz; ++c) {
          val[c] += dirs[i].w * all[i * 2 * mz + c];
          err[c] += dirs[i].w * all[i * 2 * mz + mz + c];
        }
        total += counts[i];
      }
      const double factor = opts.even ? 2.0 : 1.0;
      for (std::size_t c = 0; c < mz; ++c) {
        val[c] *= factor;
        err[c] *= factor;
      }
      return total;
    };
    std::vector<double> v1, e1, v2, e2;
    out.nodes = run(N, v1, e1) + run(std::max(2, N / 2), v2, e2);
    for (std::size_t c = 0; c < mz; ++c) {
      out.value[c] = v1[c];
      out.error[c] = std::abs(v1[c] - v2[c]) + e1[c];
    }
    return out;
  }

  require(n == 4, ErrorKind::InvalidArgument, "polar quadrature supports n <= 4");
  // Stratified Hopf coordinates, one antithetic pair per stratum.
  const std::size_t pairs = std::max<std::size_t>(64, (opts.budget > 0 ? opts.budget : 4096) / 2);
  const int side = std::max(2, static_cast<int>(std::cbrt(static_cast<double>(pairs))));
  const std::size_t cells = static_cast<std::size_t>(side) * side * side;
  std::vector<double> all(cells * 2 * mz);
  std::vector<std::size_t> counts(cells);
  parallel_for(cells, [&](std::size_t c) {
    auto rng = make_stream(opts.seed, c);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int i = static_cast<int>(c / (static_cast<std::size_t>(side) * side));
    const int j = static_cast<int>((c / side) % side);
    const int l = static_cast<int>(c % side);
    const double s = (i + U(rng)) / side;
    const double x1 = 2.0 * kPi * (j + U(rng)) / side;
    const double x2 = 2.0 * kPi * (l + U(rng)) / side;
    const double a = std::sqrt(s), b = std::sqrt(1.0 - s);
    Vec u(4);
    u << a * std::cos(x1), a * std::sin(x1), b * std::cos(x2), b * std::sin(x2);
    std::vector<double> tmp(2 * mz);
    double* o = all.data() + c * 2 * mz;
    counts[c] = inner_integral(P, u, o);
    counts[c] += inner_integral(P, -u, tmp.data());
    for (std::size_t k = 0; k < 2 * mz; ++k) o[k] = 0.5 * (o[k] + tmp[k]);
  });
  const double area = 2.0 * kPi * kPi;
  for (std::size_t c = 0; c < mz; ++c) {
    double mean = 0.0, sq = 0.0, inner_err = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
      const double v = all[k * 2 * mz + c];
      mean += v;
      sq += v * v;
      inner_err += all[k * 2 * mz + mz + c];
    }
    mean /= cells;
    const double var = std::max(0.0, sq / cells - mean * mean);
    out.value[c] = area * mean;
    out.error[c] = 3.0 * area * std::sqrt(var / cells) + area * inner_err / cells;
  }
  out.nodes = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  return out;
}

double normalization_factor(const LogConcaveMeasure& mu) {
  const double V0 = mu.V0();
  return mu.normalized() ? std::exp(-V0 - mu.log_normalizer()) : std::exp(-V0);
}

MeasureEstimate grid_measure(const LogConcaveMeasure& mu, const ConvexBody& K, std::size_t budget) {
  const int n = K.dim();
  require(n <= 3, ErrorKind::InvalidArgument, "grid backend supports n <= 3");
  Vec w(n);
  bool truncated = false;
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    double s;
    try {
      s = std::max(K.support(e), K.support(-e));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InfiniteSupport) throw;
      s = kInf;
    }
    if (!std::isfinite(s)) {
      require(mu.normalized(), ErrorKind::InfiniteSupport, "grid over an unbounded body needs decay");
      s = std::max(radial_cutoff(mu.potential(), e, 40.0), radial_cutoff(mu.potential(), -e, 40.0));
      truncated = true;
    }
    w[i] = s;
  }
  const std::size_t def = n == 1 ? 200000 : (n == 2 ? 1000000 : 1728000);
  const std::size_t total = budget > 0 ? budget : def;
  const int N = std::max(8, static_cast<int>(std::floor(std::pow(static_cast<double>(total), 1.0 / n) + 1e-9)));
  Vec h(n);
  for (int i = 0; i < n; ++i) h[i] = 2.0 * w[i] / N;
  const double vol = h.prod();
  const double halfdiag = 0.5 * h.norm();
  const double rin = K.inradius();
  const double delta = std::isfinite(rin) && rin > 0 ? halfdiag / rin : 0.0;
  const double h2 = h.squaredNorm() / n;

  const auto& kern = simd::kernels();
  const auto halfspaces = K.gauge_halfspaces_2d();
  std::vector<double> ax, ay;
  if (halfspaces) {
    for (Eigen::Index i = 0; i < halfspaces->rows(); ++i) {
      ax.push_back((*halfspaces)(i, 0));
      ay.push_back((*halfspaces)(i, 1));
    }
  }
  const Potential& V = mu.potential();
  const double V0 = mu.V0();
  const bool flat = mu.family() == Family::Lebesgue;

  const std::size_t rows = n == 1 ? 1 : static_cast<std::size_t>(N) * (n == 3 ? N : 1);
  std::vector<double> row_in(rows), row_mixed(rows), row_curv(rows);
  parallel_for(rows, [&](std::size_t r) {
    std::vector<double> xs(static_cast<std::size_t>(N)), gauges(xs.size()), dens(xs.size()),
        curv(xs.size());
    Vec x(n);
    const int j = n >= 2 ? static_cast<int>(r % N) : 0;
    const int l = n == 3 ? static_cast<int>(r / N) : 0;
    if (n >= 2) x[1] = -w[1] + (j + 0.5) * h[1];
    if (n == 3) x[2] = -w[2] + (l + 0.5) * h[2];
    for (int i = 0; i < N; ++i) xs[static_cast<std::size_t>(i)] = -w[0] + (i + 0.5) * h[0];
    if (halfspaces && !truncated) {
      kern.halfspace_gauge_row(ax.data(), ay.data(), ax.size(), xs.data(), x[1], gauges.data(),
                               xs.size());
    }
    for (int i = 0; i < N; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      x[0] = xs[iu];
      if (truncated)
        gauges[iu] = 0.0;
      else if (!halfspaces)
        gauges[iu] = K.gauge(x);
      if (flat) {
        dens[iu] = 1.0;
        curv[iu] = 0.0;
      } else {
        dens[iu] = std::exp(-(V.value(x) - V0));
        curv[iu] = dens[iu] * std::abs(V.gradient(x).squaredNorm() - V.laplacian(x));
        if (!std::isfinite(curv[iu])) curv[iu] = 0.0;
      }
    }
    row_in[r] = kern.masked_sum(dens.data(), gauges.data(), 1.0, xs.size());
    row_mixed[r] = kern.masked_sum(dens.data(), gauges.data(), 1.0 + delta, xs.size()) -
                   kern.masked_sum(dens.data(), gauges.data(), 1.0 - delta, xs.size());
    row_curv[r] = kern.masked_sum(curv.data(), gauges.data(), 1.0 + delta, xs.size());
  });
  double in = 0.0, mixed = 0.0, curv = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    in += row_in[r];
    mixed += row_mixed[r];
    curv += row_curv[r];
  }
  const double c = normalization_factor(mu) * vol;
  MeasureEstimate est;
  est.backend = Backend::Grid;
  est.value = c * in;
  est.error = c * (mixed + h2 / 24.0 * curv);
  if (truncated) est.error += 1e-12;
  est.nodes = static_cast<std::size_t>(std::pow(static_cast<double>(N), n));
  return est;
}

MeasureEstimate mc_measure(const LogConcaveMeasure& mu, const ConvexBody& K, std::size_t budget,
                           std::uint64_t seed) {
  const std::size_t N = budget > 0 ? budget : 1000000;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (N + kChunk - 1) / kChunk;
  const int n = K.dim();
  const bool uniform = !mu.normalized();
  Vec w;
  double box_vol = 1.0;
  if (uniform) {
    require(K.bounded(), ErrorKind::InfiniteSupport, "Monte Carlo on an unbounded body needs decay");
    w = K.bounding_half_widths();
    box_vol = (2.0 * w).prod();
  }
  std::vector<std::size_t> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    auto rng = make_stream(seed, c);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const std::size_t count = std::min(kChunk, N - c * kChunk);
    std::size_t h = 0;
    Vec x(n);
    for (std::size_t s = 0; s < count; ++s) {
      if (uniform) {
        for (int i = 0; i < n; ++i) x[i] = w[i] * U(rng);
      } else {
        x = mu.sample(rng);
      }
      if (K.gauge(x) <= 1.0) ++h;
    }
    hits[c] = h;
  });
  const std::size_t total_hits = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
  const double p = static_cast<double>(total_hits) / static_cast<double>(N);
  MeasureEstimate est;
  est.backend = Backend::MonteCarlo;
  est.value = box_vol * p;
  est.std_error = box_vol * std::sqrt(std::max(p * (1.0 - p), 1.0 / N) / N);
  est.error = 3.0 * est.std_error;
  est.nodes = N;
  return est;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Radial: return "radial";
    case Backend::Grid: return "grid";
    case Backend::MonteCarlo: return "mc";
  }
  return "unknown";
}

Backend parse_backend(const std::string& name) {
  if (name == "radial") return Backend::Radial;
  if (name == "grid") return Backend::Grid;
  if (name == "mc" || name == "montecarlo") return Backend::MonteCarlo;
  fail(ErrorKind::InvalidArgument, "unknown backend '" + name + "'");
}

BodyIntegral integrate_over_body(const LogConcaveMeasure& mu, const ConvexBody& K,
                                 const FieldIntegrand& f, int m, const IntegrationOptions& opts,
                                 const std::vector<double>& radial_powers) {
  require(mu.dim() == K.dim(), ErrorKind::DimensionMismatch, "measure and body differ in dimension");
  require(m >= 1, ErrorKind::InvalidArgument, "integrand needs at least one component");
  require(radial_powers.empty() || static_cast<int>(radial_powers.size()) == m,
          ErrorKind::InvalidArgument, "one radial power per component");
  const int n = K.dim();
  InnerProblem P{mu, K, f, m, {}, kInf, -kInf, mu.V0(), mu.family() == Family::Lebesgue, opts.rel_tol};
  for (int i = 0; i < m; ++i) {
    const double a = radial_powers.empty() ? 0.0 : radial_powers[static_cast<std::size_t>(i)];
    require(a > -n, ErrorKind::InvalidArgument, "radial power must exceed -n for integrability");
    P.k.push_back(n - 1.0 + a);
    P.k_min = std::min(P.k_min, n - 1.0 + a);
    P.k_max = std::max(P.k_max, n - 1.0 + a);
  }
  BodyIntegral out = sphere_integrate(P, K, opts);
  const double c = normalization_factor(mu);
  for (std::size_t i = 0; i < out.value.size(); ++i) {
    out.value[i] *= c;
    out.error[i] *= c;
  }
  return out;
}

MeasureEstimate body_measure(const LogConcaveMeasure& mu, const ConvexBody& K, Backend backend,
                             std::size_t budget, std::uint64_t seed, double rel_tol) {
  require(mu.dim() == K.dim(), ErrorKind::DimensionMismatch, "measure and body differ in dimension");
  switch (backend) {
    case Backend::Grid: return grid_measure(mu, K, budget);
    case Backend::MonteCarlo: return mc_measure(mu, K, budget, seed);
    case Backend::Radial: break;
  }
  MeasureEstimate est;
  est.backend = Backend::Radial;
  if (mu.family() == Family::Lebesgue && K.dim() == 2) {
    if (auto P = K.polygon_vertices()) {
      est.value = polygon_area(*P);
      est.nodes = P->size();
      return est;
    }
  }
  IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.budget = budget;
  opts.seed = seed;
  opts.even = K.symmetric();
  const auto r = integrate_over_body(mu, K, [](const Vec&, double* o) { o[0] = 1.0; }, 1, opts);
  est.value = r.value[0];
  est.error = r.error[0];
  est.nodes = r.nodes;
  est.converged = r.converged;
  if (K.dim() == 4) est.std_error = r.error[0] / 3.0;
  return est;
}

MomentResult moment(const LogConcaveMeasure& mu, const ConvexBody& K, double q) {
  require(q > -K.dim(), ErrorKind::InvalidArgument, "moment order must exceed -n");
  IntegrationOptions opts;
  opts.even = K.symmetric();
  const auto r = integrate_over_body(
      mu, K, [](const Vec&, double* o) { o[0] = o[1] = 1.0; }, 2, opts, {q, 0.0});
  const double v = r.value[0] / r.value[1];
  const double e = r.error[0] / r.value[1] + std::abs(v) * r.error[1] / r.value[1];
  return {v, e};
}

double ball_measure(const LogConcaveMeasure& mu, double R) {
  require(mu.rotation_invariant(), ErrorKind::InvalidArgument, "ball measure needs a rotation-invariant measure");
  require(R >= 0.0, ErrorKind::InvalidArgument, "radius must be nonnegative");
  const int n = mu.dim();
  if (R == 0.0) return 0.0;
  if (!mu.normalized()) return std::exp(log_unit_ball_volume(n) + n * std::log(R));
  const RadialProfile prof(mu, Vec::Unit(n, 0));
  const double logJ = prof.log_J(n - 1.0, R);
  return std::exp(log_unit_sphere_area(n) + logJ - mu.V0() - mu.log_normalizer());
}

double equal_measure_ball(const LogConcaveMeasure& mu, const ConvexBody& K) {
  require(mu.rotation_invariant(), ErrorKind::InvalidArgument, "equal-measure ball needs a rotation-invariant measure");
  const double target = body_measure(mu, K, Backend::Radial).value;
  if (mu.normalized() && target >= 1.0 - 1e-12)
    fail(ErrorKind::NoFiniteBall, "body carries the full mass");
  double lo = 0.0, hi = 1.0;
  while (ball_measure(mu, hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) fail(ErrorKind::NoFiniteBall, "no finite ball reaches the target mass");
  }
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (ball_measure(mu, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CovarianceResult covariance_restriction(const LogConcaveMeasure& mu, const ConvexBody& K) {
  const int n = K.dim();
  const int pairs = n * (n + 1) / 2;
  const int m = 2 + pairs;
  std::vector<double> powers(static_cast<std::size_t>(m), 0.0);
  powers.back() = 4.0;
  IntegrationOptions opts;
  opts.even = K.symmetric();
  const auto r = integrate_over_body(
      mu, K,
      [n](const Vec& x, double* o) {
        o[0] = 1.0;
        int c = 1;
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) o[c++] = x[i] * x[j];
        o[c] = 1.0;
      },
      m, opts, powers);
  CovarianceResult out;
  out.cov = Mat::Zero(n, n);
  const double mass = r.value[0];
  double err = r.error[0] / mass;
  int c = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      out.cov(i, j) = out.cov(j, i) = r.value[static_cast<std::size_t>(c)] / mass;
      err = std::max(err, r.error[static_cast<std::size_t>(c)] / mass);
      ++c;
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(out.cov);
  out.op_norm = es.eigenvalues().maxCoeff();
  out.moment4_bound = std::sqrt(r.value.back() / mass);
  out.error = err * (1.0 + out.op_norm);
  return out;
}

}  // namespace bmforge
