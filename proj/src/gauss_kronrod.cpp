#include "bmforge/gauss_kronrod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "bmforge/common.hpp"

namespace bmforge {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  std::vector<double> value, error, absval;
  double priority;
  bool operator<(const Panel& o) const { return priority < o.priority; }
};

// One G7K15 panel, vector-valued.
void gk15(const VectorIntegrand& f, int dim, double a, double b, std::vector<double>& value,
          std::vector<double>& error, std::vector<double>& absval, std::vector<double>& scratch) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::size_t d = static_cast<std::size_t>(dim);
  scratch.assign(15 * d, 0.0);
  f(c, scratch.data());
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f(c - dx, scratch.data() + (1 + 2 * j) * d);
    f(c + dx, scratch.data() + (2 + 2 * j) * d);
  }
  value.assign(d, 0.0);
  error.assign(d, 0.0);
  absval.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double fc = scratch[k];
    double rk = kWgk[7] * fc;
    double rg = kWg[3] * fc;
    double rabs = std::abs(rk);
    for (int j = 0; j < 7; ++j) {
      const double f1 = scratch[(1 + 2 * j) * d + k];
      const double f2 = scratch[(2 + 2 * j) * d + k];
      rk += kWgk[j] * (f1 + f2);
      rabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * rk;
    double rasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
      rasc += kWgk[j] * (std::abs(scratch[(1 + 2 * j) * d + k] - mean) +
                         std::abs(scratch[(2 + 2 * j) * d + k] - mean));
    }
    rasc *= std::abs(h);
    rabs *= std::abs(h);
    double err = std::abs((rk - rg) * h);
    if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    if (rabs > std::numeric_limits<double>::min() / (50.0 * kEps))
      err = std::max(50.0 * kEps * rabs, err);
    value[k] = rk * h;
    error[k] = err;
    absval[k] = rabs;
  }
}

}  // namespace

QuadResultN integrate(const VectorIntegrand& f, int dim, double a, double b,
                      const QuadOptions& opts, std::span<const double> breakpoints) {
  require(dim >= 1, ErrorKind::InvalidArgument, "integrand dimension must be positive");
  QuadResultN out;
  const std::size_t d = static_cast<std::size_t>(dim);
  out.value.assign(d, 0.0);
  out.error.assign(d, 0.0);
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> scratch;
  std::vector<double> total(d, 0.0), total_err(d, 0.0), total_abs(d, 0.0);
  std::priority_queue<Panel> queue;
  std::vector<Panel> frozen;

  // The last term is a roundoff floor: cancelling integrands cannot be
  // resolved below a few ulps of int |f|.
  auto tolerance = [&](std::size_t k) {
    return std::max({opts.abs_tol, opts.rel_tol * std::abs(total[k]), 1e3 * kEps * total_abs[k]});
  };
  const std::size_t tracked = opts.tracked == 0 ? d : std::min(opts.tracked, d);
  auto priority = [&](const std::vector<double>& err) {
    double p = 0.0;
    for (std::size_t k = 0; k < tracked; ++k) {
      const double tol = tolerance(k);
      p = std::max(p, tol > 0.0 ? err[k] / tol : (err[k] > 0.0 ? kInf : 0.0));
    }
    return p;
  };

  std::vector<Panel> initial;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel pnl{cuts[i], cuts[i + 1], {}, {}, {}, 0.0};
    gk15(f, dim, pnl.a, pnl.b, pnl.value, pnl.error, pnl.absval, scratch);
    out.evaluations += 15;
    for (std::size_t k = 0; k < d; ++k) {
      total[k] += pnl.value[k];
      total_err[k] += pnl.error[k];
      total_abs[k] += pnl.absval[k];
    }
    initial.push_back(std::move(pnl));
  }
  for (auto& pnl : initial) {
    pnl.priority = priority(pnl.error);
    queue.push(std::move(pnl));
  }

  auto done = [&] {
    for (std::size_t k = 0; k < tracked; ++k)
      if (total_err[k] > tolerance(k)) return false;
    return true;
  };

  std::size_t intervals = queue.size();
  out.converged = true;
  while (!done()) {
    if (queue.empty() || intervals >= opts.max_intervals) {
      out.converged = false;
      break;
    }
    Panel top = queue.top();
    queue.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b) || (top.b - top.a) < 1e3 * kEps * std::max(1.0, std::abs(mid))) {
      frozen.push_back(std::move(top));
      continue;
    }
    Panel left{top.a, mid, {}, {}, {}, 0.0};
    Panel right{mid, top.b, {}, {}, {}, 0.0};
    gk15(f, dim, left.a, left.b, left.value, left.error, left.absval, scratch);
    gk15(f, dim, right.a, right.b, right.value, right.error, right.absval, scratch);
    out.evaluations += 30;
    for (std::size_t k = 0; k < d; ++k) {
      total[k] += left.value[k] + right.value[k] - top.value[k];
      total_err[k] += left.error[k] + right.error[k] - top.error[k];
      total_abs[k] += left.absval[k] + right.absval[k] - top.absval[k];
    }
    left.priority = priority(left.error);
    right.priority = priority(right.error);
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++intervals;
  }

  // Re-sum from panels to avoid drift from the running updates.
  std::fill(total.begin(), total.end(), 0.0);
  std::fill(total_err.begin(), total_err.end(), 0.0);
  auto accumulate = [&](const Panel& pnl) {
    for (std::size_t k = 0; k < d; ++k) {
      total[k] += pnl.value[k];
      total_err[k] += pnl.error[k];
    }
  };
  for (const auto& pnl : frozen) accumulate(pnl);
  while (!queue.empty()) {
    accumulate(queue.top());
    queue.pop();
  }
  for (std::size_t k = 0; k < d; ++k) {
    out.value[k] = sign * total[k];
    out.error[k] = total_err[k];
  }
  return out;
}

QuadResult integrate(const ScalarIntegrand& f, double a, double b, const QuadOptions& opts,
                     std::span<const double> breakpoints) {
  const auto r = integrate([&](double t, double* out) { out[0] = f(t); }, 1, a, b, opts,
                           breakpoints);
  return QuadResult{r.value[0], r.error[0], r.evaluations, r.converged};
}

QuadResult integrate_to_infinity(const ScalarIntegrand& f, double a, const QuadOptions& opts) {
  auto g = [&](double s) {
    const double one_minus = 1.0 - s;
    const double t = a + s / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  return integrate(g, 0.0, 1.0, opts);
}

GaussRule gauss_legendre(int N) {
  require(N >= 1, ErrorKind::InvalidArgument, "rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(N));
  rule.weights.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < (N + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= N; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (N == 1) p0 = 1.0;
      dp = N * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(N - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = rule.weights[hi] = w;
  }
  return rule;
}

}  // namespace bmforge
