#include "bmforge/exponent.hpp"

#include <cmath>

#include "bmforge/parallel.hpp"

namespace bmforge {

std::vector<double> default_lambda_grid(int count) {
  require(count >= 2, ErrorKind::InvalidArgument, "lambda grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(kPi * i / (count - 1)));
  g.front() = 0.0;
  g.back() = 1.0;
  if (count % 2 == 1) g[static_cast<std::size_t>(count / 2)] = 0.5;
  return g;
}

SlackAt slack_at(const ExponentReport& r, double p) {
  SlackAt s;
  const ScanPoint* k = nullptr;
  const ScanPoint* l = nullptr;
  for (const auto& pt : r.points) {
    if (!pt.ok) continue;
    if (pt.lambda == 0.0) k = &pt;
    if (pt.lambda == 1.0) l = &pt;
  }
  require(k && l, ErrorKind::InvalidArgument, "scan lacks the endpoints lambda = 0 and 1");
  const double m0 = std::pow(k->m, p), m1 = std::pow(l->m, p);
  const double d0 = p * m0 / k->m * k->error, d1 = p * m1 / l->m * l->error;
  const double roundoff = 1e-13 * std::max(m0, m1);
  for (const auto& pt : r.points) {
    if (!pt.ok) continue;
    const double mp = std::pow(pt.m, p);
    const double slack = mp - (1.0 - pt.lambda) * m0 - pt.lambda * m1;
    const double err = p * mp / pt.m * pt.error + (1.0 - pt.lambda) * d0 + pt.lambda * d1;
    if (slack < -3.0 * err - roundoff) s.pass = false;
    if (slack < s.slack) {
      s.slack = slack;
      s.error = err;
      s.lambda = pt.lambda;
    }
  }
  return s;
}

ExponentReport interpolation_scan(const LogConcaveMeasure& mu, const ConvexBody& K, const ConvexBody& L,
                                  const std::vector<double>& lambdas, const ScanOptions& opts) {
  require(K.dim() == L.dim() && K.dim() == mu.dim(), ErrorKind::DimensionMismatch,
          "bodies and measure differ in dimension");
  require(K.symmetric() && L.symmetric(), ErrorKind::InvalidArgument, "interpolation scan needs symmetric bodies");
  ExponentReport r;
  r.points.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    ScanPoint& pt = r.points[i];
    pt.lambda = lambdas[i];
    try {
      const ConvexBody B = pt.lambda == 0.0 ? K : pt.lambda == 1.0 ? L : interpolate(K, L, pt.lambda);
      const auto m = body_measure(mu, B, opts.backend, opts.budget, opts.seed + i, opts.rel_tol);
      pt.m = m.value;
      pt.error = m.error;
      pt.ok = m.value > 0.0 && std::isfinite(m.value);
      if (!pt.ok) pt.failure = "non-positive measure";
    } catch (const Error& e) {
      pt.ok = false;
      pt.failure = e.what();
    }
  });
  for (const auto& pt : r.points) r.partial = r.partial || !pt.ok;
  r.reference_bounds = reference_bound_table(mu.base_family(), mu.dim(), mu.p());

  if (slack_at(r, kExponentCap).pass) {
    r.p_star = kExponentCap;
    r.at_cap = true;
    return r;
  }
  double lo = 0.0, hi = kExponentCap;
  while (hi - lo > opts.p_tol) {
    const double mid = 0.5 * (lo + hi);
    (slack_at(r, mid).pass ? lo : hi) = mid;
  }
  r.p_star = lo;
  return r;
}

const char* const kBoundCaveat =
    "absolute constants and o(1) terms are unspecified; values use the configured constants (default 1)";

std::vector<ReferenceBound> reference_bound_table(Family family, int n, double p, const BoundConstants& c) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  const double dn = n;
  std::vector<ReferenceBound> t;
  if (family != Family::Lebesgue) t.push_back({"general_c_n", c.c_general * std::pow(dn, -4.0), "n^-4"});
  switch (family) {
    case Family::Gaussian:
      t.push_back({"gaussian_dimensional", 1.0 / dn, "1/n"});
      t.push_back({"gaussian_origin_sets", 0.5 / dn, "1/(2n)"});
      break;
    case Family::ProductP:
      if (n >= 2 && p >= 1.0 && p <= 2.0)
        t.push_back({"product_A_np", c.c_product / (dn * std::pow(std::log(dn), (2.0 - p) / p)),
                     "1/(n (log n)^((2-p)/p))"});
      t.push_back({"refined_1_over_n", 1.0 / dn, "1/n"});
      break;
    case Family::RadialP:
      t.push_back({"rotation_invariant", c.c_rotation / (dn * dn), "n^-2"});
      if (p >= 1.0 && p <= 2.0) t.push_back({"rotation_invariant_p12", c.c_rotation / dn, "n^-1"});
      t.push_back({"refined_1_over_n", 1.0 / dn, "1/n"});
      break;
    case Family::Lebesgue:
      t.push_back({"lebesgue_additive", 1.0 / dn, "1/n"});
      break;
    case Family::Custom:
      break;
  }
  return t;
}

SweepResult falsification_sweep(const LogConcaveMeasure& mu, const PairGenerator& gen, double p_claim,
                                std::size_t trials, std::uint64_t seed, const std::vector<double>& lambdas,
                                const ScanOptions& opts) {
  std::vector<std::pair<ConvexBody, ConvexBody>> pairs;
  pairs.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = make_stream(seed, t);
    pairs.push_back(gen(rng));
  }
  std::vector<SlackAt> slacks(trials);
  parallel_for(trials, [&](std::size_t t) {
    ScanOptions o = opts;
    o.seed = opts.seed + 1000003ULL * t;
    ExponentReport r;
    r.points.resize(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      ScanPoint& pt = r.points[i];
      pt.lambda = lambdas[i];
      const double l = lambdas[i];
      const auto& [K, L] = pairs[t];
      const ConvexBody B = l == 0.0 ? K : l == 1.0 ? L : interpolate(K, L, l);
      const auto m = body_measure(mu, B, o.backend, o.budget, o.seed + i, o.rel_tol);
      pt.m = m.value;
      pt.error = m.error;
    }
    slacks[t] = slack_at(r, p_claim);
  });
  SweepResult s;
  s.trials = trials;
  s.per_trial = slacks;
  for (std::size_t t = 0; t < trials; ++t) {
    if (!slacks[t].pass) ++s.violations;
    if (slacks[t].slack < s.worst_slack) {
      s.worst_slack = slacks[t].slack;
      s.worst_error = slacks[t].error;
      s.worst_lambda = slacks[t].lambda;
      s.worst_trial = t;
    }
  }
  if (trials > 0) s.witness = {pairs[s.worst_trial].first, pairs[s.worst_trial].second};
  return s;
}

}  // namespace bmforge
