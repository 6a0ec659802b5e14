#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tentops/analytic_function.hpp"
#include "tentops/norm_estimate.hpp"
#include "tentops/quadrature.hpp"
#include "tentops/radial_grid.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

struct RhoOptions {
  int max_levels = 6;
  // saturation: two successive ladder values this close means converged
  double value_rel_tol = 1e-6;
  double accept_rel_tol = 1e-3;  // looser bar applied at ladder exhaustion
  double ceiling = 1e8;
  double ceiling_growth = 0.10;
  // divergence trend on increments of the q-th power of the estimate
  double trend_ratio = 1.4;
  double trend_floor = 0.05;
  GridLadder ladder;
};

namespace detail {

// inner integral of |f|^p over r in [0, r_cutoff] at fixed theta;
// substitution r = r_cutoff * t keeps 1 - r = (1-t) + t*(1-r_cutoff) exact
inline double radial_slice(const AnalyticFunction& f, double p, double theta,
                           double omrc, const QuadratureConfig& cfg) {
  const double rc = 1.0 - omrc;  // safe: only ever multiplied, never inverted
  auto g = [&](double t, double omt) {
    const PolarPoint pp{rc * t, omt + t * omrc, theta};
    return std::pow(f.abs_polar(pp), p);
  };
  return rc * tanh_sinh<double>(g, cfg).value;
}

// one ladder level: q-th power of the radial norm on the given grid
inline double rho_power_on_grid(const AnalyticFunction& f,
                                const TentParams& tp, const RadialGrid& grid,
                                const QuadratureConfig& cfg) {
  const double qp = tp.q / tp.p;
  KahanSum<double> acc;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double inner;
    try {
      inner = radial_slice(f, tp.p, grid.theta[j], grid.one_minus_r_cutoff,
                           cfg);
    } catch (const QuadratureError&) {
      return std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(inner))
      return std::numeric_limits<double>::infinity();
    acc.add(grid.weight[j] * std::pow(inner, qp));
  }
  return acc.sum / (2.0 * M_PI);
}

}  // namespace detail

// Radial tent norm with divergence detection. Starts from the supplied grid
// and walks the refinement ladder; convergent norms saturate once the
// truncation passes the scale of the integrand, while borderline-divergent
// ones grow with every extra decade of depth. The verdict encodes which of
// the two happened.
inline NormEstimate rho_pq(const AnalyticFunction& f, const TentParams& tp,
                           const QuadratureConfig& cfg, const RadialGrid& grid,
                           const RhoOptions& opt = {}) {
  NormEstimate est;
  std::vector<double> qpow;  // rho^q per level, for the trend rule

  const int l0 = grid.refinement_level;
  for (int level = l0; level < l0 + opt.max_levels; ++level) {
    const RadialGrid g =
        (level == l0) ? grid : opt.ladder.grid_for(f, level);
    const double vq = detail::rho_power_on_grid(f, tp, g, cfg);

    if (!std::isfinite(vq)) {
      est.verdict = NormVerdict::Diverged;
      if (est.refinement_trace.empty())
        est.refinement_trace.push_back(
            {level, std::numeric_limits<double>::infinity()});
      return est;
    }
    const double v = std::pow(vq, 1.0 / tp.q);
    qpow.push_back(vq);
    est.refinement_trace.push_back({level, v});
    const std::size_t k = est.refinement_trace.size();

    if (v > 1e100) {
      est.verdict = NormVerdict::Diverged;
      return est;
    }
    if (v > opt.ceiling && k >= 3) {
      const double g1 = est.refinement_trace[k - 2].second;
      const double g2 = est.refinement_trace[k - 3].second;
      if (v >= (1.0 + opt.ceiling_growth) * g1 &&
          g1 >= (1.0 + opt.ceiling_growth) * g2) {
        est.verdict = NormVerdict::Diverged;
        return est;
      }
    }
    if (k >= 4) {
      const double d1 = qpow[k - 3] - qpow[k - 4];
      const double d2 = qpow[k - 2] - qpow[k - 3];
      const double d3 = qpow[k - 1] - qpow[k - 2];
      if (d3 >= opt.trend_ratio * d2 && d2 >= opt.trend_ratio * d1 &&
          d1 > 0.0 && d3 >= opt.trend_floor * qpow[k - 1]) {
        est.verdict = NormVerdict::Diverged;
        return est;
      }
    }
    if (k >= 2) {
      const double prev = est.refinement_trace[k - 2].second;
      const double diff = std::abs(v - prev);
      est.error_estimate = diff;
      if (diff <= opt.value_rel_tol * std::max(v, 1e-300)) {
        est.verdict = NormVerdict::Converged;
        return est;
      }
    }
  }
  const std::size_t k = est.refinement_trace.size();
  if (k >= 2) {
    const double v = est.refinement_trace[k - 1].second;
    const double prev = est.refinement_trace[k - 2].second;
    est.verdict = (std::abs(v - prev) <= opt.accept_rel_tol * std::abs(v))
                      ? NormVerdict::Converged
                      : NormVerdict::Inconclusive;
  }
  return est;
}

inline NormEstimate rho_pq(const AnalyticFunction& f, const TentParams& tp,
                           const QuadratureConfig& cfg = {},
                           const RhoOptions& opt = {}) {
  return rho_pq(f, tp, cfg, opt.ladder.grid_for(f, 0), opt);
}

// max of |f| on the circle of radius r, sampled on a uniform grid plus
// exponentially clustered nodes around the anchor when there is one
inline double circle_max(const AnalyticFunction& f, double r,
                         double one_minus_r, int m = 512) {
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    const double th = 2.0 * M_PI * j / m;
    best = std::max(best, f.abs_polar({r, one_minus_r, th}));
  }
  if (auto a = f.anchor()) {
    const double x_max = -std::log(std::max(one_minus_r, 1e-300)) + 8.0;
    for (double x = 0.0; x <= x_max; x += 0.125) {
      const double psi = std::exp(-x);
      best = std::max(best, f.abs_polar({r, one_minus_r, *a + psi}));
      if (!f.angularly_symmetric())
        best = std::max(best, f.abs_polar({r, one_minus_r, *a - psi}));
    }
    best = std::max(best, f.abs_polar({r, one_minus_r, *a}));
  }
  return best;
}

// damped sup-norm profile r -> M_inf(r, f) * (1-r)^{1/p + 1/q}
inline std::vector<std::pair<double, double>> growth_profile(
    const AnalyticFunction& f, const TentParams& tp,
    const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const double omr = 1.0 - r;
    const double m = circle_max(f, r, omr);
    out.push_back({r, m * std::pow(omr, tp.s())});
  }
  return out;
}

// (\int_D |f|^p dA/pi)^{1/p}; area-normalized so constants have norm |c|
inline double bergman_pp_norm(const AnalyticFunction& f, double p,
                              const QuadratureConfig& cfg = {}) {
  GridLadder ladder;
  const RadialGrid ang = ladder.grid_for(f, 2);
  auto mean_p = [&](double r, double omr) {
    detail::KahanSum<double> acc;
    for (std::size_t j = 0; j < ang.size(); ++j)
      acc.add(ang.weight[j] *
              std::pow(f.abs_polar({r, omr, ang.theta[j]}), p));
    return acc.sum / (2.0 * M_PI);
  };
  auto g = [&](double t, double omt) { return 2.0 * t * mean_p(t, omt); };
  return std::pow(tanh_sinh<double>(g, cfg).value, 1.0 / p);
}

}
