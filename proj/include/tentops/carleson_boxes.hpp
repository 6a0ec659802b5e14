#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tentops/analytic_function.hpp"
#include "tentops/norm_estimate.hpp"
#include "tentops/quadrature.hpp"
#include "tentops/radial_grid.hpp"

namespace tentops {

// Box over a boundary arc: angles in [theta_lo, theta_hi), radii in
// (1 - delta, 1) with delta the arc length as a fraction of the circle.
struct CarlesonBox {
  double theta_lo;
  double theta_hi;
  int level;  // dyadic level; delta = 2^-level

  double delta() const { return std::ldexp(1.0, -level); }
  double arc() const { return theta_hi - theta_lo; }
};

// every rotation at every dyadic level up to n_max
inline std::vector<CarlesonBox> dyadic_box_grid(int n_max) {
  if (n_max < 0) throw std::domain_error("dyadic_box_grid: n_max >= 0");
  std::vector<CarlesonBox> out;
  for (int n = 0; n <= n_max; ++n) {
    const int count = 1 << n;
    const double step = 2.0 * M_PI / count;
    for (int j = 0; j < count; ++j)
      out.push_back({j * step, (j + 1) * step, n});
  }
  return out;
}

// chain of boxes shrinking onto the boundary point at the given angle
inline std::vector<CarlesonBox> anchored_box_chain(double anchor, int n_max) {
  std::vector<CarlesonBox> out;
  for (int n = 0; n <= n_max; ++n) {
    const double half = M_PI * std::ldexp(1.0, -n);
    out.push_back({anchor - half, anchor + half, n});
  }
  return out;
}

namespace detail {

struct Nodes1D {
  std::vector<double> x, w;
};

// Simpson nodes for psi in [eps, len] under psi = len * e^{-y}, plus a
// right-endpoint stub for [0, eps]; clusters toward psi = 0.
inline Nodes1D exp_clustered_nodes(double len, double y_max, int density) {
  Nodes1D n;
  std::vector<double> ys, yw;
  append_simpson_block(ys, yw, 0.0, y_max,
                       static_cast<int>(std::ceil(density * y_max)));
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const double e = std::exp(-ys[j]);
    n.x.push_back(len * e);
    n.w.push_back(yw[j] * len * e);
  }
  const double stub = len * std::exp(-y_max);
  n.x.push_back(stub);
  n.w.push_back(stub);
  return n;
}

inline Nodes1D simpson_nodes(double a, double b, int intervals) {
  Nodes1D n;
  append_simpson_block(n.x, n.w, a, b, intervals);
  return n;
}

}  // namespace detail

// integral of |f|^p over the box, against dA/pi = r dr dtheta / pi.
// The radial variable runs through x = -log(1-r) so the near-boundary
// region is exponentially resolved; the angular variable is clustered
// toward the anchor of f when the anchor touches the box.
inline double box_integral_p(const AnalyticFunction& f, double p,
                             const CarlesonBox& box, int depth = 0,
                             double one_minus_r_trunc = 1e-10) {
  const double delta = box.delta();
  const double x0 = -std::log(delta);
  const double x1 = -std::log(one_minus_r_trunc);
  if (x1 <= x0) return 0.0;
  const int density = 8 + 4 * depth;

  // angular nodes over [theta_lo, theta_hi)
  detail::Nodes1D ang;
  const auto anchor = f.anchor();
  bool clustered = false;
  if (anchor) {
    // bring the anchor angle into the box's frame modulo 2 pi
    double a = *anchor;
    const double two_pi = 2.0 * M_PI;
    while (a < box.theta_lo - 1e-12) a += two_pi;
    while (a > box.theta_hi + 1e-12) a -= two_pi;
    if (a >= box.theta_lo - 1e-12 && a <= box.theta_hi + 1e-12) {
      clustered = true;
      const double y_max = x1 + 8.0;  // resolve below the radial truncation
      const double left = a - box.theta_lo, right = box.theta_hi - a;
      if (right > 0.0) {
        auto side = detail::exp_clustered_nodes(right, y_max, density);
        for (std::size_t j = 0; j < side.x.size(); ++j) {
          ang.x.push_back(a + side.x[j]);
          ang.w.push_back(side.w[j]);
        }
      }
      if (left > 0.0) {
        auto side = detail::exp_clustered_nodes(left, y_max, density);
        for (std::size_t j = 0; j < side.x.size(); ++j) {
          ang.x.push_back(a - side.x[j]);
          ang.w.push_back(side.w[j]);
        }
      }
    }
  }
  if (!clustered)
    ang = detail::simpson_nodes(box.theta_lo, box.theta_hi, 32 << depth);

  // radial integral per angular node, adaptive in x = -log(1-r);
  // Jacobian: dr = e^{-x} dx, dA/pi = r dr dtheta / pi
  QuadratureConfig rcfg;
  rcfg.rel_tol = depth ? 1e-11 : 1e-9;
  rcfg.abs_tol = 0.0;
  detail::KahanSum<double> acc;
  for (std::size_t j = 0; j < ang.x.size(); ++j) {
    const double th = ang.x[j];
    auto g = [&](double x) {
      const double omr = std::exp(-x);
      const double r = 1.0 - omr;
      return std::pow(f.abs_polar({r, omr, th}), p) * omr * r;
    };
    acc.add(ang.w[j] * gauss_kronrod<double>(g, x0, x1, rcfg).value / M_PI);
  }
  return acc.sum;
}

// (1/|I| * integral_{S(I)} |f|^p dA/pi), |I| the fractional arc length;
// calibrated so constants score |c|^p on the full-circle box
inline double box_average_p(const AnalyticFunction& f, double p,
                            const CarlesonBox& box, int depth = 0,
                            double one_minus_r_trunc = 1e-10) {
  const double frac = box.arc() / (2.0 * M_PI);
  return box_integral_p(f, p, box, depth, one_minus_r_trunc) / frac;
}

// sup over the box grid of the p-th root of the box averages, refined in
// quadrature depth until the sup stabilizes
inline NormEstimate tent_p_infty_norm(const AnalyticFunction& f, double p,
                                      const std::vector<CarlesonBox>& grid) {
  if (!(p >= 1.0))
    throw std::domain_error("tent_p_infty_norm: requires p >= 1");
  if (grid.empty())
    throw std::domain_error("tent_p_infty_norm: empty box grid");
  NormEstimate est;
  double prev = 0.0;
  for (int depth = 0; depth < 3; ++depth) {
    double sup = 0.0;
    for (const auto& box : grid)
      sup = std::max(sup, box_average_p(f, p, box, depth));
    const double v = std::pow(sup, 1.0 / p);
    est.refinement_trace.push_back({depth, v});
    if (depth > 0) {
      est.error_estimate = std::abs(v - prev);
      if (est.error_estimate <= 1e-5 * std::max(v, 1e-300)) {
        est.verdict = NormVerdict::Converged;
        return est;
      }
    }
    prev = v;
  }
  const auto& tr = est.refinement_trace;
  est.verdict = (std::abs(tr[2].second - tr[1].second) <=
                 1e-3 * std::abs(tr[2].second))
                    ? NormVerdict::Converged
                    : NormVerdict::Inconclusive;
  return est;
}

}
