#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tentops/analytic_function.hpp"

namespace tentops {

// Angular discretization of the outer integral of the radial norm, plus the
// truncation radius for the inner radial integrals. Weights sum to 2*pi.
// The truncation is authoritative through its complement 1 - r_cutoff:
// beyond depth 37 the radius itself rounds to 1.0 in binary64, so r_cutoff
// is a nominal display value clamped below 1.
struct RadialGrid {
  std::vector<double> theta;
  std::vector<double> weight;
  double r_cutoff = 0.0;
  double one_minus_r_cutoff = 1.0;
  int refinement_level = 0;

  std::size_t size() const { return theta.size(); }
  double weight_sum() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
  }

  static double nominal_radius(double omrc) {
    const double r = 1.0 - omrc;
    return r < 1.0 ? r : std::nextafter(1.0, 0.0);
  }
};

namespace detail {

inline void append_simpson_block(std::vector<double>& xs,
                                 std::vector<double>& ws, double a, double b,
                                 int n) {
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const double h = (b - a) / n;
  for (int j = 0; j <= n; ++j) {
    double c = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    xs.push_back(a + h * j);
    ws.push_back(c * h / 3.0);
  }
}

}  // namespace detail

inline RadialGrid uniform_radial_grid(int m, double one_minus_r_cutoff,
                                      int level = 0) {
  if (m < 1) throw std::domain_error("uniform_radial_grid: m >= 1");
  RadialGrid g;
  g.one_minus_r_cutoff = one_minus_r_cutoff;
  g.r_cutoff = RadialGrid::nominal_radius(one_minus_r_cutoff);
  g.refinement_level = level;
  g.theta.reserve(m);
  g.weight.assign(m, 2.0 * M_PI / m);
  for (int j = 0; j < m; ++j)
    g.theta.push_back(2.0 * M_PI * (j + 0.5) / m);
  return g;
}

// Grid clustered exponentially toward a boundary anchor. The angular
// distance psi from the anchor is resolved down to e^{-x_max}:
//   stub   [0, e^{-x_max}]   one node, right-endpoint rule
//   near   [e^{-x_max}, 1]   psi = e^{-x}, Simpson in x, density d per unit
//   bulk   [1, pi]           Simpson
// Symmetric integrands get one-sided nodes with doubled weights.
inline RadialGrid anchored_radial_grid(double anchor, bool symmetric,
                                       double x_max, int density,
                                       double one_minus_r_cutoff,
                                       int level = 0) {
  if (!(x_max > 0.0) || density < 1)
    throw std::domain_error("anchored_radial_grid: bad clustering params");
  std::vector<double> psi, w;

  const double stub = std::exp(-x_max);
  psi.push_back(stub);
  w.push_back(stub);

  std::vector<double> xs, xw;
  detail::append_simpson_block(xs, xw, 0.0, x_max,
                               static_cast<int>(std::ceil(density * x_max)));
  double block = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) block += xw[j] * std::exp(-xs[j]);
  // block weights are rescaled so the near field carries exactly its length
  const double scale = (1.0 - stub) / block;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    psi.push_back(std::exp(-xs[j]));
    w.push_back(xw[j] * std::exp(-xs[j]) * scale);
  }

  detail::append_simpson_block(psi, w, 1.0, M_PI,
                               std::max(64, 8 * density));

  RadialGrid g;
  g.one_minus_r_cutoff = one_minus_r_cutoff;
  g.r_cutoff = RadialGrid::nominal_radius(one_minus_r_cutoff);
  g.refinement_level = level;
  const double two_pi = 2.0 * M_PI;
  auto push = [&](double th, double wt) {
    th = std::fmod(th, two_pi);
    if (th < 0.0) th += two_pi;
    g.theta.push_back(th);
    g.weight.push_back(wt);
  };
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (symmetric) {
      push(anchor + psi[j], 2.0 * w[j]);
    } else {
      push(anchor + psi[j], w[j]);
      push(anchor - psi[j], w[j]);
    }
  }
  const double target = two_pi, actual = g.weight_sum();
  for (double& wt : g.weight) wt *= target / actual;
  return g;
}

// Refinement ladder. Truncation depth R doubles per level (capped), the
// angular clustering reaches 30 ln-units past it, node density grows
// linearly. Convergent norms saturate along the ladder; log-divergent ones
// keep growing geometrically, which the trend detector picks up.
struct GridLadder {
  double r0 = 10.0;
  double r_cap = 80.0;
  double x_pad = 30.0;
  int density0 = 6;
  int density_step = 2;
  int uniform_m0 = 64;
  int uniform_m_cap = 2048;

  double depth(int level) const {
    return std::min(r0 * std::pow(2.0, level), r_cap);
  }
  RadialGrid grid_for(const AnalyticFunction& f, int level) const {
    const double r = depth(level);
    const double omrc = std::exp(-r);
    if (auto a = f.anchor()) {
      return anchored_radial_grid(*a, f.angularly_symmetric(), r + x_pad,
                                  density0 + density_step * level, omrc,
                                  level);
    }
    const int m = std::min(uniform_m0 << level, uniform_m_cap);
    return uniform_radial_grid(m, omrc, level);
  }
};

}
