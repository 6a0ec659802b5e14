#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tentops/power_series.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

enum class SequenceMode { pq, infty_q, p_infty };

// Membership in the aperture-1/2 cone at boundary point xi: the convex
// hull of the disc |w| < 1/2 and xi. A hull point pushed along the ray
// away from xi lands in the small disc, so membership reduces to
// minimizing |w + sigma (w - xi)| over sigma >= 0.
inline bool cone_contains(complexd xi, complexd w) {
  const double half = 0.5;
  if (std::norm(w) < half * half) return true;
  const complexd d = w - xi;
  const double dd = std::norm(d);
  if (dd == 0.0) return false;  // w on the boundary circle
  double sigma = -(d.real() * w.real() + d.imag() * w.imag()) / dd;
  if (sigma < 0.0) sigma = 0.0;
  return std::norm(w + sigma * d) < half * half;
}

// fraction of boundary points whose cone contains w, by bisection on the
// half-aperture angle; used as the oracle for single-point tent norms
inline double cone_aperture_fraction(complexd w) {
  if (std::norm(w) < 0.25) return 1.0;
  const double base = std::atan2(w.imag(), w.real());
  auto inside = [&](double phi) {
    return cone_contains(std::polar(1.0, base + phi), w);
  };
  if (!inside(0.0)) return 0.0;
  double lo = 0.0, hi = M_PI;
  if (inside(hi)) return 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo / M_PI;  // symmetric about the ray through w
}

namespace detail {

inline void check_lattice(const std::vector<complexd>& pts) {
  for (const auto& z : pts)
    if (!(std::abs(z) < 1.0))
      throw std::domain_error("sequence_tent_norm: requires |z_k| < 1");
}

}  // namespace detail

// Discrete tent norms of a weighted lattice. Mode pq is the integral form
// (mean over boundary points of cone sums), infty_q swaps the cone sum for
// a max, p_infty is the dyadic-box sup normalized by fractional arc length.
inline double sequence_tent_norm(const std::vector<complexd>& lattice,
                                 const std::vector<complexd>& values,
                                 const TentParams& tp, SequenceMode mode) {
  if (lattice.size() != values.size())
    throw std::domain_error("sequence_tent_norm: size mismatch");
  detail::check_lattice(lattice);
  if (lattice.empty()) return 0.0;

  if (mode == SequenceMode::p_infty) {
    double finest = 1.0;
    for (const auto& z : lattice)
      finest = std::min(finest, 1.0 - std::abs(z));
    const int n_max =
        std::max(0, static_cast<int>(std::ceil(-std::log2(finest)))) + 2;
    double sup = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const int count = 1 << n;
      const double delta = std::ldexp(1.0, -n);
      std::vector<double> mass(count, 0.0);
      for (std::size_t k = 0; k < lattice.size(); ++k) {
        const double az = std::abs(lattice[k]);
        if (1.0 - az > delta) continue;
        double th = std::arg(lattice[k]);
        if (th < 0.0) th += 2.0 * M_PI;
        int j = static_cast<int>(th / (2.0 * M_PI) * count);
        if (j >= count) j = count - 1;
        mass[j] += std::pow(std::abs(values[k]), tp.p) * (1.0 - az * az);
      }
      for (int j = 0; j < count; ++j)
        sup = std::max(sup, mass[j] / delta);
    }
    return std::pow(sup, 1.0 / tp.p);
  }

  // boundary grid at >= 4x the finest lattice angular resolution
  double finest = 1.0;
  for (const auto& z : lattice)
    finest = std::min(finest, 1.0 - std::abs(z));
  int m = 4096;
  const double needed = 4.0 * 2.0 * M_PI / finest;
  while (m < needed && m < (1 << 20)) m *= 2;

  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const complexd xi = std::polar(1.0, 2.0 * M_PI * (i + 0.5) / m);
    double inner = 0.0;
    for (std::size_t k = 0; k < lattice.size(); ++k) {
      if (!cone_contains(xi, lattice[k])) continue;
      const double a = std::pow(std::abs(values[k]), tp.p);
      if (mode == SequenceMode::pq)
        inner += a;
      else
        inner = std::max(inner, a);
    }
    acc += std::pow(inner, tp.q / tp.p);
  }
  return std::pow(acc / m, 1.0 / tp.q);
}

}
