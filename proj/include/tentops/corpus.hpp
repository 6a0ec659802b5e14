#pragma once

#include <cmath>
#include <vector>

#include "tentops/analytic_function.hpp"
#include "tentops/power_series.hpp"
#include "tentops/rng.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

inline PowerSeries random_polynomial(Rng& rng, int degree) {
  std::vector<complexd> c(degree + 1);
  for (auto& a : c)
    a = complexd(rng.next_double(-1.0, 1.0), rng.next_double(-1.0, 1.0));
  return PowerSeries(std::move(c));
}

inline std::vector<PowerSeries> random_polynomial_corpus(std::uint64_t seed,
                                                         int count,
                                                         int degree) {
  Rng rng(seed);
  std::vector<PowerSeries> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_polynomial(rng, degree));
  return out;
}

// peaked probe family: (1-alpha)^{1/p'+1/q'} (1-alpha z)^{-2}
inline AnalyticFunction peaked_family(double alpha, const TentParams& tp) {
  const double pre =
      std::pow(1.0 - alpha, 1.0 / tp.pprime() + 1.0 / tp.qprime());
  return AnalyticFunction::scaled(AnalyticFunction::rational_kernel(alpha, 2.0),
                                  pre);
}

// boundary power family: (1-z)^{-beta}
inline AnalyticFunction boundary_power_family(double beta) {
  return AnalyticFunction::rational_kernel(1.0, beta);
}

// default logarithmic approach grid: alpha_j = 1 - 10^{-j/2}
inline std::vector<double> default_alpha_grid(int points = 11) {
  std::vector<double> out;
  out.reserve(points);
  for (int j = 0; j < points; ++j)
    out.push_back(1.0 - std::pow(10.0, -0.5 * j));
  return out;
}

// functions with finite radial and area norms for bracket comparisons
inline std::vector<AnalyticFunction> bracket_corpus(std::uint64_t seed,
                                                    int count = 20) {
  Rng rng(seed);
  std::vector<AnalyticFunction> out;
  out.push_back(AnalyticFunction::constant(1.0));
  out.push_back(AnalyticFunction::monomial(1));
  out.push_back(AnalyticFunction::monomial(5));
  out.push_back(AnalyticFunction::rational_kernel(1.0, 0.2));
  out.push_back(AnalyticFunction::rational_kernel(1.0, 0.4));
  out.push_back(AnalyticFunction::rational_kernel(0.7, 1.0));
  out.push_back(AnalyticFunction::rational_kernel(complexd(0.3, 0.4), 1.5));
  out.push_back(AnalyticFunction::rational_kernel(-0.6, 2.0));
  while (out.size() < static_cast<std::size_t>(count))
    out.push_back(
        AnalyticFunction::from_series(random_polynomial(rng, 12)));
  out.resize(count, AnalyticFunction::constant(1.0));
  return out;
}

// members with damped sup-profile decaying past two orders of magnitude by
// r = 1 - 1e-6; boundary powers keep a gap below the critical exponent so
// the (1-r)^{s-beta} envelope actually reaches 1% of its start
inline std::vector<AnalyticFunction> growth_profile_corpus(
    const TentParams& tp, std::uint64_t seed) {
  Rng rng(seed);
  const double s = tp.s();
  std::vector<AnalyticFunction> out;
  out.push_back(AnalyticFunction::rational_kernel(0.0, 0.0));
  out.push_back(AnalyticFunction::rational_kernel(0.5, s * 0.8));
  out.push_back(AnalyticFunction::rational_kernel(-0.7, s * 0.9));
  out.push_back(AnalyticFunction::rational_kernel(complexd(0.2, 0.5), 1.0));
  for (double gap : {0.375, 0.42, 0.45}) {
    if (s - gap > 0.0)
      out.push_back(AnalyticFunction::rational_kernel(1.0, s - gap));
  }
  for (int i = 0; i < 3; ++i) {
    const double beta = std::min(s * 0.5, s - 0.375);
    if (beta > 0.0)
      out.push_back(AnalyticFunction::rational_kernel(
          std::polar(1.0, rng.next_double(0.0, 2.0 * M_PI)), beta));
  }
  return out;
}

}
