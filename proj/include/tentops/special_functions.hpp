#pragma once

#include <cmath>
#include <stdexcept>

namespace tentops {

namespace detail {

// Lanczos, g = 7, 9 terms. Relative error below 1e-14 on the positive axis
// once combined with the reflection branch.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline double log_gamma_core(double x) {
  // valid for x >= 0.5
  const double g = 7.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x + g - 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t +
         std::log(acc);
}

}  // namespace detail

inline double log_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) {
    // reflection; sin(pi x) > 0 on (0, 1/2)
    return std::log(M_PI / std::sin(M_PI * x)) -
           detail::log_gamma_core(1.0 - x);
  }
  return detail::log_gamma_core(x);
}

inline double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw std::domain_error("beta_fn: arguments must be positive");
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}
