#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tentops/analytic_function.hpp"
#include "tentops/measures.hpp"
#include "tentops/power_series.hpp"
#include "tentops/quadrature.hpp"
#include "tentops/rho.hpp"
#include "tentops/special_functions.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

// the kernel-integral form of the operator exists only when the input is
// integrable against the measure; this signals the obstruction
class IllDefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// b_n = sum_k a_k / (n+k+1), the raw matrix action on coefficients
inline PowerSeries hilbert_apply(const PowerSeries& f, int n_out) {
  if (n_out < 0) throw std::domain_error("hilbert_apply: n_out >= 0");
  std::vector<complexd> b(n_out + 1);
  for (int n = 0; n <= n_out; ++n) {
    detail::KahanSum<double> re, im;
    for (int k = 0; k <= f.order(); ++k) {
      const complexd term = f.coeffs[k] / double(n + k + 1);
      re.add(term.real());
      im.add(term.imag());
    }
    b[n] = complexd(re.sum, im.sum);
  }
  PowerSeries out(std::move(b));
  if (f.decay) out.decay = PowerSeries::DecayModel{1.0};  // b_n = O(1/n)
  return out;
}

// Finite truncations always produce finite sums; whether the operator is
// defined shows in how b_0 moves as the truncation grows. Increments that
// keep pace with their predecessors flag an unstable (likely divergent)
// coefficient sum.
struct HilbertCertificate {
  std::vector<double> b0_partials;  // at N/4, N/2, N coefficients
  bool stable = true;
};

inline HilbertCertificate hilbert_certificate(const PowerSeries& f) {
  HilbertCertificate cert;
  const int n = f.order() + 1;
  auto partial = [&](int count) {
    detail::KahanSum<double> acc;
    for (int k = 0; k < count; ++k)
      acc.add(std::abs(f.coeffs[k]) / double(k + 1));
    return acc.sum;
  };
  const int quarter = std::max(1, n / 4), half = std::max(1, n / 2);
  cert.b0_partials = {partial(quarter), partial(half), partial(n)};
  if (n <= 32) return cert;  // short series are complete, not truncations
  const double d1 = cert.b0_partials[1] - cert.b0_partials[0];
  const double d2 = cert.b0_partials[2] - cert.b0_partials[1];
  cert.stable = d2 <= 0.5 * d1 || d2 <= 1e-12 * cert.b0_partials[2];
  return cert;
}

// ------------------------------------------------------------ Hankel matrix

struct HankelMoments {
  RadialMeasure mu;
  int order = 0;                 // matrix order N
  std::vector<double> moments;   // mu_0 .. mu_{2N}
};

inline HankelMoments hankel_moments(const RadialMeasure& mu, int order,
                                    const QuadratureConfig& cfg = {}) {
  if (order < 0) throw std::domain_error("hankel_moments: order >= 0");
  HankelMoments hm;
  hm.mu = mu;
  hm.order = order;
  hm.moments.reserve(2 * order + 1);
  for (int n = 0; n <= 2 * order; ++n)
    hm.moments.push_back(moment(mu, n, cfg));
  return hm;
}

// b_n = sum_k mu_{n+k} a_k
inline PowerSeries hmu_apply(const PowerSeries& f, const HankelMoments& hm,
                             int n_out) {
  if (n_out < 0) throw std::domain_error("hmu_apply: n_out >= 0");
  if (hm.order < std::max(f.order(), n_out))
    throw std::domain_error("hmu_apply: cached moments insufficient");
  std::vector<complexd> b(n_out + 1);
  for (int n = 0; n <= n_out; ++n) {
    detail::KahanSum<double> re, im;
    for (int k = 0; k <= f.order(); ++k) {
      const complexd term = hm.moments[n + k] * f.coeffs[k];
      re.add(term.real());
      im.add(term.imag());
    }
    b[n] = complexd(re.sum, im.sum);
  }
  PowerSeries out(std::move(b));
  if (f.decay) out.decay = PowerSeries::DecayModel{1.0};
  return out;
}

// ---------------------------------------------------------- integral route

// integral of |f| against mu; the definedness gate for the kernel form
inline double imu_precheck(const AnalyticFunction& f, const RadialMeasure& mu,
                           const QuadratureConfig& cfg = {}) {
  double v = 0.0;
  if (mu.density) {
    auto g = [&](double t, double omt) {
      return f.abs_polar({t, omt, 0.0}) * mu.density(t, omt);
    };
    try {
      v = tanh_sinh<double>(g, cfg).value;
    } catch (const QuadratureError&) {
      throw IllDefinedError("imu_apply: |f| not integrable against measure");
    }
  }
  for (const auto& [pos, m] : mu.atoms)
    v += m * f.abs_polar({pos, 1.0 - pos, 0.0});
  if (!std::isfinite(v))
    throw IllDefinedError("imu_apply: |f| not integrable against measure");
  return v;
}

inline complexd imu_apply(const AnalyticFunction& f, const RadialMeasure& mu,
                          complexd z, const QuadratureConfig& cfg = {},
                          bool skip_precheck = false) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("imu_apply: requires |z| < 1");
  if (!skip_precheck) imu_precheck(f, mu, cfg);
  complexd v(0.0);
  if (mu.density) {
    auto g = [&](double t, double omt) {
      return f.eval_polar({t, omt, 0.0}) * mu.density(t, omt) /
             (1.0 - t * z);
    };
    v = tanh_sinh<complexd>(g, cfg).value;
  }
  for (const auto& [pos, m] : mu.atoms)
    v += m * f.eval_polar({pos, 1.0 - pos, 0.0}) / (1.0 - pos * z);
  return v;
}

// Frozen tanh-sinh discretization of the kernel integral, packaged as a
// function of z. Node weights fold in the density and f; atoms join as
// extra nodes. Useful when one operator image feeds many evaluations.
inline AnalyticFunction imu_compile(const AnalyticFunction& f,
                                    const RadialMeasure& mu, int level = 5) {
  imu_precheck(f, mu);
  std::vector<CauchyNode> nodes;
  if (mu.density) {
    const double h = std::ldexp(1.0, -level);
    const int steps = static_cast<int>(std::ceil(6.0 / h));
    for (int i = -steps; i <= steps; ++i) {
      const auto nd = detail::de_node(i * h);
      const complexd c =
          h * nd.w * mu.density(nd.t, nd.omt) * f.eval_polar({nd.t, nd.omt, 0.0});
      if (std::abs(c) > 0.0) nodes.push_back({nd.t, nd.omt, c});
    }
  }
  for (const auto& [pos, m] : mu.atoms)
    nodes.push_back({pos, 1.0 - pos, m * f.eval_polar({pos, 1.0 - pos, 0.0})});
  const double hint = f.boundary_power() > 0.0 ? f.boundary_power() : 1.0;
  return AnalyticFunction::cauchy_transform(std::move(nodes), hint);
}

// -------------------------------------------------- composition decomposition

// H(f)(z) as the s-average of weighted compositions:
//   phi_s(z) = s / ((s-1) z + 1),  omega_s(z) = 1 / ((s-1) z + 1);
// the denominator is omz + s z, so 1 - phi_s = (1-s) omz / (omz + s z)
inline complexd hilbert_via_composition(const AnalyticFunction& f, complexd z,
                                        const QuadratureConfig& cfg = {}) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("hilbert_via_composition: requires |z| < 1");
  imu_precheck(f, lebesgue_measure(), cfg);
  const complexd omz = 1.0 - z;
  auto g = [&](double s, double oms) {
    const complexd den = omz + s * z;
    const complexd omphi = oms * omz / den;
    return f.eval_omz(1.0 - omphi, omphi) / den;
  };
  return tanh_sinh<complexd>(g, cfg).value;
}

// ------------------------------------------------------------------ kernel

// Phi_alpha(z) = integral over [0,1] of u^{-alpha} (1 - z u)^{alpha - 1} du
inline complexd phi_kernel(double alpha, complexd z,
                           const QuadratureConfig& cfg = {}) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("phi_kernel: requires alpha in (0,1)");
  if (z == complexd(1.0, 0.0))
    throw std::domain_error("phi_kernel: z = 1 has its own entry point");
  if (!(std::abs(z) <= 1.0 + 1e-12))
    throw std::domain_error("phi_kernel: requires |z| <= 1");
  auto g = [&](double u, double omu) {
    // at z = e^{i t}: 1 - zu = (1-u) + u (1 - z); keep the real part split
    const complexd omzu = omu + u * (1.0 - z);
    return std::pow(u, -alpha) * std::pow(omzu, alpha - 1.0);
  };
  return tanh_sinh<complexd>(g, cfg).value;
}

// closed form at the boundary fixed point
inline double phi_kernel_at_one(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("phi_kernel_at_one: requires alpha in (0,1)");
  return M_PI / std::sin(M_PI * alpha);
}

// --------------------------------------------------- coefficient extraction

// Taylor coefficients by the Cauchy formula on a circle. Roundoff in the
// sampled values is amplified by radius^{-n}, so the circle must stay well
// away from the origin relative to the largest wanted index: at radius 0.9
// the n = 50 amplification is ~200, keeping extraction noise near 1e-13.
inline std::vector<complexd> taylor_coefficients(
    const std::function<complexd(complexd)>& g, int n_out, int grid = 512,
    double radius = 0.9) {
  if (n_out < 0) throw std::domain_error("taylor_coefficients: n_out >= 0");
  if (grid < 4 * (n_out + 1)) grid = 4 * (n_out + 1);
  std::vector<complexd> samples(grid);
  for (int j = 0; j < grid; ++j)
    samples[j] = g(std::polar(radius, 2.0 * M_PI * j / grid));
  std::vector<complexd> out(n_out + 1);
  for (int n = 0; n <= n_out; ++n) {
    detail::KahanSum<double> re, im;
    for (int j = 0; j < grid; ++j) {
      const complexd rot = std::polar(1.0, -2.0 * M_PI * j * n / grid);
      const complexd term = samples[j] * rot;
      re.add(term.real());
      im.add(term.imag());
    }
    out[n] = complexd(re.sum, im.sum) / (double(grid) * std::pow(radius, n));
  }
  return out;
}

// ------------------------------------------------------- partial-sum bound

struct PartialSumBound {
  double sup = 0.0;       // sup_n |sum_k a_k/(n+k+1)|
  double tent_norm = 0.0;
  double ratio = 0.0;
};

inline PartialSumBound partial_sum_bound_check(const PowerSeries& f,
                                               const TentParams& tp,
                                               int n_max) {
  if (!tp.strict()) {
    throw std::domain_error(
        "partial_sum_bound_check: requires the strict regime");
  }
  PartialSumBound out;
  const PowerSeries b = hilbert_apply(f, n_max);
  for (const auto& c : b.coeffs) out.sup = std::max(out.sup, std::abs(c));
  const auto est = rho_pq(AnalyticFunction::from_series(f), tp);
  out.tent_norm = est.value();
  out.ratio = out.tent_norm > 0.0 ? out.sup / out.tent_norm : 0.0;
  return out;
}

}
