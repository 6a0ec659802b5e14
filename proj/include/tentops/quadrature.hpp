#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tentops {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_levels = 12;
  enum class Endpoint { DoubleExponential, Plain };
  Endpoint endpoint = Endpoint::DoubleExponential;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct IntegralResult {
  T value;
  double error;
  int levels;
};

namespace detail {

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct KahanSum {
  T sum{};
  T carry{};
  void add(T v) {
    T y = v - carry;
    T t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// abscissa/weight transform for the tanh-sinh rule at parameter u:
//   t = (1+tanh(w))/2,  w = (pi/2) sinh(u),  dt/du = pi cosh(u) t (1-t).
// t and 1-t are produced separately; 1-t stays exact down to 1e-275.
struct DENode {
  double t, omt, w;
};

inline DENode de_node(double u) {
  const double w = 1.5707963267948966 * std::sinh(u);
  const double t = 1.0 / (1.0 + std::exp(-2.0 * w));
  const double omt = 1.0 / (1.0 + std::exp(2.0 * w));
  const double dt = M_PI * std::cosh(u) * t * omt;
  return {t, omt, dt};
}

}  // namespace detail

// Integral over (0,1) of f(t), where f is called as f(t, 1-t) so that
// integrands singular at either endpoint can be evaluated stably.
// Handles integrable power/log endpoint singularities with exponents
// above -0.95.
template <class T, class F>
IntegralResult<T> tanh_sinh(F&& f, const QuadratureConfig& cfg = {}) {
  constexpr double kUmax = 6.0;
  auto eval = [&](double u, detail::KahanSum<T>& acc) {
    const auto n = detail::de_node(u);
    if (n.w == 0.0) return;
    T v = f(n.t, n.omt);
    T contrib = v * n.w;
    if (!std::isfinite(detail::norm_of(contrib)))
      throw QuadratureError("tanh_sinh: non-finite integrand contribution");
    acc.add(contrib);
  };

  detail::KahanSum<T> acc;
  eval(0.0, acc);
  int steps = static_cast<int>(kUmax);
  for (int i = 1; i <= steps; ++i) {
    eval(static_cast<double>(i), acc);
    eval(-static_cast<double>(i), acc);
  }
  double h = 1.0;
  T prev = acc.sum * h;
  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    const int count = static_cast<int>(kUmax / h);
    for (int i = 1; i <= count; i += 2) {
      eval(i * h, acc);
      eval(-i * h, acc);
    }
    T cur = acc.sum * h;
    const double diff = detail::norm_of(cur - prev);
    if (level >= 2 &&
        diff <= std::max(cfg.rel_tol * detail::norm_of(cur), cfg.abs_tol))
      return {cur, diff, level};
    prev = cur;
  }
  throw QuadratureError(
      "tanh_sinh: tolerance not reached within max_levels (integral may "
      "diverge)");
}

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1,1].
inline constexpr double kKronrodX[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kKronrodW[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T, class F>
void gk15(F& f, double a, double b, T& k15, double& err) {
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  T vk{};
  T vg{};
  T samples[15];
  for (int i = 0; i < 15; ++i) {
    samples[i] = f(c + hl * kKronrodX[i]);
    vk += samples[i] * kKronrodW[i];
  }
  for (int i = 0; i < 4; ++i) {
    // Gauss nodes sit at the odd Kronrod indices
    vg += (i < 3 ? (samples[2 * i + 1] + samples[13 - 2 * i]) * kGaussW[i]
                 : samples[7] * kGaussW[3]);
  }
  k15 = vk * hl;
  err = norm_of((vk - vg) * hl);
  if (!std::isfinite(norm_of(k15)))
    throw QuadratureError("gauss_kronrod: non-finite integrand value");
}

template <class T, class F>
void gk_adapt(F& f, double a, double b, double tol_per_unit, int depth,
              int max_depth, T& out, double& err_out) {
  T v;
  double e;
  gk15(f, a, b, v, e);
  if (e <= tol_per_unit * (b - a) || depth >= max_depth) {
    out += v;
    err_out += e;
    return;
  }
  const double c = 0.5 * (a + b);
  gk_adapt(f, a, c, tol_per_unit, depth + 1, max_depth, out, err_out);
  gk_adapt(f, c, b, tol_per_unit, depth + 1, max_depth, out, err_out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a,b]; f takes one argument. Intended for
// integrands smooth up to the endpoints.
template <class T, class F>
IntegralResult<T> gauss_kronrod(F&& f, double a, double b,
                                const QuadratureConfig& cfg = {}) {
  if (!(b > a)) return {T{}, 0.0, 0};
  T first;
  double efirst;
  detail::gk15(f, a, b, first, efirst);
  const double scale = std::max(detail::norm_of(first), 1.0);
  const double tol_per_unit =
      std::max(cfg.abs_tol, cfg.rel_tol * scale) / (b - a);
  T out{};
  double err = 0.0;
  detail::gk_adapt(f, a, b, tol_per_unit, 0, cfg.max_levels, out, err);
  if (err > 64.0 * std::max(cfg.abs_tol, cfg.rel_tol * detail::norm_of(out)))
    throw QuadratureError("gauss_kronrod: tolerance not reached");
  return {out, err, cfg.max_levels};
}

// Integral over (0,1); integrand called as f(t, 1-t). Dispatches on the
// configured endpoint strategy.
template <class T, class F>
IntegralResult<T> integrate_01(F&& f, const QuadratureConfig& cfg = {}) {
  if (cfg.endpoint == QuadratureConfig::Endpoint::DoubleExponential)
    return tanh_sinh<T>(f, cfg);
  auto g = [&](double t) { return f(t, 1.0 - t); };
  return gauss_kronrod<T>(g, 0.0, 1.0, cfg);
}

}
