#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tentops/power_series.hpp"

namespace tentops {

// Point on the disc in polar form with 1-r carried separately. Radial
// quadrature pushes 1-r down to 1e-35; recovering it from r by
// subtraction collapses at machine epsilon, so every boundary-aware
// evaluation goes through this struct.
struct PolarPoint {
  double r;
  double one_minus_r;
  double theta;

  static PolarPoint from_radius(double r, double theta) {
    return {r, 1.0 - r, theta};
  }
  complexd z() const { return std::polar(r, theta); }
};

namespace detail {

// 1 - r e^{i psi}; real part written as (1-r) + 2 r sin^2(psi/2), a sum of
// nonnegative terms, so no cancellation as r -> 1.
inline complexd one_minus_polar(double r, double omr, double psi) {
  const double sh = std::sin(0.5 * psi);
  return complexd(omr + 2.0 * r * sh * sh, -r * std::sin(psi));
}

inline double wrap_angle(double a) {
  return std::remainder(a, 2.0 * M_PI);
}

struct FunctionImpl {
  virtual ~FunctionImpl() = default;
  virtual complexd eval(complexd z) const = 0;
  virtual complexd eval_polar(const PolarPoint& pp) const {
    return eval(pp.z());
  }
  // variant used where the caller already knows 1-z to full precision
  virtual complexd eval_omz(complexd z, complexd /*omz*/) const {
    return eval(z);
  }
  virtual std::optional<double> anchor() const { return std::nullopt; }
  virtual bool angularly_symmetric() const { return false; }
  virtual bool smooth_on_closure() const { return false; }
  virtual double boundary_power() const { return 0.0; }
  virtual std::string label() const = 0;
};

}  // namespace detail

struct CauchyNode {
  double t;
  double omt;
  complexd c;
};

class AnalyticFunction {
 public:
  complexd eval(complexd z) const { return impl_->eval(z); }
  complexd eval_polar(const PolarPoint& pp) const {
    return impl_->eval_polar(pp);
  }
  complexd eval_omz(complexd z, complexd omz) const {
    return impl_->eval_omz(z, omz);
  }
  double abs_polar(const PolarPoint& pp) const {
    return std::abs(impl_->eval_polar(pp));
  }
  // boundary direction the norm grids cluster around, if any
  std::optional<double> anchor() const { return impl_->anchor(); }
  bool angularly_symmetric() const { return impl_->angularly_symmetric(); }
  bool smooth_on_closure() const { return impl_->smooth_on_closure(); }
  double boundary_power() const { return impl_->boundary_power(); }
  std::string label() const { return impl_->label(); }

  static AnalyticFunction constant(complexd c);
  // (1 - conj(alpha) z)^{-beta}, |alpha| <= 1, beta >= 0
  static AnalyticFunction rational_kernel(complexd alpha, double beta);
  static AnalyticFunction log_test();
  static AnalyticFunction cauchy_kernel();
  static AnalyticFunction from_series(PowerSeries ps);
  static AnalyticFunction monomial(int k);
  // sum_i c_i / (1 - t_i z); boundary_power is a growth hint for the
  // radial quadrature dispatch
  static AnalyticFunction cauchy_transform(std::vector<CauchyNode> nodes,
                                           double boundary_power = 1.0);
  static AnalyticFunction linear_combination(
      std::vector<std::pair<complexd, AnalyticFunction>> terms);
  static AnalyticFunction scaled(const AnalyticFunction& f, complexd c);
  static AnalyticFunction product(const AnalyticFunction& f,
                                  const AnalyticFunction& g);
  // f((a+z)/(1+az)) for a in [0,1)
  static AnalyticFunction compose_mobius(const AnalyticFunction& f, double a);

 private:
  explicit AnalyticFunction(std::shared_ptr<const detail::FunctionImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FunctionImpl> impl_;
};

namespace detail {

struct ConstantImpl final : FunctionImpl {
  complexd c;
  explicit ConstantImpl(complexd v) : c(v) {}
  complexd eval(complexd) const override { return c; }
  complexd eval_polar(const PolarPoint&) const override { return c; }
  bool angularly_symmetric() const override { return true; }
  bool smooth_on_closure() const override { return true; }
  std::string label() const override {
    std::ostringstream os;
    os << "const(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    os << ")";
    return os.str();
  }
};

struct RationalKernelImpl final : FunctionImpl {
  complexd alpha;
  double beta;
  bool on_boundary;  // |alpha| == 1; kernel singular at z = alpha
  double anchor_angle;

  RationalKernelImpl(complexd a, double b) : alpha(a), beta(b) {
    const double m = std::abs(alpha);
    if (m > 1.0 + 1e-12)
      throw std::domain_error("rational_kernel: requires |alpha| <= 1");
    if (!(beta >= 0.0))
      throw std::domain_error("rational_kernel: requires beta >= 0");
    on_boundary = m > 1.0 - 1e-14;
    if (on_boundary && m != 0.0) alpha /= m;  // exact unit modulus
    anchor_angle = std::atan2(alpha.imag(), alpha.real());
  }

  complexd eval(complexd z) const override {
    if (beta == 0.0) return 1.0;
    return std::pow(1.0 - std::conj(alpha) * z, -beta);
  }
  complexd eval_polar(const PolarPoint& pp) const override {
    if (beta == 0.0) return 1.0;
    if (!on_boundary) return eval(pp.z());
    const double psi = wrap_angle(pp.theta - anchor_angle);
    const complexd w = one_minus_polar(pp.r, pp.one_minus_r, psi);
    return std::pow(w, -beta);
  }
  complexd eval_omz(complexd z, complexd omz) const override {
    if (beta == 0.0) return 1.0;
    if (on_boundary && std::abs(anchor_angle) < 1e-15)
      return std::pow(omz, -beta);
    return eval(z);
  }
  std::optional<double> anchor() const override {
    // clustering also pays off for sharp but nonsingular peaks
    if (on_boundary || std::abs(alpha) >= 0.5) return anchor_angle;
    return std::nullopt;
  }
  bool angularly_symmetric() const override { return true; }
  bool smooth_on_closure() const override { return !on_boundary; }
  double boundary_power() const override { return on_boundary ? beta : 0.0; }
  std::string label() const override {
    std::ostringstream os;
    os << "kernel(a=" << alpha.real();
    if (alpha.imag() != 0.0)
      os << (alpha.imag() < 0 ? "" : "+") << alpha.imag() << "i";
    os << ",b=" << beta << ")";
    return os.str();
  }
};

// 1 / ((1-z) (1 - log(1-z)))
struct LogTestImpl final : FunctionImpl {
  static complexd from_w(complexd w) {
    return 1.0 / (w * (1.0 - std::log(w)));
  }
  complexd eval(complexd z) const override { return from_w(1.0 - z); }
  complexd eval_polar(const PolarPoint& pp) const override {
    return from_w(one_minus_polar(pp.r, pp.one_minus_r, pp.theta));
  }
  complexd eval_omz(complexd, complexd omz) const override {
    return from_w(omz);
  }
  std::optional<double> anchor() const override { return 0.0; }
  bool angularly_symmetric() const override { return true; }
  double boundary_power() const override { return 1.0; }
  std::string label() const override { return "logtest"; }
};

struct CauchyKernelImpl final : FunctionImpl {
  complexd eval(complexd z) const override { return 1.0 / (1.0 - z); }
  complexd eval_polar(const PolarPoint& pp) const override {
    return 1.0 / one_minus_polar(pp.r, pp.one_minus_r, pp.theta);
  }
  complexd eval_omz(complexd, complexd omz) const override {
    return 1.0 / omz;
  }
  std::optional<double> anchor() const override { return 0.0; }
  bool angularly_symmetric() const override { return true; }
  double boundary_power() const override { return 1.0; }
  std::string label() const override { return "cauchy"; }
};

struct SeriesBackedImpl final : FunctionImpl {
  PowerSeries ps;
  bool real_coeffs;
  bool nonneg_coeffs;
  explicit SeriesBackedImpl(PowerSeries s) : ps(std::move(s)) {
    real_coeffs = true;
    nonneg_coeffs = true;
    for (const auto& a : ps.coeffs) {
      if (a.imag() != 0.0) real_coeffs = nonneg_coeffs = false;
      if (a.real() < 0.0) nonneg_coeffs = false;
    }
  }
  complexd eval(complexd z) const override { return series_eval(ps, z); }
  complexd eval_polar(const PolarPoint& pp) const override {
    return horner(ps.coeffs, std::polar(std::min(pp.r, 1.0), pp.theta));
  }
  complexd eval_omz(complexd z, complexd) const override {
    return horner(ps.coeffs, z);
  }
  std::optional<double> anchor() const override {
    // nonnegative coefficients peak on the positive axis
    if (nonneg_coeffs && ps.order() > 0) return 0.0;
    return std::nullopt;
  }
  bool angularly_symmetric() const override { return real_coeffs; }
  bool smooth_on_closure() const override { return true; }
  std::string label() const override {
    return "series(n=" + std::to_string(ps.order()) + ")";
  }
};

struct CauchyTransformImpl final : FunctionImpl {
  std::vector<CauchyNode> nodes;
  double growth;
  bool real_weights;
  CauchyTransformImpl(std::vector<CauchyNode> n, double g)
      : nodes(std::move(n)), growth(g) {
    real_weights = true;
    for (const auto& nd : nodes) {
      // t may round to 1.0 while omt keeps the true pole distance
      if (!(nd.t >= 0.0 && nd.t <= 1.0 && nd.omt > 0.0))
        throw std::domain_error("cauchy_transform: nodes must lie in [0,1)");
      if (nd.c.imag() != 0.0) real_weights = false;
    }
  }
  complexd eval(complexd z) const override {
    complexd acc(0.0);
    for (const auto& nd : nodes) acc += nd.c / (1.0 - nd.t * z);
    return acc;
  }
  complexd eval_polar(const PolarPoint& pp) const override {
    // 1 - t r = omt + t (1-r) keeps the pole distance exact near r = 1
    const double sh = std::sin(0.5 * pp.theta);
    const double vers = 2.0 * sh * sh;
    const double sn = std::sin(pp.theta);
    complexd acc(0.0);
    for (const auto& nd : nodes) {
      const double tr = nd.t * pp.r;
      acc += nd.c / complexd(nd.omt + nd.t * pp.one_minus_r + tr * vers,
                             -tr * sn);
    }
    return acc;
  }
  std::optional<double> anchor() const override { return 0.0; }
  bool angularly_symmetric() const override { return real_weights; }
  double boundary_power() const override { return growth; }
  std::string label() const override {
    return "ctransf(n=" + std::to_string(nodes.size()) + ")";
  }
};

struct LinearCombImpl final : FunctionImpl {
  std::vector<std::pair<complexd, AnalyticFunction>> terms;
  std::optional<double> anch;
  bool sym, smooth;
  double growth;

  explicit LinearCombImpl(
      std::vector<std::pair<complexd, AnalyticFunction>> t)
      : terms(std::move(t)) {
    if (terms.empty())
      throw std::domain_error("linear_combination: needs at least one term");
    sym = true;
    smooth = true;
    growth = 0.0;
    bool mixed = false;
    for (const auto& [w, f] : terms) {
      if (auto a = f.anchor()) {
        if (!anch)
          anch = a;
        else if (std::abs(wrap_angle(*anch - *a)) > 1e-12)
          mixed = true;
      }
      sym = sym && f.angularly_symmetric() && w.imag() == 0.0;
      smooth = smooth && f.smooth_on_closure();
      growth = std::max(growth, f.boundary_power());
    }
    // norm grids cluster around one anchor only; a mixed-anchor sum is
    // evaluated on uniform grids and loses deep-boundary resolution
    if (mixed) {
      anch.reset();
      sym = false;
    }
  }
  complexd eval(complexd z) const override {
    complexd acc(0.0);
    for (const auto& [w, f] : terms) acc += w * f.eval(z);
    return acc;
  }
  complexd eval_polar(const PolarPoint& pp) const override {
    complexd acc(0.0);
    for (const auto& [w, f] : terms) acc += w * f.eval_polar(pp);
    return acc;
  }
  complexd eval_omz(complexd z, complexd omz) const override {
    complexd acc(0.0);
    for (const auto& [w, f] : terms) acc += w * f.eval_omz(z, omz);
    return acc;
  }
  std::optional<double> anchor() const override { return anch; }
  bool angularly_symmetric() const override { return sym; }
  bool smooth_on_closure() const override { return smooth; }
  double boundary_power() const override { return growth; }
  std::string label() const override {
    std::string s = "sum(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += ",";
      if (i >= 3) {
        s += "...";
        break;
      }
      s += terms[i].second.label();
    }
    return s + ")";
  }
};

struct ProductImpl final : FunctionImpl {
  AnalyticFunction f, g;
  ProductImpl(AnalyticFunction a, AnalyticFunction b)
      : f(std::move(a)), g(std::move(b)) {}
  complexd eval(complexd z) const override { return f.eval(z) * g.eval(z); }
  complexd eval_polar(const PolarPoint& pp) const override {
    return f.eval_polar(pp) * g.eval_polar(pp);
  }
  complexd eval_omz(complexd z, complexd omz) const override {
    return f.eval_omz(z, omz) * g.eval_omz(z, omz);
  }
  std::optional<double> anchor() const override {
    auto a = f.anchor(), b = g.anchor();
    if (a && b)
      return std::abs(wrap_angle(*a - *b)) <= 1e-12
                 ? a
                 : std::optional<double>{};
    return a ? a : b;
  }
  bool angularly_symmetric() const override {
    return f.angularly_symmetric() && g.angularly_symmetric();
  }
  bool smooth_on_closure() const override {
    return f.smooth_on_closure() && g.smooth_on_closure();
  }
  double boundary_power() const override {
    return f.boundary_power() + g.boundary_power();
  }
  std::string label() const override {
    return "prod(" + f.label() + "," + g.label() + ")";
  }
};

// z -> f(phi_a(z)) with phi_a(z) = (a+z)/(1+az); phi_a fixes 1 and -1 and
// maps the disc onto itself, so boundary behaviour of f at 1 carries over
struct MobiusCompImpl final : FunctionImpl {
  AnalyticFunction f;
  double a;
  MobiusCompImpl(AnalyticFunction fn, double a_) : f(std::move(fn)), a(a_) {
    if (!(a >= 0.0 && a < 1.0))
      throw std::domain_error("compose_mobius: requires a in [0,1)");
  }
  complexd phi(complexd z) const { return (a + z) / (1.0 + a * z); }
  complexd eval(complexd z) const override { return f.eval(phi(z)); }
  complexd eval_polar(const PolarPoint& pp) const override {
    const complexd omz =
        one_minus_polar(pp.r, pp.one_minus_r, pp.theta);
    const complexd z = pp.z();
    const complexd den = 1.0 + a * z;
    const complexd omphi = omz * (1.0 - a) / den;
    return f.eval_omz(1.0 - omphi, omphi);
  }
  std::optional<double> anchor() const override { return f.anchor(); }
  bool angularly_symmetric() const override {
    return f.angularly_symmetric();
  }
  bool smooth_on_closure() const override { return f.smooth_on_closure(); }
  double boundary_power() const override { return f.boundary_power(); }
  std::string label() const override {
    std::ostringstream os;
    os << "comp(a=" << a << "," << f.label() << ")";
    return os.str();
  }
};

}  // namespace detail

inline AnalyticFunction AnalyticFunction::constant(complexd c) {
  return AnalyticFunction(std::make_shared<detail::ConstantImpl>(c));
}
inline AnalyticFunction AnalyticFunction::rational_kernel(complexd alpha,
                                                          double beta) {
  return AnalyticFunction(
      std::make_shared<detail::RationalKernelImpl>(alpha, beta));
}
inline AnalyticFunction AnalyticFunction::log_test() {
  return AnalyticFunction(std::make_shared<detail::LogTestImpl>());
}
inline AnalyticFunction AnalyticFunction::cauchy_kernel() {
  return AnalyticFunction(std::make_shared<detail::CauchyKernelImpl>());
}
inline AnalyticFunction AnalyticFunction::from_series(PowerSeries ps) {
  return AnalyticFunction(
      std::make_shared<detail::SeriesBackedImpl>(std::move(ps)));
}
inline AnalyticFunction AnalyticFunction::monomial(int k) {
  if (k < 0) throw std::domain_error("monomial: requires k >= 0");
  std::vector<complexd> c(k + 1, complexd(0.0));
  c.back() = 1.0;
  return from_series(PowerSeries(std::move(c)));
}
inline AnalyticFunction AnalyticFunction::cauchy_transform(
    std::vector<CauchyNode> nodes, double boundary_power) {
  return AnalyticFunction(std::make_shared<detail::CauchyTransformImpl>(
      std::move(nodes), boundary_power));
}
inline AnalyticFunction AnalyticFunction::linear_combination(
    std::vector<std::pair<complexd, AnalyticFunction>> terms) {
  return AnalyticFunction(
      std::make_shared<detail::LinearCombImpl>(std::move(terms)));
}
inline AnalyticFunction AnalyticFunction::scaled(const AnalyticFunction& f,
                                                 complexd c) {
  return linear_combination({{c, f}});
}
inline AnalyticFunction AnalyticFunction::product(const AnalyticFunction& f,
                                                  const AnalyticFunction& g) {
  return AnalyticFunction(std::make_shared<detail::ProductImpl>(f, g));
}
inline AnalyticFunction AnalyticFunction::compose_mobius(
    const AnalyticFunction& f, double a) {
  return AnalyticFunction(std::make_shared<detail::MobiusCompImpl>(f, a));
}

}
