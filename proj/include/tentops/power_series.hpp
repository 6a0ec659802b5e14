#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tentops {

using complexd = std::complex<double>;

inline constexpr int kDefaultTruncation = 2048;

// Truncated Taylor expansion. The decay model, when present, asserts
// |a_k| <= |a_N| * ratio^{k-N} for k > N, which gives the geometric tail
// bound used by tail_bound().
struct PowerSeries {
  std::vector<complexd> coeffs;  // a_0 .. a_N
  struct DecayModel {
    double ratio;  // in (0,1]
  };
  std::optional<DecayModel> decay;

  PowerSeries() : coeffs{complexd(0.0)} {}
  explicit PowerSeries(std::vector<complexd> c,
                       std::optional<DecayModel> d = std::nullopt)
      : coeffs(std::move(c)), decay(d) {
    if (coeffs.empty())
      throw std::domain_error("PowerSeries: needs at least one coefficient");
    if (decay && !(decay->ratio > 0.0 && decay->ratio <= 1.0))
      throw std::domain_error("PowerSeries: decay ratio must be in (0,1]");
  }

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  // magnitude of the discarded tail at |z| = radius; nullopt when no
  // decay model is attached or the geometric bound does not converge
  std::optional<double> tail_bound(double radius) const {
    if (!decay) return std::nullopt;
    const double x = decay->ratio * radius;
    if (!(x < 1.0)) return std::nullopt;
    return std::abs(coeffs.back()) * x / (1.0 - x);
  }
};

namespace detail {
// Horner without the open-disc check; the stored polynomial is entire, so
// internal callers may touch the closed disc (quadrature nodes round to
// r = 1 once the truncation depth passes ~37).
inline complexd horner(const std::vector<complexd>& coeffs, complexd z) {
  complexd acc(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * z + *it;
  return acc;
}
}  // namespace detail

inline complexd series_eval(const PowerSeries& s, complexd z) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("series_eval: requires |z| < 1");
  return detail::horner(s.coeffs, z);
}

// Cauchy product truncated at max(orders); no decay model is propagated.
inline PowerSeries series_product(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<complexd> c(n + 1, complexd(0.0));
  for (int i = 0; i <= a.order(); ++i) {
    for (int j = 0; j <= b.order() && i + j <= n; ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return PowerSeries(std::move(c));
}

inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b,
                              complexd wa = 1.0, complexd wb = 1.0) {
  std::vector<complexd> c(std::max(a.coeffs.size(), b.coeffs.size()),
                          complexd(0.0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += wa * a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += wb * b.coeffs[i];
  return PowerSeries(std::move(c));
}

}
