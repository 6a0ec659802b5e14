#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tentops/analytic_function.hpp"
#include "tentops/carleson_boxes.hpp"
#include "tentops/corpus.hpp"
#include "tentops/hilbert.hpp"
#include "tentops/measures.hpp"
#include "tentops/norm_estimate.hpp"
#include "tentops/rho.hpp"
#include "tentops/special_functions.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

// ------------------------------------------------------------- norm bounds

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// two-sided operator-norm bracket in the strict regime with p > 2:
//   lower = B(s, 1-s) = pi / sin(pi s),  upper = B(1/q, 1-s),  s = 1/p+1/q
inline NormBracket norm_bounds(const TentParams& tp) {
  if (!tp.strict() || !(tp.p > 2.0))
    throw std::domain_error(
        "norm_bounds: requires the strict regime with p > 2");
  const double s = tp.s();
  return {beta_fn(s, 1.0 - s), beta_fn(1.0 / tp.q, 1.0 - s)};
}

// the same bracket from its defining integrals; used as a cross-check
inline NormBracket norm_bounds_by_quadrature(const TentParams& tp,
                                             const QuadratureConfig& cfg = {}) {
  if (!tp.strict() || !(tp.p > 2.0))
    throw std::domain_error(
        "norm_bounds: requires the strict regime with p > 2");
  const double s = tp.s();
  auto lower = tanh_sinh<double>(
      [&](double t, double omt) {
        return std::pow(t, s - 1.0) * std::pow(omt, -s);
      },
      cfg);
  auto upper = tanh_sinh<double>(
      [&](double t, double omt) {
        return std::pow(t, 1.0 / tp.q - 1.0) * std::pow(omt, -s);
      },
      cfg);
  return {lower.value, upper.value};
}

// -------------------------------------------------------------- norm probe

enum class ProbeEngine { integral, matrix };

inline const char* to_string(ProbeEngine e) {
  return e == ProbeEngine::integral ? "integral" : "matrix";
}

struct ProbePoint {
  double alpha = 0.0;
  double ratio = 0.0;
  double err_estimate = 0.0;
  NormVerdict input_verdict = NormVerdict::Inconclusive;
  NormVerdict image_verdict = NormVerdict::Inconclusive;
};

struct ProbeResult {
  std::vector<double> alpha_grid;
  std::vector<ProbePoint> points;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double max_ratio = 0.0;
  std::vector<double> bound_violations;  // alphas exceeding 1.05 * upper
  ProbeEngine engine = ProbeEngine::integral;
};

namespace detail {

// (1 - alpha z)^{-2} = sum (k+1) alpha^k z^k, truncated when the tail of
// the coefficient sum is negligible
inline PowerSeries peaked_series(double alpha, const TentParams& tp,
                                 int max_order = 4096) {
  const double pre =
      std::pow(1.0 - alpha, 1.0 / tp.pprime() + 1.0 / tp.qprime());
  std::vector<complexd> c;
  double ak = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    c.push_back(pre * (k + 1.0) * ak);
    ak *= alpha;
  }
  PowerSeries out(std::move(c));
  out.decay = PowerSeries::DecayModel{std::max(alpha, 1e-12)};
  return out;
}

}  // namespace detail

inline ProbeResult operator_norm_probe(
    const TentParams& tp, const std::vector<double>& alpha_grid,
    ProbeEngine engine = ProbeEngine::integral) {
  if (!tp.strict() || !(tp.p > 2.0))
    throw std::domain_error(
        "operator_norm_probe: requires the strict regime with p > 2");
  for (double a : alpha_grid)
    if (!(a >= 0.0 && a <= 1.0 - 1e-5))
      throw std::domain_error(
          "operator_norm_probe: grid must lie in [0, 1-1e-5]");

  ProbeResult res;
  res.alpha_grid = alpha_grid;
  res.engine = engine;
  const NormBracket nb = norm_bounds(tp);
  res.lower_bound = nb.lower;
  res.upper_bound = nb.upper;
  const auto leb = lebesgue_measure();
  // engine-agreement depends on both norms saturating well below the
  // comparison tolerance
  RhoOptions opt;
  opt.value_rel_tol = 1e-9;

  for (double alpha : alpha_grid) {
    ProbePoint pt;
    pt.alpha = alpha;
    const AnalyticFunction f = peaked_family(alpha, tp);
    const NormEstimate nf = rho_pq(f, tp, {}, opt);
    pt.input_verdict = nf.verdict;

    AnalyticFunction image = AnalyticFunction::constant(0.0);
    if (engine == ProbeEngine::integral) {
      image = imu_compile(f, leb);
    } else {
      if (alpha > 0.99)
        throw std::domain_error(
            "operator_norm_probe: matrix engine needs alpha <= 0.99 for an "
            "accurate truncation");
      const auto series = detail::peaked_series(alpha, tp);
      const int n_out = std::min(
          65536, std::max(4096, static_cast<int>(32.0 / (1.0 - alpha))));
      image = AnalyticFunction::from_series(hilbert_apply(series, n_out));
    }
    const NormEstimate ni = rho_pq(image, tp, {}, opt);
    pt.image_verdict = ni.verdict;

    if (!nf.diverged() && !ni.diverged() && nf.value() > 0.0) {
      pt.ratio = ni.value() / nf.value();
      pt.err_estimate =
          (ni.error_estimate + nf.error_estimate * pt.ratio) / nf.value();
      res.max_ratio = std::max(res.max_ratio, pt.ratio);
      if (pt.ratio > 1.05 * res.upper_bound)
        res.bound_violations.push_back(alpha);
    } else {
      pt.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    res.points.push_back(pt);
  }
  return res;
}

// --------------------------------------------------- boundedness experiment

struct ExperimentRow {
  std::string label;
  double rho_f = 0.0;
  double rho_image = 0.0;
  double ratio = 0.0;
  NormVerdict f_verdict = NormVerdict::Inconclusive;
  NormVerdict image_verdict = NormVerdict::Inconclusive;
};

inline std::vector<ExperimentRow> boundedness_experiment(
    const RadialMeasure& mu, const TentParams& tp,
    const std::vector<std::pair<std::string, AnalyticFunction>>& corpus) {
  if (!tp.strict())
    throw std::domain_error(
        "boundedness_experiment: requires the strict regime");
  std::vector<ExperimentRow> rows;
  for (const auto& [label, f] : corpus) {
    ExperimentRow row;
    row.label = label;
    const NormEstimate nf = rho_pq(f, tp);
    row.f_verdict = nf.verdict;
    row.rho_f = nf.diverged() ? std::numeric_limits<double>::infinity()
                              : nf.value();
    try {
      const AnalyticFunction image = imu_compile(f, mu);
      const NormEstimate ni = rho_pq(image, tp);
      row.image_verdict = ni.verdict;
      row.rho_image = ni.diverged()
                          ? std::numeric_limits<double>::infinity()
                          : ni.value();
    } catch (const IllDefinedError&) {
      row.image_verdict = NormVerdict::Diverged;
      row.rho_image = std::numeric_limits<double>::infinity();
    }
    row.ratio = (std::isfinite(row.rho_f) && std::isfinite(row.rho_image) &&
                 row.rho_f > 0.0)
                    ? row.rho_image / row.rho_f
                    : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

// default corpus: the peaked family on five approach points plus random
// polynomials
inline std::vector<std::pair<std::string, AnalyticFunction>>
default_experiment_corpus(const TentParams& tp, std::uint64_t seed,
                          int polynomials = 20) {
  std::vector<std::pair<std::string, AnalyticFunction>> out;
  for (double a : {0.0, 0.5, 0.9, 0.99, 0.999}) {
    std::ostringstream k;
    k << "peaked:" << a;
    out.push_back({k.str(), peaked_family(a, tp)});
  }
  Rng rng(seed);
  for (int i = 0; i < polynomials; ++i) {
    std::ostringstream k;
    k << "poly:" << i;
    out.push_back({k.str(), AnalyticFunction::from_series(
                                random_polynomial(rng, 16))});
  }
  return out;
}

// --------------------------------------------------------- compactness probe

// rho(I_mu g_alpha) along an approach sequence, g_alpha normalized to unit
// radial norm; decay to zero is the compactness signature
inline std::vector<std::pair<double, double>> compactness_probe(
    const RadialMeasure& mu, const TentParams& tp,
    const std::vector<double>& alpha_seq) {
  if (!tp.strict())
    throw std::domain_error("compactness_probe: requires the strict regime");
  std::vector<std::pair<double, double>> out;
  for (double alpha : alpha_seq) {
    const AnalyticFunction f = peaked_family(alpha, tp);
    const NormEstimate nf = rho_pq(f, tp);
    if (nf.diverged() || nf.value() == 0.0) {
      out.push_back({alpha, std::numeric_limits<double>::quiet_NaN()});
      continue;
    }
    const AnalyticFunction g = AnalyticFunction::scaled(f, 1.0 / nf.value());
    const AnalyticFunction image = imu_compile(g, mu);
    const NormEstimate ni = rho_pq(image, tp);
    out.push_back({alpha, ni.diverged()
                              ? std::numeric_limits<double>::infinity()
                              : ni.value()});
  }
  return out;
}

// ------------------------------------------------- classical inequality lab

// circle mean of |f| at r = 1 for polynomials
inline double h1_norm(const PowerSeries& f, int grid = 8192) {
  detail::KahanSum<double> acc;
  for (int j = 0; j < grid; ++j) {
    const complexd z = std::polar(1.0, 2.0 * M_PI * j / grid);
    acc.add(std::abs(detail::horner(f.coeffs, z)));
  }
  return acc.sum / grid;
}

inline double coefficient_sum(const PowerSeries& f) {
  detail::KahanSum<double> acc;
  for (int k = 0; k <= f.order(); ++k)
    acc.add(std::abs(f.coeffs[k]) / (k + 1.0));
  return acc.sum;
}

// max over the corpus of (sum |a_k|/(k+1)) / ||f||_{H^1}; classically <= pi
inline double hardy_inequality_check(const std::vector<PowerSeries>& corpus) {
  double worst = 0.0;
  for (const auto& f : corpus) {
    const double h1 = h1_norm(f);
    if (h1 > 0.0) worst = std::max(worst, coefficient_sum(f) / h1);
  }
  return worst;
}

// max over the corpus of (sum |a_k|/(k+1)) / ||f||_{A^p}
inline double bergman_coefficient_check(const std::vector<PowerSeries>& corpus,
                                        double p) {
  if (!(p > 2.0))
    throw std::domain_error("bergman_coefficient_check: requires p > 2");
  double worst = 0.0;
  for (const auto& f : corpus) {
    const double ap = bergman_pp_norm(AnalyticFunction::from_series(f), p);
    if (ap > 0.0) worst = std::max(worst, coefficient_sum(f) / ap);
  }
  return worst;
}

// max over automorphisms and corpus of
//   ||f o phi_a||_{T_p^inf} (1-a)^{1/p} / ||f||_{T_p^inf}
inline double composition_bound_check(
    const std::vector<double>& a_grid, double p,
    const std::vector<AnalyticFunction>& corpus, int box_levels = 6) {
  if (!(p >= 2.0))
    throw std::domain_error("composition_bound_check: requires p >= 2");
  const auto grid = dyadic_box_grid(box_levels);
  double worst = 0.0;
  for (const auto& f : corpus) {
    const double base = tent_p_infty_norm(f, p, grid).value();
    if (!(base > 0.0)) continue;
    for (double a : a_grid) {
      const auto composed = AnalyticFunction::compose_mobius(f, a);
      const double v = tent_p_infty_norm(composed, p, grid).value();
      worst = std::max(worst, v * std::pow(1.0 - a, 1.0 / p) / base);
    }
  }
  return worst;
}

// borderline membership on the critical line: the log-damped kernel has a
// finite radial norm exactly where the raw kernel's diverges
inline NormEstimate critical_line_membership(const TentParams& tp) {
  if (!tp.critical() || !(tp.p > 2.0))
    throw std::domain_error(
        "critical_line_membership: requires the critical regime with p > 2");
  return rho_pq(AnalyticFunction::log_test(), tp);
}

}
