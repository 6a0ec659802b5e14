#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "tentops/scenario.hpp"

namespace tentops {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return std::string(buf);
}

inline std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::string(buf);
}

// least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace detail

// 1. coefficient action of the integral route on monomials matches the
//    Hankel kernel 1/(n+k+1)
inline CriterionResult criterion_hankel_action() {
  CriterionResult res{1, "hankel action identity", false, ""};
  const auto leb = lebesgue_measure();
  double worst = 0.0;
  for (int k = 0; k <= 50; ++k) {
    const AnalyticFunction image =
        imu_compile(AnalyticFunction::monomial(k), leb);
    const auto coeffs = taylor_coefficients(
        [&image](complexd z) { return image.eval(z); }, 50);
    for (int n = 0; n <= 50; ++n) {
      const double expect = 1.0 / (n + k + 1);
      worst = std::max(worst, std::abs(coeffs[n] - expect));
    }
  }
  res.pass = worst <= 1e-9;
  res.detail = "max coefficient deviation " + detail::sci(worst) +
               " over k,n <= 50 (tol 1e-9)";
  return res;
}

// 2. pointwise agreement of the moment-integral route with the averaged
//    composition route
inline CriterionResult criterion_route_agreement(std::uint64_t seed) {
  CriterionResult res{2, "route agreement", false, ""};
  const auto leb = lebesgue_measure();
  std::vector<AnalyticFunction> fns;
  for (int k : {0, 1, 2, 3, 5, 8}) fns.push_back(AnalyticFunction::monomial(k));
  fns.push_back(AnalyticFunction::rational_kernel(0.5, 1.0));
  fns.push_back(AnalyticFunction::rational_kernel(0.7, 2.0));
  fns.push_back(AnalyticFunction::rational_kernel(-0.6, 1.0));
  fns.push_back(AnalyticFunction::rational_kernel(complexd(0.3, 0.4), 1.5));
  fns.push_back(AnalyticFunction::rational_kernel(0.9, 0.5));
  fns.push_back(AnalyticFunction::rational_kernel(1.0, 0.2));
  fns.push_back(AnalyticFunction::rational_kernel(1.0, 0.6));
  fns.push_back(AnalyticFunction::constant(1.0));
  fns.push_back(AnalyticFunction::constant(0.5));
  Rng rng(seed);
  while (fns.size() < 20)
    fns.push_back(AnalyticFunction::from_series(random_polynomial(rng, 12)));

  std::vector<complexd> pts;
  for (double r : {0.15, 0.45, 0.75, 0.95})
    for (double th : {0.0, 1.3, 2.7, 4.1, 5.5})
      pts.push_back(std::polar(r, th));

  double worst = 0.0;
  for (const auto& f : fns) {
    imu_precheck(f, leb);
    for (const auto& z : pts) {
      const complexd a = imu_apply(f, leb, z, {}, true);
      const complexd b = hilbert_via_composition(f, z);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  res.pass = worst <= 1e-8;
  res.detail = "max pointwise gap " + detail::sci(worst) +
               " over 20x20 function/point grid (tol 1e-8)";
  return res;
}

// 3. closed-form norm bounds match their defining integrals
inline CriterionResult criterion_norm_bounds() {
  CriterionResult res{3, "norm bounds closed form", false, ""};
  const std::vector<std::pair<double, double>> pairs = {
      {4.0, 4.0}, {4.0, 8.0}, {3.0, 8.0}, {8.0, 3.0}};
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    const TentParams tp{p, q};
    const NormBracket nb = norm_bounds(tp);
    const NormBracket qb = norm_bounds_by_quadrature(tp);
    worst = std::max(worst, std::abs(nb.lower - qb.lower));
    worst = std::max(worst, std::abs(nb.upper - qb.upper));
  }
  const double pi_gap =
      std::abs(norm_bounds(TentParams{4.0, 4.0}).lower - std::numbers::pi);
  res.pass = worst <= 1e-8 && pi_gap <= 1e-12;
  res.detail = "max closed-form/quadrature gap " + detail::sci(worst) +
               " (tol 1e-8); lower(4,4) vs pi " + detail::sci(pi_gap);
  return res;
}

// 4. norm scaling of (1-alpha z)^{-beta}: least-squares slope of log rho
//    against log(1-alpha) matches 1/p+1/q-beta within 5%
inline CriterionResult criterion_kernel_scaling() {
  CriterionResult res{4, "kernel norm scaling", false, ""};
  struct Case {
    double p, q, beta;
  };
  const std::vector<Case> cases = {{4, 4, 1.0}, {4, 4, 1.5}, {3, 6, 2.0}};
  const std::vector<double> gaps = {1e-1, 1e-2, 1e-3, 1e-4};
  double worst_rel = 0.0;
  std::string lines;
  for (const auto& c : cases) {
    const TentParams tp{c.p, c.q};
    const double target = tp.s() - c.beta;
    std::vector<double> xs, ys;
    for (double gap : gaps) {
      const AnalyticFunction f =
          AnalyticFunction::rational_kernel(1.0 - gap, c.beta);
      const NormEstimate est = rho_pq(f, tp);
      if (est.diverged()) {
        res.detail = "unexpected divergence at gap " + detail::sci(gap);
        return res;
      }
      xs.push_back(std::log(gap));
      ys.push_back(std::log(est.value()));
    }
    const double slope = detail::ls_slope(xs, ys);
    const double rel = std::abs(slope - target) / std::abs(target);
    worst_rel = std::max(worst_rel, rel);
    if (!lines.empty()) lines += "; ";
    lines += "slope " + detail::fixed6(slope) + " vs " +
             detail::fixed6(target);
  }
  res.pass = worst_rel <= 0.05;
  res.detail = lines + "; worst rel err " + detail::sci(worst_rel) +
               " (tol 5%)";
  return res;
}

// 5. measure classifier dichotomy across the catalog
inline CriterionResult criterion_carleson_dichotomy() {
  CriterionResult res{5, "carleson dichotomy", false, ""};
  const TentParams tp{4.0, 4.0};

  const CarlesonReport leb = classify_carleson(lebesgue_measure(), tp);
  const bool leb_ok = leb.is_1CM && std::abs(leb.cm_constant - 1.0) <= 1e-10 &&
                      !leb.is_1VCM;

  const CarlesonReport van = classify_carleson(power_measure(1.0), tp);
  const bool van_ok = van.is_1CM && van.is_1VCM;

  const CarlesonReport lw = classify_carleson(logweight_measure(), tp);
  const bool lw_cm_ok = !lw.is_1CM;
  bool lw_dyadic_ok = false;
  double term_ratio = std::numeric_limits<double>::infinity();
  if (lw.dyadic_condition.converged()) {
    const double s = tp.s();
    const double qp = tp.qprime();
    const double mass = block_mass(logweight_measure(), 40);
    const double term = std::pow(mass * std::pow(2.0, 40 * s), qp);
    term_ratio = term / lw.dyadic_condition.value();
    lw_dyadic_ok = term_ratio < 1e-6;
  }

  res.pass = leb_ok && van_ok && lw_cm_ok && lw_dyadic_ok;
  res.detail = std::string("lebesgue 1-CM=") + (leb.is_1CM ? "yes" : "no") +
               " const=" + detail::fixed6(leb.cm_constant) +
               ", (1-t)dt VCM=" + (van.is_1VCM ? "yes" : "no") +
               ", logweight 1-CM=" + (lw.is_1CM ? "yes" : "no") +
               " tail-term/sum=" + detail::sci(term_ratio) + " (tol 1e-6)";
  return res;
}

// 6. boundedness signature: bounded ratios under Lebesgue, blow-up quotient
//    under the log weight
inline CriterionResult criterion_boundedness_signature() {
  CriterionResult res{6, "boundedness signature", false, ""};
  const TentParams tp{4.0, 4.0};
  const std::vector<double> grid = default_alpha_grid(7);  // up to 0.999
  const ProbeResult probe =
      operator_norm_probe(tp, grid, ProbeEngine::integral);
  bool bounded_ok = true;
  double max_ratio = 0.0;
  for (const auto& pt : probe.points) {
    if (pt.input_verdict != NormVerdict::Converged ||
        pt.image_verdict != NormVerdict::Converged ||
        !std::isfinite(pt.ratio)) {
      bounded_ok = false;
      break;
    }
    max_ratio = std::max(max_ratio, pt.ratio);
    if (pt.ratio > 2.0 * probe.upper_bound) bounded_ok = false;
  }

  const auto lw = logweight_measure();
  auto ratio_at = [&](double alpha) {
    const AnalyticFunction f = peaked_family(alpha, tp);
    const NormEstimate nf = rho_pq(f, tp);
    const NormEstimate ni = rho_pq(imu_compile(f, lw), tp);
    if (nf.diverged() || ni.diverged())
      return std::numeric_limits<double>::quiet_NaN();
    return ni.value() / nf.value();
  };
  const double r09 = ratio_at(0.9);
  const double r0999 = ratio_at(0.999);
  const double quotient = r0999 / r09;
  const bool blowup_ok = std::isfinite(quotient) && quotient >= 10.0;

  res.pass = bounded_ok && blowup_ok;
  res.detail = "lebesgue max ratio " + detail::fixed6(max_ratio) + " vs cap " +
               detail::fixed6(2.0 * probe.upper_bound) +
               "; logweight quotient " + detail::fixed6(quotient) +
               " (needs >= 10)";
  return res;
}

// 7. compactness signature: normalized images die out under the vanishing
//    measure and persist under Lebesgue
inline CriterionResult criterion_compactness_signature() {
  CriterionResult res{7, "compactness signature", false, ""};
  const TentParams tp{4.0, 4.0};
  const std::vector<double> grid = default_alpha_grid(7);  // up to 0.999

  const auto decay = compactness_probe(power_measure(1.0), tp, grid);
  bool decay_ok = true;
  for (const auto& [a, v] : decay)
    if (!std::isfinite(v)) decay_ok = false;
  double decay_frac = std::numeric_limits<double>::infinity();
  if (decay_ok && decay.front().second > 0.0) {
    decay_frac = decay.back().second / decay.front().second;
    decay_ok = decay_frac <= 0.05;
  }

  const auto persist = compactness_probe(lebesgue_measure(), tp, grid);
  bool persist_ok = true;
  double running = 0.0;
  double worst_frac = 1.0;
  for (const auto& [a, v] : persist) {
    if (!std::isfinite(v)) {
      persist_ok = false;
      break;
    }
    running = std::max(running, v);
    worst_frac = std::min(worst_frac, v / running);
    if (v < 0.5 * running) persist_ok = false;
  }

  res.pass = decay_ok && persist_ok;
  res.detail = "vanishing-measure decay to " + detail::sci(decay_frac) +
               " of start (needs <= 0.05); lebesgue worst fraction of "
               "running max " +
               detail::fixed6(worst_frac) + " (needs >= 0.5)";
  return res;
}

// 8. lower-bound approach through the normalized boundary family
inline CriterionResult criterion_lower_bound_approach() {
  CriterionResult res{8, "lower bound approach", false, ""};
  const TentParams tp{4.0, 4.0};
  const NormBracket nb = norm_bounds(tp);
  const auto leb = lebesgue_measure();
  // exponents approach the critical value from below; the slow angular
  // concentration near the gap needs the widened grids
  const std::vector<double> alphas = {0.25, 0.375, 0.4375, 0.46875, 0.484375};
  RhoOptions opt;
  opt.ladder.x_pad = 60.0;

  double best = 0.0;
  bool all_bounded = true;
  for (double alpha : alphas) {
    const AnalyticFunction g = AnalyticFunction::rational_kernel(1.0, alpha);
    const NormEstimate ng = rho_pq(g, tp, {}, opt);
    if (ng.diverged() || !(ng.value() > 0.0)) {
      all_bounded = false;
      break;
    }
    const AnalyticFunction gn = AnalyticFunction::scaled(g, 1.0 / ng.value());
    const NormEstimate ni = rho_pq(imu_compile(gn, leb), tp, {}, opt);
    if (ni.diverged()) {
      all_bounded = false;
      break;
    }
    const double ratio = ni.value();
    best = std::max(best, ratio);
    if (ratio > 1.05 * nb.upper) all_bounded = false;
  }

  res.pass = all_bounded && best > 0.5 * std::numbers::pi;
  res.detail = "max normalized image norm " + detail::fixed6(best) +
               " (needs > " + detail::fixed6(0.5 * std::numbers::pi) +
               ", cap " + detail::fixed6(1.05 * nb.upper) + ")";
  return res;
}

// 9. critical-line membership: damped kernel stabilizes, raw kernel diverges
inline CriterionResult criterion_critical_line() {
  CriterionResult res{9, "critical line membership", false, ""};
  const TentParams tp{4.0, 4.0 / 3.0};
  const NormEstimate log_est = critical_line_membership(tp);
  bool stable = false;
  if (log_est.converged() && log_est.refinement_trace.size() >= 2) {
    const auto& tr = log_est.refinement_trace;
    const double last = tr[tr.size() - 1].second;
    const double prev = tr[tr.size() - 2].second;
    stable = std::abs(last - prev) <= 1e-3 * std::abs(last);
  }
  const NormEstimate raw = rho_pq(AnalyticFunction::cauchy_kernel(), tp);
  res.pass = stable && raw.diverged();
  res.detail = "damped kernel " + log_est.value_string() +
               (stable ? " (stabilized)" : " (not stabilized)") +
               ", raw kernel " + to_string(raw.verdict);
  return res;
}

// 10. coefficient-sum inequality against the circle-mean norm
inline CriterionResult criterion_coefficient_sum(std::uint64_t seed) {
  CriterionResult res{10, "coefficient sum inequality", false, ""};
  const auto corpus = random_polynomial_corpus(seed, 100, 64);
  const double worst = hardy_inequality_check(corpus);
  res.pass = worst <= std::numbers::pi + 1e-6;
  res.detail = "max ratio " + detail::fixed6(worst) + " over 100 draws vs " +
               detail::fixed6(std::numbers::pi) + " + 1e-6";
  return res;
}

// 11. partial-sum bound is stable under corpus doubling
inline CriterionResult criterion_partial_sum_stability(std::uint64_t seed) {
  CriterionResult res{11, "partial sum stability", false, ""};
  const TentParams tp{4.0, 4.0};
  const auto corpus = random_polynomial_corpus(seed, 200, 64);
  double max100 = 0.0, max200 = 0.0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const PartialSumBound b = partial_sum_bound_check(corpus[i], tp, 256);
    if (i < 100) max100 = std::max(max100, b.ratio);
    max200 = std::max(max200, b.ratio);
  }
  const double change = std::abs(max200 - max100) / max100;
  res.pass = change < 0.10;
  res.detail = "corpus max ratio " + detail::fixed6(max100) + " -> " +
               detail::fixed6(max200) + ", change " + detail::sci(change) +
               " (tol 10%)";
  return res;
}

// 12. damped sup-profiles of the membership catalog collapse near the rim
inline CriterionResult criterion_growth_decay(std::uint64_t seed) {
  CriterionResult res{12, "damped growth decay", false, ""};
  const TentParams tp{4.0, 4.0};
  const auto corpus = growth_profile_corpus(tp, seed);
  const std::vector<double> radii = {0.5, 1.0 - 1e-6};
  double worst = 0.0;
  for (const auto& f : corpus) {
    const auto prof = growth_profile(f, tp, radii);
    const double frac = prof.back().second / prof.front().second;
    worst = std::max(worst, frac);
  }
  res.pass = worst < 0.01;
  res.detail = "worst rim/start fraction " + detail::sci(worst) +
               " over " + format_int(static_cast<long long>(corpus.size())) +
               " members (tol 1e-2)";
  return res;
}

// 13. byte-identical reruns of a representative scenario bundle
inline CriterionResult criterion_determinism(std::uint64_t seed) {
  CriterionResult res{13, "deterministic outputs", false, ""};
  auto render = [seed]() {
    std::map<std::string, std::string> all;
    ScenarioConfig probe;
    probe.command = "probe-norm";
    probe.p = 4.0;
    probe.q = 4.0;
    probe.alpha_grid = {0.0, 0.9};
    probe.engine = "integral";
    probe.seed = seed;
    probe.jobs = 2;
    probe.plots = true;
    probe.out_prefix = "det_probe";
    probe.raw = "determinism-probe";
    for (auto& [name, bytes] : run_probe_norm(probe).files)
      all["probe/" + name] = bytes;

    ScenarioConfig classify;
    classify.command = "carleson-classify";
    classify.p = 4.0;
    classify.q = 4.0;
    classify.measure = "logweight";
    classify.seed = seed;
    classify.out_prefix = "det_classify";
    classify.raw = "determinism-classify";
    for (auto& [name, bytes] : run_carleson_classify(classify).files)
      all["classify/" + name] = bytes;

    ScenarioConfig tnorm;
    tnorm.command = "tent-norm";
    tnorm.p = 4.0;
    tnorm.q = 4.0;
    tnorm.function = "poly:16";
    tnorm.seed = seed;
    tnorm.out_prefix = "det_tent";
    tnorm.raw = "determinism-tent";
    for (auto& [name, bytes] : run_tent_norm(tnorm).files)
      all["tent/" + name] = bytes;
    return all;
  };

  const auto first = render();
  const auto second = render();
  std::size_t bytes = 0;
  for (const auto& [name, content] : first) bytes += content.size();
  res.pass = first == second;
  res.detail = res.pass
                   ? "two renders identical across " +
                         format_int(static_cast<long long>(bytes)) + " bytes"
                   : "renders differ";
  return res;
}

inline CriterionResult run_criterion(int index, std::uint64_t seed) {
  switch (index) {
    case 1:
      return criterion_hankel_action();
    case 2:
      return criterion_route_agreement(seed);
    case 3:
      return criterion_norm_bounds();
    case 4:
      return criterion_kernel_scaling();
    case 5:
      return criterion_carleson_dichotomy();
    case 6:
      return criterion_boundedness_signature();
    case 7:
      return criterion_compactness_signature();
    case 8:
      return criterion_lower_bound_approach();
    case 9:
      return criterion_critical_line();
    case 10:
      return criterion_coefficient_sum(seed);
    case 11:
      return criterion_partial_sum_stability(seed);
    case 12:
      return criterion_growth_decay(seed);
    case 13:
      return criterion_determinism(seed);
    default:
      throw std::domain_error("criterion index must be in 1..13");
  }
}

inline std::vector<CriterionResult> run_battery(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= 13; ++i) out.push_back(run_criterion(i, seed));
  return out;
}

// file bundle for the suite command; exit 1 when any criterion fails
inline ScenarioResult render_verify_suite(
    const ScenarioConfig& cfg, const std::vector<CriterionResult>& results) {
  ScenarioResult res;
  CsvTable csv;
  csv.header = {"index", "name", "status", "detail"};
  ojson rows = ojson::array();
  std::vector<detail::ManifestEntry> entries;
  bool all_pass = true;
  for (const auto& r : results) {
    std::string flat = r.detail;  // CSV fields must stay comma-free
    for (char& ch : flat)
      if (ch == ',') ch = ';';
    csv.rows.push_back(
        {format_int(r.index), r.name, r.pass ? "PASS" : "FAIL", flat});
    ojson row;
    row["index"] = r.index;
    row["name"] = r.name;
    row["pass"] = r.pass;
    row["detail"] = r.detail;
    rows.push_back(row);
    entries.push_back({"criterion_" + format_int(r.index),
                       r.pass ? 1.0 : 0.0, 0.0});
    all_pass = all_pass && r.pass;
  }
  ojson body;
  body["results"] = rows;
  body["all_pass"] = all_pass;
  ojson grid;
  grid["criteria"] = 13;
  detail::attach(res, cfg, csv, body, grid, entries);
  if (!all_pass) res.exit_code = 1;
  return res;
}

inline ScenarioResult run_verify_suite(const ScenarioConfig& cfg) {
  return render_verify_suite(cfg, run_battery(cfg.seed));
}

}
