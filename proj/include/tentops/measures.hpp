#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tentops/norm_estimate.hpp"
#include "tentops/power_series.hpp"
#include "tentops/quadrature.hpp"
#include "tentops/tent_params.hpp"

namespace tentops {

// Positive measure on [0,1): an absolutely continuous part given by a
// density w(t) (signature (t, 1-t), matching the quadrature nodes) plus
// finitely many atoms. density_tail, when present, is the closed form of
// the density part of mu([t,1)); atoms are added on top of it.
struct RadialMeasure {
  std::function<double(double, double)> density;  // may be empty
  std::vector<std::pair<double, double>> atoms;   // (position, mass)
  std::function<double(double)> density_tail;     // may be empty
  std::string key;
  double total_mass = 0.0;
};

namespace detail {

inline double density_integral(const RadialMeasure& mu, double from,
                               const QuadratureConfig& cfg) {
  if (!mu.density) return 0.0;
  const double len = 1.0 - from;
  auto g = [&](double u, double omu) {
    return len * mu.density(from + len * u, len * omu);
  };
  return tanh_sinh<double>(g, cfg).value;
}

}  // namespace detail

inline double tail(const RadialMeasure& mu, double t,
                   const QuadratureConfig& cfg = {}) {
  if (!(t >= 0.0 && t < 1.0))
    throw std::domain_error("tail: requires t in [0,1)");
  double v = 0.0;
  if (mu.density_tail)
    v = mu.density_tail(t);
  else if (mu.density)
    v = detail::density_integral(mu, t, cfg);
  for (const auto& [pos, m] : mu.atoms)
    if (pos >= t) v += m;
  return v;
}

inline RadialMeasure make_measure(
    std::function<double(double, double)> density,
    std::vector<std::pair<double, double>> atoms,
    std::function<double(double)> density_tail, std::string key) {
  RadialMeasure mu;
  mu.density = std::move(density);
  mu.atoms = std::move(atoms);
  mu.density_tail = std::move(density_tail);
  mu.key = std::move(key);
  for (const auto& [pos, m] : mu.atoms) {
    if (!(pos >= 0.0 && pos < 1.0))
      throw std::domain_error("measure: atom position outside [0,1)");
    if (!(m > 0.0)) throw std::domain_error("measure: atom mass <= 0");
  }
  try {
    mu.total_mass = tail(mu, 0.0);
  } catch (const QuadratureError&) {
    throw std::domain_error("measure: total mass not finite (" + mu.key +
                            ")");
  }
  if (!std::isfinite(mu.total_mass))
    throw std::domain_error("measure: total mass not finite (" + mu.key +
                            ")");
  return mu;
}

inline double moment(const RadialMeasure& mu, int n,
                     const QuadratureConfig& cfg = {}) {
  if (n < 0) throw std::domain_error("moment: requires n >= 0");
  double v = 0.0;
  if (mu.density) {
    if (n > 1000 && mu.density_tail) {
      // t^n w(t) is a needle at t = 1 for large n; the integrated form
      // n t^{n-1} mu([t,1)) is flat and keeps full accuracy
      auto g = [&](double t, double) {
        return n * std::pow(t, n - 1) * mu.density_tail(t);
      };
      v = tanh_sinh<double>(g, cfg).value;
    } else {
      auto g = [&](double t, double omt) {
        return std::pow(t, n) * mu.density(t, omt);
      };
      v = tanh_sinh<double>(g, cfg).value;
    }
  }
  for (const auto& [pos, m] : mu.atoms) v += m * std::pow(pos, n);
  return v;
}

// ------------------------------------------------------------------ catalog

inline RadialMeasure lebesgue_measure() {
  return make_measure([](double, double) { return 1.0; }, {},
                      [](double t) { return 1.0 - t; }, "lebesgue");
}

// (1-t)^gamma dt, gamma > -1
inline RadialMeasure power_measure(double gamma) {
  if (!(gamma > -1.0))
    throw std::domain_error("pow measure: requires gamma > -1");
  std::ostringstream k;
  k << "pow:" << gamma;
  return make_measure(
      [gamma](double, double omt) { return std::pow(omt, gamma); }, {},
      [gamma](double t) {
        return std::pow(1.0 - t, gamma + 1.0) / (gamma + 1.0);
      },
      k.str());
}

// log(1/(1-t)) dt; tail (1-t)(1 + log(1/(1-t)))
inline RadialMeasure logweight_measure() {
  return make_measure(
      [](double, double omt) { return -std::log(omt); }, {},
      [](double t) {
        const double omt = 1.0 - t;
        return omt == 0.0 ? 0.0 : omt * (1.0 - std::log(omt));
      },
      "logweight");
}

inline RadialMeasure atom_measure(double t, double m) {
  std::ostringstream k;
  k << "atom:" << t << ":" << m;
  return make_measure({}, {{t, m}}, {}, k.str());
}

inline RadialMeasure zero_measure() {
  return make_measure({}, {}, [](double) { return 0.0; }, "zero");
}

inline RadialMeasure scale_measure(const RadialMeasure& mu, double c) {
  if (!(c > 0.0)) throw std::domain_error("scale: requires c > 0");
  RadialMeasure out;
  if (mu.density) {
    auto d = mu.density;
    out.density = [d, c](double t, double omt) { return c * d(t, omt); };
  }
  for (auto [pos, m] : mu.atoms) out.atoms.push_back({pos, c * m});
  if (mu.density_tail) {
    auto dt = mu.density_tail;
    out.density_tail = [dt, c](double t) { return c * dt(t); };
  }
  std::ostringstream k;
  k << c << "*" << mu.key;
  out.key = k.str();
  out.total_mass = c * mu.total_mass;
  return out;
}

inline RadialMeasure add_measures(const RadialMeasure& a,
                                  const RadialMeasure& b) {
  RadialMeasure out;
  if (a.density || b.density) {
    auto da = a.density, db = b.density;
    out.density = [da, db](double t, double omt) {
      return (da ? da(t, omt) : 0.0) + (db ? db(t, omt) : 0.0);
    };
  }
  out.atoms = a.atoms;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  const bool tails = (!a.density || a.density_tail) &&
                     (!b.density || b.density_tail);
  if (tails && (a.density_tail || b.density_tail)) {
    auto ta = a.density_tail, tb = b.density_tail;
    out.density_tail = [ta, tb](double t) {
      return (ta ? ta(t) : 0.0) + (tb ? tb(t) : 0.0);
    };
  }
  out.key = a.key + "+" + b.key;
  out.total_mass = a.total_mass + b.total_mass;
  return out;
}

// key grammar: part("+"part)*, part = [coeff "*"] primitive, primitive in
// {lebesgue, pow:g, logweight, atom:t:m, zero}
inline RadialMeasure parse_measure(const std::string& key) {
  auto parse_part = [](const std::string& part) -> RadialMeasure {
    std::string body = part;
    double coeff = 1.0;
    if (auto star = part.find('*'); star != std::string::npos) {
      coeff = std::stod(part.substr(0, star));
      body = part.substr(star + 1);
    }
    RadialMeasure mu;
    if (body == "lebesgue") {
      mu = lebesgue_measure();
    } else if (body == "logweight") {
      mu = logweight_measure();
    } else if (body == "zero") {
      mu = zero_measure();
    } else if (body.rfind("pow:", 0) == 0) {
      mu = power_measure(std::stod(body.substr(4)));
    } else if (body.rfind("atom:", 0) == 0) {
      const auto rest = body.substr(5);
      const auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw std::domain_error("parse_measure: atom needs t and mass");
      mu = atom_measure(std::stod(rest.substr(0, colon)),
                        std::stod(rest.substr(colon + 1)));
    } else {
      throw std::domain_error("parse_measure: unknown key '" + body + "'");
    }
    return coeff == 1.0 ? mu : scale_measure(mu, coeff);
  };

  RadialMeasure acc;
  bool first = true;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    auto plus = key.find('+', pos);
    if (plus == std::string::npos) plus = key.size();
    const std::string part = key.substr(pos, plus - pos);
    if (part.empty()) throw std::domain_error("parse_measure: empty part");
    acc = first ? parse_part(part) : add_measures(acc, parse_part(part));
    first = false;
    pos = plus + 1;
  }
  acc.key = key;
  return acc;
}

// ----------------------------------------------------------- classification

struct CarlesonReport {
  bool is_1CM = false;
  double cm_constant = 0.0;
  bool is_1VCM = false;
  std::vector<std::pair<double, double>> vanishing_profile;  // (t, ratio)
  double moment_growth = 0.0;
  NormEstimate dyadic_condition;
  std::string probe_resolution;
};

struct ProbeSpec {
  int dyadic_depth = 40;
  int moment_max = 10000;
};

inline double block_mass(const RadialMeasure& mu, int n,
                         const QuadratureConfig& cfg = {}) {
  const double lo = 1.0 - std::ldexp(1.0, -n);
  const double hi = 1.0 - std::ldexp(1.0, -n - 1);
  return tail(mu, lo, cfg) - tail(mu, hi, cfg);
}

inline CarlesonReport classify_carleson(const RadialMeasure& mu,
                                        const TentParams& tp,
                                        const ProbeSpec& probe = {},
                                        const QuadratureConfig& cfg = {}) {
  CarlesonReport rep;
  const int M = probe.dyadic_depth;

  // ratio mu([t,1))/(1-t) on the dyadic probe t = 1-2^{-m}
  std::vector<double> ratio(M + 1);
  for (int m = 0; m <= M; ++m) {
    const double omt = std::ldexp(1.0, -m);
    ratio[m] = tail(mu, 1.0 - omt, cfg) / omt;
    rep.vanishing_profile.push_back({1.0 - omt, ratio[m]});
  }
  double rmax = 0.0;
  for (double r : ratio) rmax = std::max(rmax, r);
  rep.cm_constant = rmax;

  // bounded: below the ceiling and not still climbing across the last
  // ten probes (5% slack absorbs quadrature noise)
  const int lookback = std::min(10, M);
  const bool climbing = ratio[M] > 1.05 * ratio[M - lookback];
  rep.is_1CM = rmax < 1e6 && !climbing;
  rep.is_1VCM = rep.is_1CM && rmax > 0.0 && ratio[M] <= 1e-3 * rmax;

  // sup of (n+1) mu_n over a geometric sample of n <= moment_max
  std::vector<int> ns;
  for (int n = 0; n <= 32; ++n) ns.push_back(n);
  for (int n = 48; n <= probe.moment_max; n = n + n / 2) ns.push_back(n);
  ns.push_back(probe.moment_max);
  for (int n : ns)
    rep.moment_growth =
        std::max(rep.moment_growth, (n + 1.0) * moment(mu, n, cfg));

  // partial sums of sum_n [mu(block_n) 2^{n s}]^{q'}
  const double s = tp.s(), qp = tp.qprime();
  NormEstimate& dc = rep.dyadic_condition;
  double sum = 0.0, last_term = 0.0, prev_term = 0.0;
  int growing = 0;
  for (int n = 0; n < M; ++n) {
    const double term =
        std::pow(block_mass(mu, n, cfg) * std::pow(2.0, n * s), qp);
    sum += term;
    if (n > 0) growing = term > prev_term ? growing + 1 : 0;
    prev_term = term;
    last_term = term;
    if ((n & 7) == 7 || n == M - 1) dc.refinement_trace.push_back({n, sum});
  }
  dc.error_estimate = last_term;
  if (!std::isfinite(sum) || growing >= 5)
    dc.verdict = NormVerdict::Diverged;
  else if (sum == 0.0 || last_term / sum < 1e-6)
    dc.verdict = NormVerdict::Converged;
  else
    dc.verdict = NormVerdict::Inconclusive;

  std::ostringstream pr;
  pr << "dyadic probe to 2^-" << M << "; moments sampled to n="
     << probe.moment_max;
  rep.probe_resolution = pr.str();
  return rep;
}

// ------------------------------------------------------------------ lattice

struct LatticeRegion {
  int n, j;
  double r_lo, r_hi;
  double theta_lo, theta_hi;
  complexd center;
};

struct LueckingLattice {
  int n_max = 0;
  std::vector<LatticeRegion> regions;
};

// R_{n,j}: radial band [1-2^{-n}, 1-2^{-n-1}), arc [2 pi j/2^n,
// 2 pi (j+1)/2^n); centers at the geometric midpoint of each region
inline LueckingLattice build_lattice(int n_max) {
  if (n_max < 0) throw std::domain_error("build_lattice: n_max >= 0");
  LueckingLattice lat;
  lat.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    const double r_lo = 1.0 - std::ldexp(1.0, -n);
    const double r_hi = 1.0 - std::ldexp(1.0, -n - 1);
    const int count = 1 << n;
    const double step = 2.0 * M_PI / count;
    for (int j = 0; j < count; ++j) {
      LatticeRegion reg;
      reg.n = n;
      reg.j = j;
      reg.r_lo = r_lo;
      reg.r_hi = r_hi;
      reg.theta_lo = j * step;
      reg.theta_hi = (j + 1) * step;
      reg.center = std::polar(0.5 * (r_lo + r_hi),
                              0.5 * (reg.theta_lo + reg.theta_hi));
      lat.regions.push_back(reg);
    }
  }
  return lat;
}

}
