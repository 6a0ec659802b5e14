#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tentops/corpus.hpp"
#include "tentops/hilbert.hpp"
#include "tentops/io_util.hpp"
#include "tentops/measures.hpp"
#include "tentops/norm_lab.hpp"
#include "tentops/rho.hpp"

namespace tentops {

using ojson = nlohmann::ordered_json;

// rejected configs carry the violated condition in the message
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, both };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "both") return OutputFormat::both;
  throw ConfigError("format must be one of {csv, json, both}: " + s);
}

struct ScenarioConfig {
  std::string command;
  double p = 4.0;
  double q = 4.0;
  std::string measure = "lebesgue";
  std::string function = "constant:1";
  std::vector<std::vector<double>> coeffs;  // [re, im] pairs, function "coeffs"
  std::vector<double> alpha_grid;           // empty selects the default grid
  std::string engine = "integral";
  std::uint64_t seed = 0xC0FFEEull;
  bool seed_explicit = false;  // false lets the environment override
  double tol = 0.0;            // 0 keeps library defaults
  int n_out = 64;
  int corpus_size = 100;
  int degree = 64;
  std::string out_prefix;
  bool plots = false;
  OutputFormat format = OutputFormat::both;
  int jobs = 1;
  std::string raw;  // exact config bytes; the manifest hash covers these

  std::string prefix() const { return out_prefix.empty() ? command : out_prefix; }
  TentParams tent_params() const { return TentParams{p, q}; }
};

inline const std::set<std::string>& known_commands() {
  static const std::set<std::string> k = {
      "tent-norm",         "hilbert-apply", "carleson-classify",
      "norm-bounds",       "probe-norm",    "probe-compactness",
      "verify-suite"};
  return k;
}

// every (p,q) is validated against the regime its command needs; the thrown
// message names the violated condition
inline void validate_config(const ScenarioConfig& cfg) {
  if (!known_commands().count(cfg.command))
    throw ConfigError("unknown command: " + cfg.command);
  if (cfg.command == "verify-suite") return;
  const TentParams tp = [&cfg] {
    try {
      return cfg.tent_params();
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("invalid (p,q): ") + e.what());
    }
  }();
  const bool needs_strict =
      cfg.command == "norm-bounds" || cfg.command == "probe-norm" ||
      cfg.command == "probe-compactness";
  if (needs_strict && !tp.strict())
    throw ConfigError(cfg.command + " requires 1/p+1/q < 1");
  if ((cfg.command == "norm-bounds" || cfg.command == "probe-norm") &&
      !(cfg.p > 2.0))
    throw ConfigError(cfg.command + " requires p > 2");
  if (cfg.command == "carleson-classify" && !(cfg.q > 1.0))
    throw ConfigError("carleson-classify requires q > 1");
  if (cfg.command == "probe-norm" && cfg.engine != "integral" &&
      cfg.engine != "matrix")
    throw ConfigError("engine must be one of {integral, matrix}: " + cfg.engine);
  if (cfg.command == "probe-norm" && cfg.engine == "matrix") {
    for (double a : cfg.alpha_grid)
      if (a > 0.99)
        throw ConfigError("matrix engine requires alpha <= 0.99");
    if (cfg.alpha_grid.empty())
      throw ConfigError(
          "matrix engine requires an explicit alpha_grid (<= 0.99)");
  }
  for (double a : cfg.alpha_grid)
    if (!(a >= 0.0 && a < 1.0))
      throw ConfigError("alpha_grid entries must lie in [0,1)");
  if (cfg.n_out < 0) throw ConfigError("n_out must be >= 0");
  if (cfg.corpus_size < 1) throw ConfigError("corpus_size must be >= 1");
  if (cfg.degree < 0) throw ConfigError("degree must be >= 0");
  if (cfg.tol < 0.0) throw ConfigError("tol must be >= 0");
}

inline ScenarioConfig parse_config(const std::string& bytes) {
  ojson j;
  try {
    j = ojson::parse(bytes);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  ScenarioConfig cfg;
  cfg.raw = bytes;
  const std::set<std::string> known_keys = {
      "command", "p",      "q",          "measure",     "function",
      "coeffs",  "alpha_grid", "engine", "seed",        "tol",
      "n_out",   "corpus_size", "degree", "out_prefix", "plots",
      "format",  "jobs"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known_keys.count(it.key()))
      throw ConfigError("unknown config key: " + it.key());
  try {
    if (!j.contains("command") || !j["command"].is_string())
      throw ConfigError("config needs a string \"command\"");
    cfg.command = j["command"].get<std::string>();
    if (j.contains("p")) cfg.p = j["p"].get<double>();
    if (j.contains("q")) cfg.q = j["q"].get<double>();
    if (j.contains("measure")) cfg.measure = j["measure"].get<std::string>();
    if (j.contains("function")) cfg.function = j["function"].get<std::string>();
    if (j.contains("coeffs")) {
      for (const auto& c : j["coeffs"]) {
        if (!c.is_array() || c.size() != 2)
          throw ConfigError("coeffs entries must be [re, im] pairs");
        cfg.coeffs.push_back({c[0].get<double>(), c[1].get<double>()});
      }
    }
    if (j.contains("alpha_grid"))
      for (const auto& a : j["alpha_grid"])
        cfg.alpha_grid.push_back(a.get<double>());
    if (j.contains("engine")) cfg.engine = j["engine"].get<std::string>();
    if (j.contains("seed")) {
      cfg.seed = j["seed"].get<std::uint64_t>();
      cfg.seed_explicit = true;
    }
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("n_out")) cfg.n_out = j["n_out"].get<int>();
    if (j.contains("corpus_size"))
      cfg.corpus_size = j["corpus_size"].get<int>();
    if (j.contains("degree")) cfg.degree = j["degree"].get<int>();
    if (j.contains("out_prefix"))
      cfg.out_prefix = j["out_prefix"].get<std::string>();
    if (j.contains("plots")) cfg.plots = j["plots"].get<bool>();
    if (j.contains("format"))
      cfg.format = parse_format(j["format"].get<std::string>());
    if (j.contains("jobs")) cfg.jobs = std::max(1, j["jobs"].get<int>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") +
                      e.what());
  }
  validate_config(cfg);
  return cfg;
}

// function keys: constant:<v>, monomial:<k>, kernel:<a>:<beta>,
// kernel:<re>,<im>:<beta>, logtest, cauchy, poly:<degree>, coeffs
inline AnalyticFunction parse_function(const ScenarioConfig& cfg) {
  const std::string& key = cfg.function;
  auto after = [&](const char* head) {
    return key.substr(std::string(head).size());
  };
  try {
    if (key == "logtest") return AnalyticFunction::log_test();
    if (key == "cauchy") return AnalyticFunction::cauchy_kernel();
    if (key == "coeffs") {
      std::vector<complexd> c;
      for (const auto& pr : cfg.coeffs) c.push_back(complexd(pr[0], pr[1]));
      if (c.empty()) throw ConfigError("function \"coeffs\" needs coeffs");
      return AnalyticFunction::from_series(PowerSeries(std::move(c)));
    }
    if (key.rfind("constant:", 0) == 0)
      return AnalyticFunction::constant(std::stod(after("constant:")));
    if (key.rfind("monomial:", 0) == 0)
      return AnalyticFunction::monomial(std::stoi(after("monomial:")));
    if (key.rfind("poly:", 0) == 0) {
      Rng rng(cfg.seed);
      return AnalyticFunction::from_series(
          random_polynomial(rng, std::stoi(after("poly:"))));
    }
    if (key.rfind("kernel:", 0) == 0) {
      const std::string rest = after("kernel:");
      const auto colon = rest.rfind(':');
      if (colon == std::string::npos)
        throw ConfigError("kernel needs alpha and beta: " + key);
      const std::string ahead = rest.substr(0, colon);
      const double beta = std::stod(rest.substr(colon + 1));
      const auto comma = ahead.find(',');
      const complexd alpha =
          comma == std::string::npos
              ? complexd(std::stod(ahead), 0.0)
              : complexd(std::stod(ahead.substr(0, comma)),
                         std::stod(ahead.substr(comma + 1)));
      return AnalyticFunction::rational_kernel(alpha, beta);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("malformed function key: " + key);
  }
  throw ConfigError("unknown function key: " + key);
}

// coefficient-backed subset of the function keys
inline PowerSeries parse_series(const ScenarioConfig& cfg) {
  const std::string& key = cfg.function;
  try {
    if (key == "coeffs") {
      std::vector<complexd> c;
      for (const auto& pr : cfg.coeffs) c.push_back(complexd(pr[0], pr[1]));
      if (c.empty()) throw ConfigError("function \"coeffs\" needs coeffs");
      return PowerSeries(std::move(c));
    }
    if (key.rfind("monomial:", 0) == 0) {
      const int k = std::stoi(key.substr(9));
      if (k < 0) throw ConfigError("monomial exponent must be >= 0");
      std::vector<complexd> c(k + 1, complexd(0.0, 0.0));
      c.back() = complexd(1.0, 0.0);
      return PowerSeries(std::move(c));
    }
    if (key.rfind("poly:", 0) == 0) {
      Rng rng(cfg.seed);
      return random_polynomial(rng, std::stoi(key.substr(5)));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("malformed function key: " + key);
  }
  throw ConfigError(
      "this command needs a coefficient-backed function "
      "(coeffs, monomial:<k>, poly:<degree>): " +
      key);
}

struct ScenarioResult {
  int exit_code = 0;
  std::map<std::string, std::string> files;  // name -> bytes
};

namespace detail {

inline std::string verdict_str(NormVerdict v) { return to_string(v); }

struct ManifestEntry {
  std::string name;
  double value;
  double error;
};

inline ojson manifest_json(const ScenarioConfig& cfg, const ojson& grid,
                           const std::vector<ManifestEntry>& entries) {
  ojson m;
  m["command"] = cfg.command;
  m["config_hash"] = "fnv1a:" + hex64(fnv1a_64(cfg.raw));
  m["seed"] = cfg.seed;
  m["tol"] = cfg.tol;
  m["grid"] = grid;
  ojson arr = ojson::array();
  for (const auto& e : entries) {
    ojson row;
    row["name"] = e.name;
    if (std::isfinite(e.value))
      row["value"] = e.value;
    else
      row["value"] = format_double(e.value);
    if (std::isfinite(e.error))
      row["error"] = e.error;
    else
      row["error"] = format_double(e.error);
    arr.push_back(row);
  }
  m["entries"] = arr;
  return m;
}

inline void attach(ScenarioResult& res, const ScenarioConfig& cfg,
                   const CsvTable& csv, const ojson& body, const ojson& grid,
                   const std::vector<ManifestEntry>& entries) {
  const std::string pre = cfg.prefix();
  if (cfg.format != OutputFormat::json) res.files[pre + ".csv"] = csv.str();
  if (cfg.format != OutputFormat::csv)
    res.files[pre + ".json"] = body.dump(2) + "\n";
  res.files[pre + "_manifest.json"] =
      manifest_json(cfg, grid, entries).dump(2) + "\n";
}

inline RhoOptions rho_options(const ScenarioConfig& cfg) {
  RhoOptions opt;
  if (cfg.tol > 0.0) opt.value_rel_tol = cfg.tol;
  return opt;
}

}  // namespace detail

inline ScenarioResult run_norm_bounds(const ScenarioConfig& cfg) {
  const TentParams tp = cfg.tent_params();
  const NormBracket nb = norm_bounds(tp);
  const NormBracket qb = norm_bounds_by_quadrature(tp);
  ScenarioResult res;
  CsvTable csv;
  csv.header = {"p", "q", "lower", "upper"};
  csv.rows.push_back({format_double(cfg.p), format_double(cfg.q),
                      format_double(nb.lower), format_double(nb.upper)});
  ojson body;
  body["p"] = cfg.p;
  body["q"] = cfg.q;
  body["lower"] = nb.lower;
  body["upper"] = nb.upper;
  ojson grid;
  grid["quadrature"] = "adaptive";
  detail::attach(res, cfg, csv, body, grid,
                 {{"lower", nb.lower, std::abs(nb.lower - qb.lower)},
                  {"upper", nb.upper, std::abs(nb.upper - qb.upper)}});
  return res;
}

inline ScenarioResult run_tent_norm(const ScenarioConfig& cfg) {
  const TentParams tp = cfg.tent_params();
  const AnalyticFunction f = parse_function(cfg);
  const RhoOptions opt = detail::rho_options(cfg);
  const NormEstimate est = rho_pq(f, tp, {}, opt);
  ScenarioResult res;
  CsvTable csv;
  csv.header = {"function", "p", "q", "verdict", "value", "err_estimate",
                "levels"};
  csv.rows.push_back(
      {cfg.function, format_double(cfg.p), format_double(cfg.q),
       detail::verdict_str(est.verdict), est.value_string(),
       format_double(est.error_estimate),
       format_int(static_cast<long long>(est.refinement_trace.size()))});
  ojson body;
  body["function"] = cfg.function;
  body["p"] = cfg.p;
  body["q"] = cfg.q;
  body["verdict"] = detail::verdict_str(est.verdict);
  if (est.diverged())
    body["value"] = nullptr;
  else
    body["value"] = est.value();
  body["err_estimate"] = est.error_estimate;
  ojson trace = ojson::array();
  for (const auto& [lvl, v] : est.refinement_trace) {
    ojson t;
    t["level"] = lvl;
    t["value"] = v;
    trace.push_back(t);
  }
  body["trace"] = trace;
  ojson grid;
  grid["max_levels"] = opt.max_levels;
  grid["value_rel_tol"] = opt.value_rel_tol;
  detail::attach(res, cfg, csv, body, grid,
                 {{"rho", est.diverged()
                              ? std::numeric_limits<double>::infinity()
                              : est.value(),
                   est.error_estimate}});
  if (est.verdict == NormVerdict::Inconclusive) res.exit_code = 3;
  return res;
}

inline ScenarioResult run_hilbert_apply(const ScenarioConfig& cfg) {
  const PowerSeries f = parse_series(cfg);
  const PowerSeries b = hilbert_apply(f, cfg.n_out);
  const HilbertCertificate cert = hilbert_certificate(f);
  ScenarioResult res;
  CsvTable csv;
  csv.header = {"n", "re", "im"};
  for (std::size_t n = 0; n < b.coeffs.size(); ++n)
    csv.rows.push_back({format_int(static_cast<long long>(n)),
                        format_double(b.coeffs[n].real()),
                        format_double(b.coeffs[n].imag())});
  ojson body;
  body["function"] = cfg.function;
  body["n_out"] = cfg.n_out;
  ojson arr = ojson::array();
  for (const auto& c : b.coeffs) {
    ojson pr = ojson::array();
    pr.push_back(c.real());
    pr.push_back(c.imag());
    arr.push_back(pr);
  }
  body["coeffs"] = arr;
  ojson certj;
  ojson partials = ojson::array();
  for (double v : cert.b0_partials) partials.push_back(v);
  certj["b0_partials"] = partials;
  certj["stable"] = cert.stable;
  body["certificate"] = certj;
  ojson grid;
  grid["n_out"] = cfg.n_out;
  const double b0 = b.coeffs.empty() ? 0.0 : std::abs(b.coeffs[0]);
  const double cerr =
      cert.b0_partials.size() >= 2
          ? std::abs(cert.b0_partials.back() -
                     cert.b0_partials[cert.b0_partials.size() - 2])
          : 0.0;
  detail::attach(res, cfg, csv, body, grid, {{"abs_b0", b0, cerr}});
  if (!cert.stable) res.exit_code = 3;
  return res;
}

inline ScenarioResult run_carleson_classify(const ScenarioConfig& cfg) {
  const TentParams tp = cfg.tent_params();
  const RadialMeasure mu = parse_measure(cfg.measure);
  const CarlesonReport rep = classify_carleson(mu, tp);
  ScenarioResult res;
  CsvTable csv;
  csv.header = {"t", "tail_ratio"};
  for (const auto& [t, ratio] : rep.vanishing_profile)
    csv.rows.push_back({format_double(t), format_double(ratio)});
  ojson body;
  body["measure"] = cfg.measure;
  body["is_1CM"] = rep.is_1CM;
  body["cm_constant"] = rep.cm_constant;
  body["is_1VCM"] = rep.is_1VCM;
  body["moment_growth"] = rep.moment_growth;
  body["dyadic_verdict"] = detail::verdict_str(rep.dyadic_condition.verdict);
  if (rep.dyadic_condition.diverged())
    body["dyadic_sum"] = nullptr;
  else
    body["dyadic_sum"] = rep.dyadic_condition.value();
  body["probe_resolution"] = rep.probe_resolution;
  ojson grid;
  grid["probe_resolution"] = rep.probe_resolution;
  std::vector<detail::ManifestEntry> entries = {
      {"cm_constant", rep.cm_constant, 0.0},
      {"moment_growth", rep.moment_growth, 0.0}};
  if (!rep.dyadic_condition.diverged())
    entries.push_back({"dyadic_sum", rep.dyadic_condition.value(),
                       rep.dyadic_condition.error_estimate});
  detail::attach(res, cfg, csv, body, grid, entries);
  if (cfg.plots) {
    std::vector<double> xs, ys;
    for (const auto& [t, ratio] : rep.vanishing_profile) {
      xs.push_back(t);
      ys.push_back(ratio);
    }
    res.files[cfg.prefix() + "_tailratio.dat"] = plot_data(xs, ys);
  }
  return res;
}

inline ScenarioResult run_probe_norm(const ScenarioConfig& cfg) {
  const TentParams tp = cfg.tent_params();
  const std::vector<double> grid =
      cfg.alpha_grid.empty() ? default_alpha_grid() : cfg.alpha_grid;
  const ProbeEngine engine = cfg.engine == "matrix" ? ProbeEngine::matrix
                                                    : ProbeEngine::integral;
  const NormBracket nb = norm_bounds(tp);

  std::vector<ProbePoint> pts(grid.size());
  parallel_index_map(grid.size(), cfg.jobs, [&](std::size_t i) {
    const ProbeResult r = operator_norm_probe(tp, {grid[i]}, engine);
    pts[i] = r.points.at(0);
  });

  ScenarioResult res;
  CsvTable csv;
  csv.header = {"alpha", "ratio", "lower", "upper", "engine", "err_estimate"};
  ojson rows = ojson::array();
  std::vector<detail::ManifestEntry> entries;
  bool inconclusive = false;
  for (const auto& pt : pts) {
    csv.rows.push_back({format_double(pt.alpha), format_double(pt.ratio),
                        format_double(nb.lower), format_double(nb.upper),
                        cfg.engine, format_double(pt.err_estimate)});
    ojson row;
    row["alpha"] = pt.alpha;
    if (std::isfinite(pt.ratio))
      row["ratio"] = pt.ratio;
    else
      row["ratio"] = nullptr;
    row["input_verdict"] = detail::verdict_str(pt.input_verdict);
    row["image_verdict"] = detail::verdict_str(pt.image_verdict);
    rows.push_back(row);
    entries.push_back({"ratio@" + format_double(pt.alpha), pt.ratio,
                       pt.err_estimate});
    if (pt.input_verdict == NormVerdict::Inconclusive ||
        pt.image_verdict == NormVerdict::Inconclusive)
      inconclusive = true;
  }
  ojson body;
  body["p"] = cfg.p;
  body["q"] = cfg.q;
  body["engine"] = cfg.engine;
  body["lower"] = nb.lower;
  body["upper"] = nb.upper;
  body["points"] = rows;
  ojson gridj;
  gridj["alpha_points"] = grid.size();
  detail::attach(res, cfg, csv, body, gridj, entries);
  if (cfg.plots) {
    std::vector<double> xs, ys;
    for (const auto& pt : pts) {
      xs.push_back(pt.alpha);
      ys.push_back(pt.ratio);
    }
    const std::string dat = cfg.prefix() + "_ratio.dat";
    res.files[dat] = plot_data(xs, ys);
    res.files[cfg.prefix() + ".gp"] =
        "set xlabel 'alpha'\nset ylabel 'ratio'\nplot '" + dat +
        "' with linespoints title 'probe'\n";
  }
  if (inconclusive) res.exit_code = 3;
  return res;
}

inline ScenarioResult run_probe_compactness(const ScenarioConfig& cfg) {
  const TentParams tp = cfg.tent_params();
  const RadialMeasure mu = parse_measure(cfg.measure);
  const std::vector<double> grid =
      cfg.alpha_grid.empty() ? default_alpha_grid(7) : cfg.alpha_grid;

  std::vector<double> vals(grid.size());
  parallel_index_map(grid.size(), cfg.jobs, [&](std::size_t i) {
    const auto pts = compactness_probe(mu, tp, {grid[i]});
    vals[i] = pts.at(0).second;
  });

  ScenarioResult res;
  CsvTable csv;
  csv.header = {"alpha", "image_norm"};
  ojson rows = ojson::array();
  std::vector<detail::ManifestEntry> entries;
  bool failed = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.rows.push_back({format_double(grid[i]), format_double(vals[i])});
    ojson row;
    row["alpha"] = grid[i];
    if (std::isfinite(vals[i]))
      row["image_norm"] = vals[i];
    else
      row["image_norm"] = nullptr;
    rows.push_back(row);
    entries.push_back({"image_norm@" + format_double(grid[i]), vals[i], 0.0});
    if (std::isnan(vals[i])) failed = true;
  }
  ojson body;
  body["p"] = cfg.p;
  body["q"] = cfg.q;
  body["measure"] = cfg.measure;
  body["points"] = rows;
  ojson gridj;
  gridj["alpha_points"] = grid.size();
  detail::attach(res, cfg, csv, body, gridj, entries);
  if (cfg.plots) {
    res.files[cfg.prefix() + "_decay.dat"] = plot_data(grid, vals);
  }
  if (failed) res.exit_code = 3;
  return res;
}

// verify-suite is dispatched by the caller; everything else lands here
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.command == "norm-bounds") return run_norm_bounds(cfg);
  if (cfg.command == "tent-norm") return run_tent_norm(cfg);
  if (cfg.command == "hilbert-apply") return run_hilbert_apply(cfg);
  if (cfg.command == "carleson-classify") return run_carleson_classify(cfg);
  if (cfg.command == "probe-norm") return run_probe_norm(cfg);
  if (cfg.command == "probe-compactness") return run_probe_compactness(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

}
