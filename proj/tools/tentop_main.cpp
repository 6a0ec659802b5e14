#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tentops/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw tentops::ConfigError("cannot read config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::uint64_t parse_seed_env(const char* text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 0);
  if (end == text || *end != '\0')
    throw tentops::ConfigError(std::string("TENTOP_SEED is not a number: ") +
                               text);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reproducible experiments on analytic tent spaces"};
  std::string command, config_path, out_dir = ".", format;
  int jobs = 0;
  double tol = -1.0;
  app.add_option("command", command,
                 "command to run with default settings (alternative to "
                 "--config)");
  app.add_option("--config", config_path, "JSON scenario config path");
  app.add_option("--out", out_dir, "output directory (default .)");
  app.add_option("--jobs", jobs, "worker threads for independent points");
  app.add_option("--tol", tol, "relative tolerance override");
  app.add_option("--format", format, "output format: csv, json, or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string bytes;
    if (!config_path.empty()) {
      bytes = read_file(config_path);
    } else if (!command.empty()) {
      bytes = "{\"command\": \"" + command + "\"}";
    } else {
      throw tentops::ConfigError("need --config PATH or a command name");
    }
    tentops::ScenarioConfig cfg = tentops::parse_config(bytes);
    if (!command.empty() && !config_path.empty() && command != cfg.command)
      throw tentops::ConfigError("positional command and config disagree: " +
                                 command + " vs " + cfg.command);
    if (!cfg.seed_explicit) {
      if (const char* env = std::getenv("TENTOP_SEED"))
        cfg.seed = parse_seed_env(env);
    }
    if (jobs > 0) cfg.jobs = jobs;
    if (tol >= 0.0) cfg.tol = tol;
    if (!format.empty()) cfg.format = tentops::parse_format(format);
    tentops::validate_config(cfg);

    tentops::ScenarioResult res;
    if (cfg.command == "verify-suite") {
      const auto results = tentops::run_battery(cfg.seed);
      for (const auto& r : results)
        std::printf("criterion %2d [%s]: %s  %s\n", r.index, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
      res = tentops::render_verify_suite(cfg, results);
    } else {
      res = tentops::run_scenario(cfg);
    }

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, content] : res.files) {
      const std::string path = out_dir + "/" + name;
      tentops::write_file(path, content);
      std::printf("wrote %s\n", path.c_str());
    }
    return res.exit_code;
  } catch (const tentops::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}
