#include <cstdio>
#include <cstdlib>

#include "CLI11.hpp"
#include "tentops/verify.hpp"

// one line per criterion; exit 0 only when every selected criterion passes

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  int only = 0;
  std::uint64_t seed = 0xC0FFEEull;
  bool seed_given = false;
  app.add_option("--only", only, "run a single criterion (1..13)")
      ->check(CLI::Range(1, 13));
  app.add_option("--seed", seed, "corpus seed")
      ->trigger_on_parse()
      ->each([&seed_given](const std::string&) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!seed_given) {
    if (const char* env = std::getenv("TENTOP_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 0);
      if (end != env && *end == '\0') seed = v;
    }
  }

  bool all_pass = true;
  auto report = [&all_pass, seed](int index) {
    const tentops::CriterionResult r = tentops::run_criterion(index, seed);
    std::printf("criterion %2d [%s]: %s  %s\n", r.index, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  };

  if (only > 0) {
    report(only);
  } else {
    for (int i = 1; i <= 13; ++i) report(i);
  }
  return all_pass ? 0 : 1;
}
