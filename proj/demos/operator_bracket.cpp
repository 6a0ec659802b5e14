// brackets the operator norm between the closed-form bounds and probes it
// with a family of peaked inputs

#include <cstdio>

#include "tentops/norm_lab.hpp"

using namespace tentops;

int main() {
  const TentParams tp{4.0, 4.0};
  const NormBracket nb = norm_bounds(tp);
  std::printf("(p, q) = (%g, %g): norm in [%.9f, %.9f]\n", tp.p, tp.q,
              nb.lower, nb.upper);

  const ProbeResult probe =
      operator_norm_probe(tp, {0.0, 0.5}, ProbeEngine::integral);
  for (const auto& pt : probe.points)
    std::printf("  alpha = %.2f: ratio %.6f  [err ~ %.1e]\n", pt.alpha,
                pt.ratio, pt.err_estimate);
  std::printf("max observed ratio %.6f, lower bound %.6f\n", probe.max_ratio,
              nb.lower);
  return 0;
}
