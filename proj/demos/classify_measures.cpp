// classifies radial measures against the Carleson embedding conditions

#include <cstdio>
#include <string>
#include <vector>

#include "tentops/measures.hpp"

using namespace tentops;

int main() {
  const TentParams tp{4.0, 4.0};
  const std::vector<std::string> keys = {
      "lebesgue",
      "pow:1",
      "logweight",
      "lebesgue+atom:0.5:1",
  };

  for (const auto& key : keys) {
    const RadialMeasure mu = parse_measure(key);
    const CarlesonReport rep = classify_carleson(mu, tp);
    std::printf("%-22s 1CM=%s (const %.6f)  1VCM=%s  growth=%.4f  dyadic=%s\n",
                key.c_str(), rep.is_1CM ? "yes" : "no", rep.cm_constant,
                rep.is_1VCM ? "yes" : "no", rep.moment_growth,
                to_string(rep.dyadic_condition.verdict));
  }
  return 0;
}
