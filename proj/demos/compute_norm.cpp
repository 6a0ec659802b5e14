// computes radial tent norms for a few closed-form inputs

#include <cstdio>

#include "tentops/rho.hpp"

using namespace tentops;

namespace {

void report(const char* label, const AnalyticFunction& f, TentParams tp) {
  const NormEstimate est = rho_pq(f, tp);
  std::printf("%-18s (p=%g, q=%g): %s  [err ~ %.2e, %zu levels]\n", label,
              tp.p, tp.q, est.value_string().c_str(), est.error_estimate,
              est.refinement_trace.size());
}

}  // namespace

int main() {
  const TentParams tp{4.0, 4.0};

  report("constant 2.5", AnalyticFunction::constant(2.5), tp);
  report("z^3", AnalyticFunction::monomial(3), tp);
  report("kernel a=0.8 b=1", AnalyticFunction::rational_kernel(0.8, 1.0), tp);

  // beta = 1 at the boundary sits outside the space; the ladder says so
  report("kernel a=1 b=1", AnalyticFunction::rational_kernel(1.0, 1.0), tp);

  // the critical line admits the logarithmic test function
  report("log test", AnalyticFunction::log_test(), TentParams{3.0, 1.5});
  return 0;
}
