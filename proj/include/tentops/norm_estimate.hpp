#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tentops {

enum class NormVerdict { Converged, Diverged, Inconclusive };

inline const char* to_string(NormVerdict v) {
  switch (v) {
    case NormVerdict::Converged:
      return "converged";
    case NormVerdict::Diverged:
      return "diverged";
    default:
      return "inconclusive";
  }
}

// Result of an iteratively refined norm computation. The trace keeps one
// entry per refinement level; the reported value is always the last entry,
// qualified by the verdict (a Diverged value is the last finite estimate
// before the computation was abandoned, not a norm).
struct NormEstimate {
  NormVerdict verdict = NormVerdict::Inconclusive;
  double error_estimate = 0.0;
  std::vector<std::pair<int, double>> refinement_trace;

  double value() const {
    if (refinement_trace.empty())
      throw std::logic_error("NormEstimate: empty refinement trace");
    return refinement_trace.back().second;
  }
  bool diverged() const { return verdict == NormVerdict::Diverged; }
  bool converged() const { return verdict == NormVerdict::Converged; }

  std::string value_string() const {
    if (diverged()) return "diverges";
    return std::to_string(value());
  }

  static NormEstimate exact(double v) {
    NormEstimate e;
    e.verdict = NormVerdict::Converged;
    e.refinement_trace = {{0, v}};
    return e;
  }
};

}
