#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tentops {

enum class Regime { Strict, Critical, Super };

// Exponent pair (p,q) with conjugates and the sum s = 1/p + 1/q.
// The critical band around s = 1 is 1e-12 wide.
struct TentParams {
  double p;
  double q;

  TentParams(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 1.0) || !(q > 1.0))
      throw std::domain_error("TentParams: requires p > 1 and q > 1");
  }

  double s() const { return 1.0 / p + 1.0 / q; }
  double pprime() const { return p / (p - 1.0); }
  double qprime() const { return q / (q - 1.0); }

  static constexpr double kCriticalEps = 1e-12;

  Regime regime() const {
    const double d = s() - 1.0;
    if (std::abs(d) <= kCriticalEps) return Regime::Critical;
    return d < 0.0 ? Regime::Strict : Regime::Super;
  }
  bool strict() const { return regime() == Regime::Strict; }
  bool critical() const { return regime() == Regime::Critical; }
  bool super() const { return regime() == Regime::Super; }

  std::string label() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
};

}
