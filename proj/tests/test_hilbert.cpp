#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "reference_values.hpp"
#include "tentops/hilbert.hpp"

using namespace tentops;

TEST_CASE("matrix action on basis coefficients is exact") {
  const auto e0 = hilbert_apply(PowerSeries({1.0}), 10);
  for (int n = 0; n <= 10; ++n)
    REQUIRE(e0.coeffs[n] == complexd(1.0 / (n + 1.0), 0.0));
  const auto e3 = hilbert_apply(PowerSeries({0.0, 0.0, 0.0, 1.0}), 10);
  for (int n = 0; n <= 10; ++n)
    REQUIRE(e3.coeffs[n] == complexd(1.0 / (n + 4.0), 0.0));
  REQUIRE_THROWS_AS(hilbert_apply(PowerSeries({1.0}), -1), std::domain_error);
}

TEST_CASE("matrix action is linear") {
  PowerSeries f({1.0, complexd(0.0, 2.0), -0.5});
  PowerSeries g({0.25, 1.0});
  PowerSeries fg({1.25, complexd(1.0, 2.0), -0.5});
  const auto a = hilbert_apply(f, 8);
  const auto b = hilbert_apply(g, 8);
  const auto c = hilbert_apply(fg, 8);
  for (int n = 0; n <= 8; ++n)
    REQUIRE(std::abs(c.coeffs[n] - (a.coeffs[n] + b.coeffs[n])) <= 1e-15);
}

TEST_CASE("coefficient decay survives the matrix action") {
  PowerSeries f({1.0, 0.5});
  f.decay = PowerSeries::DecayModel{0.5};
  REQUIRE(hilbert_apply(f, 4).decay.has_value());
  REQUIRE(!hilbert_apply(PowerSeries({1.0, 0.5}), 4).decay.has_value());
}

TEST_CASE("truncation certificate flags harmonic-type growth") {
  std::vector<complexd> ones128(128, 1.0), ones16(16, 1.0);
  std::vector<complexd> geo(128);
  double g = 1.0;
  for (auto& c : geo) {
    c = g;
    g *= 0.5;
  }
  REQUIRE(!hilbert_certificate(PowerSeries(ones128)).stable);
  REQUIRE(hilbert_certificate(PowerSeries(geo)).stable);
  // short series are complete sums, not truncations
  REQUIRE(hilbert_certificate(PowerSeries(ones16)).stable);
  const auto cert = hilbert_certificate(PowerSeries(ones128));
  REQUIRE(cert.b0_partials.size() == 3);
  REQUIRE(cert.b0_partials[0] < cert.b0_partials[1]);
  REQUIRE(cert.b0_partials[1] < cert.b0_partials[2]);
}

TEST_CASE("moment table for the flat weight") {
  const auto hm = hankel_moments(lebesgue_measure(), 8);
  REQUIRE(hm.moments.size() == 17);
  for (int j = 0; j <= 16; ++j)
    REQUIRE(std::abs(hm.moments[j] - 1.0 / (j + 1.0)) <= 1e-12);
  REQUIRE_THROWS_AS(hankel_moments(lebesgue_measure(), -1),
                    std::domain_error);
}

TEST_CASE("moment-matrix action agrees with the exact one for flat weight") {
  PowerSeries f({1.0, complexd(0.5, -0.25), 0.0, 2.0});
  const auto hm = hankel_moments(lebesgue_measure(), 8);
  const auto a = hilbert_apply(f, 8);
  const auto b = hmu_apply(f, hm, 8);
  for (int n = 0; n <= 8; ++n)
    REQUIRE(std::abs(a.coeffs[n] - b.coeffs[n]) <= 1e-12);
  // cached moments must cover max(order, n_out)
  REQUIRE_THROWS_AS(hmu_apply(f, hm, 9), std::domain_error);
  PowerSeries longer(std::vector<complexd>(12, complexd(1.0, 0.0)));
  REQUIRE_THROWS_AS(hmu_apply(longer, hm, 4), std::domain_error);
}

TEST_CASE("integral action against the flat weight") {
  const complexd z(0.4, 0.2);
  const complexd got =
      imu_apply(AnalyticFunction::monomial(3), lebesgue_measure(), z);
  REQUIRE(std::abs(got - complexd(refvals::kMonomial3ImageRe,
                                  refvals::kMonomial3ImageIm)) <= 1e-12);
  const complexd c1 = imu_apply(AnalyticFunction::constant(1.0),
                                lebesgue_measure(), complexd(0.5, 0.0));
  REQUIRE(std::abs(c1 - complexd(refvals::kTwoLogTwo, 0.0)) <= 1e-12);
  REQUIRE_THROWS_AS(imu_apply(AnalyticFunction::constant(1.0),
                              lebesgue_measure(), complexd(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("integral action against atoms is a finite sum") {
  const auto mu = atom_measure(0.5, 2.0);
  const auto f = AnalyticFunction::monomial(2);
  const complexd z(0.3, -0.4);
  const complexd expect = 2.0 * 0.25 / (1.0 - 0.5 * z);
  REQUIRE(std::abs(imu_apply(f, mu, z) - expect) <= 1e-15);
}

TEST_CASE("integrability gate") {
  REQUIRE(std::abs(imu_precheck(AnalyticFunction::rational_kernel(1.0, 0.5),
                                lebesgue_measure()) -
                   2.0) <= 1e-10);
  REQUIRE(imu_precheck(AnalyticFunction::constant(2.0),
                       atom_measure(0.5, 3.0)) == 6.0);
  REQUIRE_THROWS_AS(imu_precheck(AnalyticFunction::rational_kernel(1.0, 1.5),
                                 lebesgue_measure()),
                    IllDefinedError);
  REQUIRE_THROWS_AS(
      imu_precheck(AnalyticFunction::cauchy_kernel(), lebesgue_measure()),
      IllDefinedError);
  REQUIRE_THROWS_AS(
      imu_precheck(AnalyticFunction::log_test(), lebesgue_measure()),
      IllDefinedError);
}

TEST_CASE("compiled operator image matches pointwise integration") {
  const auto f = AnalyticFunction::rational_kernel(0.7, 1.0);
  const auto mu = logweight_measure();
  const auto g = imu_compile(f, mu);
  for (double re : {0.0, 0.4, -0.3})
    for (double im : {0.0, 0.5}) {
      const complexd z(re, im);
      REQUIRE(std::abs(g.eval(z) - imu_apply(f, mu, z)) <= 1e-12);
    }
}

TEST_CASE("compiled image of an atomic measure is exact") {
  const auto g =
      imu_compile(AnalyticFunction::constant(1.0), atom_measure(0.5, 2.0));
  const complexd z(0.2, 0.6);
  REQUIRE(std::abs(g.eval(z) - 2.0 / (1.0 - 0.5 * z)) <= 1e-16);
}

TEST_CASE("averaged-composition route agrees with the kernel integral") {
  const auto f = AnalyticFunction::rational_kernel(0.5, 1.0);
  for (complexd z : {complexd(0.3, 0.4), complexd(-0.6, 0.1)}) {
    const complexd a = hilbert_via_composition(f, z);
    const complexd b = imu_apply(f, lebesgue_measure(), z);
    REQUIRE(std::abs(a - b) <= 1e-9);
  }
  REQUIRE_THROWS_AS(hilbert_via_composition(f, complexd(0.0, 1.0)),
                    std::domain_error);
}

TEST_CASE("kernel profile matches frozen values") {
  const complexd p1 = phi_kernel(0.25, complexd(-1.0, 0.0));
  REQUIRE(std::abs(p1 - complexd(refvals::kPhiQuarterAtMinus1, 0.0)) <=
          1e-13);
  const complexd p2 = phi_kernel(0.5, complexd(0.3, 0.1));
  REQUIRE(std::abs(p2 - complexd(refvals::kPhiHalfAt03_01Re,
                                 refvals::kPhiHalfAt03_01Im)) <= 1e-13);
  REQUIRE(std::abs(phi_kernel_at_one(0.25) -
                   M_PI / std::sin(M_PI * 0.25)) <= 1e-15);
}

TEST_CASE("kernel profile argument validation") {
  REQUIRE_THROWS_AS(phi_kernel(0.0, complexd(0.5, 0.0)), std::domain_error);
  REQUIRE_THROWS_AS(phi_kernel(1.0, complexd(0.5, 0.0)), std::domain_error);
  REQUIRE_THROWS_AS(phi_kernel(0.5, complexd(1.0, 0.0)), std::domain_error);
  REQUIRE_THROWS_AS(phi_kernel(0.5, complexd(1.5, 0.0)), std::domain_error);
  REQUIRE_THROWS_AS(phi_kernel_at_one(1.0), std::domain_error);
}

TEST_CASE("operator image of the peaked kernel factorizes") {
  // integral against the flat weight of (1-t)^{-a}/(1-tz) equals
  // Phi_a(z) (1-z)^{-a}
  for (double alpha : {0.25, 0.5}) {
    const auto f = AnalyticFunction::rational_kernel(1.0, alpha);
    for (complexd z : {complexd(0.3, 0.1), complexd(-0.7, 0.0)}) {
      const complexd lhs = imu_apply(f, lebesgue_measure(), z);
      const complexd rhs = phi_kernel(alpha, z) * std::pow(1.0 - z, -alpha);
      REQUIRE(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("coefficient extraction inverts evaluation") {
  const auto g = [](complexd z) { return 1.0 / (1.0 - 0.5 * z); };
  const auto coeffs = taylor_coefficients(g, 20);
  for (int n = 0; n <= 20; ++n)
    REQUIRE(std::abs(coeffs[n] - std::pow(0.5, n)) <= 1e-13);
  REQUIRE_THROWS_AS(taylor_coefficients(g, -1), std::domain_error);
}

TEST_CASE("partial-sum bound of the constant function is unity") {
  const auto b =
      partial_sum_bound_check(PowerSeries({1.0}), TentParams{4.0, 4.0}, 64);
  REQUIRE(std::abs(b.sup - 1.0) <= 1e-15);
  REQUIRE(std::abs(b.tent_norm - 1.0) <= 1e-9);
  REQUIRE(std::abs(b.ratio - 1.0) <= 1e-9);
  REQUIRE_THROWS_AS(
      partial_sum_bound_check(PowerSeries({1.0}), TentParams{2.0, 2.0}, 16),
      std::domain_error);
}
