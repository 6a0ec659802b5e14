#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "reference_values.hpp"
#include "tentops/power_series.hpp"
#include "tentops/quadrature.hpp"
#include "tentops/rng.hpp"
#include "tentops/special_functions.hpp"

using namespace tentops;

namespace {
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}
}  // namespace

TEST_CASE("log_gamma matches reference values") {
  REQUIRE(close_rel(log_gamma(0.5), refvals::kLgammaHalf, 1e-13));
  REQUIRE(close_rel(log_gamma(1.5), refvals::kLgamma15, 1e-12));
  REQUIRE(close_rel(log_gamma(7.7), refvals::kLgamma77, 1e-13));
  REQUIRE(close_rel(log_gamma(12.3), refvals::kLgamma123, 1e-13));
  REQUIRE(close_rel(log_gamma(0.001), refvals::kLgamma0001, 1e-13));
  REQUIRE(close_rel(log_gamma(171.5), refvals::kLgamma1715, 1e-13));
  REQUIRE(close_rel(log_gamma(0.125), refvals::kLgammaEighth, 1e-13));
  REQUIRE(close_rel(log_gamma(13.0 / 24.0), refvals::kLgamma1324, 1e-12));
  REQUIRE(std::abs(log_gamma(1.0)) <= 1e-14);
  REQUIRE(std::abs(log_gamma(2.0)) <= 1e-14);
}

TEST_CASE("beta_fn matches reference values") {
  REQUIRE(close_rel(beta_fn(0.25, 0.5), refvals::kBetaQuarterHalf, 1e-13));
  REQUIRE(close_rel(beta_fn(0.125, 0.625), refvals::kBetaEighth58, 1e-13));
  REQUIRE(close_rel(beta_fn(0.125, 13.0 / 24.0), refvals::kBetaEighth1324,
                    1e-13));
  REQUIRE(close_rel(beta_fn(1.0 / 3.0, 13.0 / 24.0), refvals::kBetaThird1324,
                    1e-13));
}

TEST_CASE("beta reflection: B(s, 1-s) = pi / sin(pi s)") {
  for (double s : {0.5, 0.375, 11.0 / 24.0, 0.2, 0.9}) {
    const double lhs = beta_fn(s, 1.0 - s);
    const double rhs = std::numbers::pi / std::sin(std::numbers::pi * s);
    REQUIRE(close_rel(lhs, rhs, 1e-12));
  }
  REQUIRE(close(beta_fn(0.5, 0.5), std::numbers::pi, 1e-13));
}

TEST_CASE("tanh_sinh integrates endpoint singularities") {
  const auto arcsine = tanh_sinh<double>([](double t, double omt) {
    return 1.0 / std::sqrt(t * omt);
  });
  REQUIRE(close(arcsine.value, std::numbers::pi, 1e-10));

  const auto loge = tanh_sinh<double>(
      [](double, double omt) { return -std::log(omt); });
  REQUIRE(close(loge.value, 1.0, 1e-12));

  const auto flat = tanh_sinh<double>([](double, double) { return 1.0; });
  REQUIRE(close(flat.value, 1.0, 1e-13));
}

TEST_CASE("tanh_sinh flags a non-integrable integrand") {
  REQUIRE_THROWS_AS(tanh_sinh<double>([](double, double omt) {
                      return 1.0 / omt;
                    }),
                    QuadratureError);
}

TEST_CASE("tanh_sinh handles complex integrands") {
  // int_0^1 (t + i t^2) dt = 1/2 + i/3
  const auto r = tanh_sinh<complexd>([](double t, double) {
    return complexd(t, t * t);
  });
  REQUIRE(close(r.value.real(), 0.5, 1e-12));
  REQUIRE(close(r.value.imag(), 1.0 / 3.0, 1e-12));
}

TEST_CASE("gauss_kronrod resolves oscillation") {
  const auto r = gauss_kronrod<double>(
      [](double t) { return std::cos(50.0 * t); }, 0.0, 1.0);
  REQUIRE(close(r.value, std::sin(50.0) / 50.0, 1e-12));
  const auto zero_len = gauss_kronrod<double>(
      [](double t) { return t; }, 1.0, 1.0);
  REQUIRE(zero_len.value == 0.0);
}

TEST_CASE("integrate_01 dispatches on the endpoint mode") {
  QuadratureConfig plain;
  plain.endpoint = QuadratureConfig::Endpoint::Plain;
  const auto a = integrate_01<double>(
      [](double t, double) { return t * t; }, plain);
  REQUIRE(close(a.value, 1.0 / 3.0, 1e-12));
  const auto b = integrate_01<double>(
      [](double t, double omt) { return 1.0 / std::sqrt(t * omt); });
  REQUIRE(close(b.value, std::numbers::pi, 1e-10));
}

TEST_CASE("KahanSum keeps small terms against a large background") {
  detail::KahanSum<double> acc;
  acc.add(1.0);
  for (int i = 0; i < 1000000; ++i) acc.add(1e-16);
  REQUIRE(close(acc.sum, 1.0 + 1e-10, 1e-14));
}

TEST_CASE("PowerSeries evaluates and bounds its tail") {
  PowerSeries geo({1.0, 0.5, 0.25, 0.125}, PowerSeries::DecayModel{0.5});
  const complexd z(0.4, 0.1);
  const complexd direct = 1.0 + 0.5 * z + 0.25 * z * z + 0.125 * z * z * z;
  REQUIRE(std::abs(series_eval(geo, z) - direct) <= 1e-15);

  const auto tail = geo.tail_bound(0.5);
  REQUIRE(tail.has_value());
  REQUIRE(*tail > 0.0);
  REQUIRE(*tail >= *geo.tail_bound(0.4));

  PowerSeries bare({1.0, 1.0});
  REQUIRE(!bare.tail_bound(0.5).has_value());
}

TEST_CASE("series_eval rejects the closed disc boundary") {
  PowerSeries f({1.0, 2.0});
  REQUIRE_THROWS_AS(series_eval(f, complexd(1.0, 0.0)), std::domain_error);
  REQUIRE_THROWS_AS(series_eval(f, complexd(0.8, 0.7)), std::domain_error);
}

TEST_CASE("PowerSeries validates its decay model") {
  REQUIRE_THROWS_AS(PowerSeries({1.0}, PowerSeries::DecayModel{1.5}), std::domain_error);
  REQUIRE_THROWS_AS(PowerSeries({1.0}, PowerSeries::DecayModel{0.0}), std::domain_error);
}

TEST_CASE("Rng is deterministic and respects bounds") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = c.next_double(-2.0, 3.0);
    REQUIRE(v >= -2.0);
    REQUIRE(v < 3.0);
  }
}
