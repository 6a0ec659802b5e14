#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "tentops/rho.hpp"
#include "tentops/tent_params.hpp"

using namespace tentops;

TEST_CASE("radial norm of a constant is its modulus") {
  TentParams tp{4.0, 8.0};
  const auto e = rho_pq(AnalyticFunction::constant(2.5), tp);
  REQUIRE(e.converged());
  REQUIRE(std::abs(e.value() - 2.5) <= 1e-12);
}

TEST_CASE("radial norm of monomials matches the closed form") {
  {
    TentParams tp{4.0, 4.0};
    const auto e = rho_pq(AnalyticFunction::monomial(3), tp);
    REQUIRE(e.converged());
    REQUIRE(std::abs(e.value() - std::pow(1.0 / 13.0, 0.25)) <= 1e-12);
  }
  {
    TentParams tp{3.0, 6.0};
    const auto e = rho_pq(AnalyticFunction::monomial(1), tp);
    REQUIRE(e.converged());
    REQUIRE(std::abs(e.value() - std::pow(0.25, 1.0 / 3.0)) <= 1e-12);
  }
}

TEST_CASE("radial norm is positively homogeneous") {
  TentParams tp{4.0, 4.0};
  const auto f = AnalyticFunction::rational_kernel(0.8, 1.0);
  const auto e1 = rho_pq(f, tp);
  const auto e2 = rho_pq(AnalyticFunction::scaled(f, 2.5), tp);
  REQUIRE(e1.converged());
  REQUIRE(e2.converged());
  REQUIRE(std::abs(e2.value() - 2.5 * e1.value()) <= 1e-12 * e2.value());
}

TEST_CASE("boundary kernel past the summability edge diverges") {
  TentParams tp{4.0, 4.0};
  const auto e = rho_pq(AnalyticFunction::rational_kernel(1.0, 1.0), tp);
  REQUIRE(e.diverged());
  REQUIRE(e.value_string() == "diverges");
}

TEST_CASE("log-damped kernel converges on the critical line") {
  {
    TentParams tp{3.0, 1.5};
    REQUIRE(tp.critical());
    const auto e = rho_pq(AnalyticFunction::log_test(), tp);
    REQUIRE(e.converged());
    REQUIRE(e.value() > 1.0);
    REQUIRE(e.value() < 1.4);
  }
  {
    TentParams tp{4.0, 4.0 / 3.0};
    const auto e = rho_pq(AnalyticFunction::log_test(), tp);
    REQUIRE(e.converged());
    REQUIRE(std::abs(e.value() - 1.2837) <= 0.02);
  }
}

TEST_CASE("undamped kernel diverges on the critical line") {
  TentParams tp{4.0, 4.0 / 3.0};
  const auto e = rho_pq(AnalyticFunction::cauchy_kernel(), tp);
  REQUIRE(e.diverged());
}

TEST_CASE("starting grid can be supplied explicitly") {
  TentParams tp{4.0, 4.0};
  const auto f = AnalyticFunction::monomial(2);
  RhoOptions opt;
  const auto a = rho_pq(f, tp, {}, opt);
  const auto b = rho_pq(f, tp, {}, opt.ladder.grid_for(f, 0), opt);
  REQUIRE(a.value() == b.value());
  REQUIRE(a.verdict == b.verdict);
}

TEST_CASE("circle max hits the kernel singularity direction exactly") {
  const auto f = AnalyticFunction::rational_kernel(1.0, 0.5);
  REQUIRE(std::abs(circle_max(f, 0.99, 0.01) - 10.0) <= 1e-12);
  const auto m = AnalyticFunction::monomial(4);
  REQUIRE(std::abs(circle_max(m, 0.5, 0.5) - 0.0625) <= 1e-14);
}

TEST_CASE("damped growth profile follows the closed form for monomials") {
  TentParams tp{4.0, 4.0};
  const auto prof =
      growth_profile(AnalyticFunction::monomial(2), tp, {0.5, 0.9});
  REQUIRE(prof.size() == 2);
  for (const auto& [r, v] : prof) {
    const double expect = r * r * std::pow(1.0 - r, tp.s());
    REQUIRE(std::abs(v - expect) <= 1e-13);
  }
}

TEST_CASE("area norm of monomials matches the closed form") {
  const double v = bergman_pp_norm(AnalyticFunction::monomial(2), 4.0);
  REQUIRE(std::abs(v - std::pow(0.2, 0.25)) <= 1e-12);
  const double c = bergman_pp_norm(AnalyticFunction::constant(3.0), 2.0);
  REQUIRE(std::abs(c - 3.0) <= 1e-10);
}

TEST_CASE("norm estimate bookkeeping") {
  const auto e = NormEstimate::exact(2.0);
  REQUIRE(e.converged());
  REQUIRE(e.value() == 2.0);
  NormEstimate empty;
  REQUIRE_THROWS_AS(empty.value(), std::logic_error);
}

TEST_CASE("tent parameter validation and regimes") {
  REQUIRE_THROWS_AS((TentParams{0.0, 4.0}), std::domain_error);
  REQUIRE_THROWS_AS((TentParams{4.0, -1.0}), std::domain_error);
  TentParams strict{4.0, 4.0};
  REQUIRE(strict.strict());
  REQUIRE(!strict.critical());
  REQUIRE(std::abs(strict.s() - 0.5) <= 1e-16);
  REQUIRE(std::abs(strict.pprime() - 4.0 / 3.0) <= 1e-15);
  TentParams crit{2.0, 2.0};
  REQUIRE(crit.critical());
  REQUIRE(!crit.strict());
}
