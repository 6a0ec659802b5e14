#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "reference_values.hpp"
#include "tentops/carleson_boxes.hpp"
#include "tentops/sequence_tent.hpp"

using namespace tentops;

TEST_CASE("dyadic box grid enumerates every rotation per level") {
  const auto grid = dyadic_box_grid(3);
  REQUIRE(grid.size() == 15);
  REQUIRE(grid[0].level == 0);
  REQUIRE(grid[0].delta() == 1.0);
  REQUIRE(grid[14].level == 3);
  REQUIRE(std::abs(grid[14].arc() - M_PI / 4.0) <= 1e-15);
  REQUIRE_THROWS_AS(dyadic_box_grid(-1), std::domain_error);
}

TEST_CASE("anchored chain shrinks onto its boundary point") {
  const auto chain = anchored_box_chain(1.0, 4);
  REQUIRE(chain.size() == 5);
  for (const auto& b : chain) {
    REQUIRE(std::abs(0.5 * (b.theta_lo + b.theta_hi) - 1.0) <= 1e-15);
    REQUIRE(std::abs(b.arc() - 2.0 * M_PI * b.delta()) <= 1e-15);
  }
}

TEST_CASE("box averages of constants match the closed form") {
  const auto grid = dyadic_box_grid(3);
  const auto f = AnalyticFunction::constant(2.0);
  for (int idx : {0, 3, 10}) {
    const auto& b = grid[idx];
    const double d = b.delta();
    const double expect = 16.0 * d * (2.0 - d);
    REQUIRE(std::abs(box_average_p(f, 4.0, b) - expect) <= 1e-8);
  }
  // the average is the integral normalized by fractional arc length
  const double frac = grid[3].arc() / (2.0 * M_PI);
  REQUIRE(std::abs(box_integral_p(f, 4.0, grid[3]) -
                   frac * box_average_p(f, 4.0, grid[3])) <= 1e-12);
}

TEST_CASE("box sup norm of a constant is its modulus") {
  const auto e = tent_p_infty_norm(AnalyticFunction::constant(2.0), 4.0,
                                   dyadic_box_grid(3));
  REQUIRE(e.converged());
  REQUIRE(std::abs(e.value() - 2.0) <= 1e-8);
}

TEST_CASE("box sup norm rejects bad arguments") {
  const auto f = AnalyticFunction::constant(1.0);
  REQUIRE_THROWS_AS(tent_p_infty_norm(f, 0.5, dyadic_box_grid(1)),
                    std::domain_error);
  REQUIRE_THROWS_AS(tent_p_infty_norm(f, 4.0, {}), std::domain_error);
}

TEST_CASE("kernel box averages scale with the expected exponent") {
  // average over a size-delta box of |1-z|^{-beta p} grows like
  // delta^{1 - beta p}; consecutive chain levels expose the exponent
  const auto f = AnalyticFunction::rational_kernel(1.0, 0.375);
  const auto chain = anchored_box_chain(0.0, 8);
  const double a7 = box_average_p(f, 4.0, chain[7]);
  const double a8 = box_average_p(f, 4.0, chain[8]);
  REQUIRE(std::abs(std::log2(a8 / a7) - 0.5) <= 0.05);
}

TEST_CASE("cone membership at aperture one half") {
  const complexd xi(1.0, 0.0);
  REQUIRE(cone_contains(xi, complexd(0.6, 0.0)));
  REQUIRE(!cone_contains(xi, complexd(0.0, 0.6)));
  REQUIRE(cone_contains(xi, complexd(0.3, 0.2)));  // inside the core disc
  REQUIRE(!cone_contains(xi, xi));                 // boundary point itself
}

TEST_CASE("aperture fractions match the frozen geometry") {
  REQUIRE(cone_aperture_fraction(complexd(0.1, 0.0)) == 1.0);
  REQUIRE(std::abs(cone_aperture_fraction(complexd(0.6, 0.0)) -
                   refvals::kAperture06) <= 1e-12);
  REQUIRE(std::abs(cone_aperture_fraction(complexd(0.3, 0.65)) -
                   refvals::kAperture03_065) <= 1e-12);
}

TEST_CASE("single-point sequence norms reduce to aperture geometry") {
  TentParams tp{4.0, 4.0};
  const std::vector<complexd> lat{complexd(0.6, 0.0)};
  const std::vector<complexd> val{complexd(1.0, 0.0)};
  const double npq = sequence_tent_norm(lat, val, tp, SequenceMode::pq);
  REQUIRE(std::abs(npq - std::pow(refvals::kAperture06, 0.25)) <= 5e-4);
  // with one point the cone sum and the cone max coincide
  REQUIRE(sequence_tent_norm(lat, val, tp, SequenceMode::infty_q) == npq);
  const double npi = sequence_tent_norm(lat, val, tp, SequenceMode::p_infty);
  REQUIRE(std::abs(npi - std::pow(1.28, 0.25)) <= 1e-12);
}

TEST_CASE("sequence norm argument validation") {
  TentParams tp{4.0, 4.0};
  const std::vector<complexd> one{complexd(0.5, 0.0)};
  REQUIRE_THROWS_AS(sequence_tent_norm(one, {}, tp, SequenceMode::pq),
                    std::domain_error);
  const std::vector<complexd> bad{complexd(1.0, 0.0)};
  REQUIRE_THROWS_AS(sequence_tent_norm(bad, one, tp, SequenceMode::pq),
                    std::domain_error);
  REQUIRE(sequence_tent_norm({}, {}, tp, SequenceMode::pq) == 0.0);
}
