#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fockmeter/errors.hpp"
#include "fockmeter/reference.hpp"

using namespace fockmeter;
using namespace fockmeter::reference;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed-form inputs validate their domain") {
  ClosedFormInputs in;
  in.n = 0;
  in.transmissions = {};
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in.n = 2;
  in.transmissions = {0.5};
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in.transmissions = {0.5, 1.1};
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in.transmissions = {0.5, 1.0};
  CHECK_NOTHROW(in.validate());
}

TEST_CASE("lossless closed forms") {
  ClosedFormInputs in;
  in.n = 3;
  in.transmissions = {1.0, 1.0, 1.0};

  SECTION("delta phi is 1/n for every phi") {
    for (double phi : {0.0, 0.3, kPi / 3.0, 2.0, 5.9}) {
      in.phi = phi;
      CHECK(cf_delta_phi(in) == Approx(1.0 / 3.0).margin(1e-15));
    }
  }

  SECTION("variance vanishes at a fringe extremum") {
    in.n = 1;
    in.transmissions = {1.0};
    in.zeta0 = 0.0;
    in.phi = 0.0;
    CHECK(cf_ndiff_var(in) == Approx(0.0).margin(1e-15));
    CHECK(cf_ndiff_mean(in) == Approx(1.0));
  }
}

TEST_CASE("lossy closed forms at the optimum") {
  ClosedFormInputs in;
  in.n = 2;
  in.transmissions = {0.5, 1.0};
  in.zeta0 = 0.0;
  in.phi = kPi / 4.0;  // n phi - zeta0 = pi/2
  CHECK(cf_delta_phi(in) == Approx(1.0).margin(1e-12));
  CHECK(cf_delta_phi_min(in) == Approx(1.0).margin(1e-15));
  CHECK(cf_visibility(in) == Approx(0.5));
  CHECK(cf_detection(in, OutputPort::C) == Approx(0.5).margin(1e-12));
  CHECK(cf_detection(in, OutputPort::D) == Approx(0.5).margin(1e-12));
}

TEST_CASE("divergence and zero-visibility signals") {
  ClosedFormInputs in;
  in.n = 2;
  in.transmissions = {0.5, 0.9};
  in.zeta0 = 0.0;
  in.phi = 0.0;  // sin(n phi - zeta0) = 0 with V < 1
  CHECK_THROWS_AS(cf_delta_phi(in), DivergentPhaseUncertainty);

  in.transmissions = {0.0, 0.9};
  CHECK_THROWS_AS(cf_delta_phi(in), ZeroVisibilityError);
  CHECK_THROWS_AS(cf_delta_phi_min(in), ZeroVisibilityError);
}

TEST_CASE("delta phi dominates its minimum wherever defined") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> t_dist(0.1, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ClosedFormInputs in;
    in.n = 1 + static_cast<int>(rng() % 6);
    in.zeta0 = angle(rng);
    in.phi = angle(rng);
    in.transmissions.resize(static_cast<std::size_t>(in.n));
    for (auto& t : in.transmissions) t = t_dist(rng);
    try {
      CHECK(cf_delta_phi(in) >= cf_delta_phi_min(in) - 1e-12);
    } catch (const DivergentPhaseUncertainty&) {
      // a diverging point trivially dominates the minimum
    }
  }
}
