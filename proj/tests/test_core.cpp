#include <cmath>
#include <random>

#include <doctest.h>

#include "qzeno/core.hpp"
#include "qzeno/quad.hpp"

using namespace qzeno;

TEST_CASE("rabi_frequency") {
    CHECK(rabi_frequency(SystemParams(3.0, 4.0)) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(rabi_frequency(SystemParams(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rabi_frequency(SystemParams(2.0, 2.0)) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
    CHECK(rabi_frequency(SystemParams(0.0, 0.0)) == 0.0);

    // invariant under swap and sign flips
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double e = dist(rng), d = dist(rng);
        const double base = rabi_frequency(SystemParams(e, d));
        CHECK(rabi_frequency(SystemParams(d, e)) == doctest::Approx(base).epsilon(1e-15));
        CHECK(rabi_frequency(SystemParams(-e, d)) == doctest::Approx(base).epsilon(1e-15));
        CHECK(rabi_frequency(SystemParams(e, -d)) == doctest::Approx(base).epsilon(1e-15));
    }
}

TEST_CASE("system params invariant") {
    const SystemParams sys(1.7, -0.3);
    CHECK(sys.omega * sys.omega ==
          doctest::Approx(sys.epsilon * sys.epsilon + sys.delta * sys.delta).epsilon(1e-15));
    CHECK_THROWS_AS(SystemParams(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("thermal_factor") {
    CHECK(thermal_factor(0.37, Temperature::zero()) == 1.0);
    CHECK(thermal_factor(123.0, Temperature::zero()) == 1.0);
    CHECK(thermal_factor(1.0, Temperature::finite(2.0)) ==
          doctest::Approx(1.3130352854993312).epsilon(1e-12)); // coth(1)
    CHECK(thermal_factor(1e-6, Temperature::finite(1.0)) == doctest::Approx(2e6).epsilon(1e-6));

    CHECK_THROWS_AS(thermal_factor(0.0, Temperature::zero()), std::domain_error);
    CHECK_THROWS_AS(thermal_factor(-1.0, Temperature::finite(1.0)), std::domain_error);
    CHECK_THROWS_AS(Temperature::finite(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Temperature::finite(-2.0), std::invalid_argument);

    // monotonically decreasing in omega and beta, infimum 1
    double prev = thermal_factor(0.01, Temperature::finite(1.0));
    for (double w = 0.02; w < 20.0; w *= 1.5) {
        const double cur = thermal_factor(w, Temperature::finite(1.0));
        CHECK(cur < prev);
        CHECK(cur >= 1.0);
        prev = cur;
    }
    prev = thermal_factor(1.0, Temperature::finite(0.01));
    for (double b = 0.02; b < 50.0; b *= 1.5) {
        const double cur = thermal_factor(1.0, Temperature::finite(b));
        CHECK(cur < prev);
        CHECK(cur >= 1.0);
        prev = cur;
    }
}

TEST_CASE("spectral_density") {
    const SpectralDensity ohmic(0.01, 1.0, 10.0);
    CHECK(spectral_density(10.0, ohmic) == doctest::Approx(0.1 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(spectral_density(0.0, SpectralDensity(0.01, 0.8, 10.0)) == 0.0);
    CHECK_THROWS_AS(spectral_density(-0.1, ohmic), std::domain_error);

    CHECK_THROWS_AS(SpectralDensity(0.0, 1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity(0.01, -1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity(0.01, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("spectral_density total integral") {
    for (double s : {0.8, 1.0, 1.5, 2.0}) {
        const SpectralDensity bath(0.01, s, 10.0);
        const auto res = quad::integrate_semi_infinite(
            [&](double w) { return spectral_density(w, bath); }, bath.cutoff_wc, 1.0);
        CHECK(res.value == doctest::Approx(bath.total_integral()).epsilon(1e-8));
    }
    // the Ohmic case in closed form: G wc^2 Gamma(2) = 1
    CHECK(SpectralDensity(0.01, 1.0, 10.0).total_integral() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("state preparation validation") {
    CHECK_NOTHROW(StatePrep::qubit(0.0, 0.0));
    CHECK_NOTHROW(StatePrep::qubit(3.14159265358979, 6.28318));
    CHECK_THROWS_AS(StatePrep::qubit(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StatePrep::qubit(3.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StatePrep::qubit(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(StatePrep::qubit(1.0, 6.2832), std::invalid_argument);
    CHECK_THROWS_AS(StatePrep::large_spin_jz(0), std::invalid_argument);
    CHECK_THROWS_AS(StatePrep::large_spin_jx(-3), std::invalid_argument);
    CHECK(StatePrep::large_spin_jz(20).large_spin_prep().j() == doctest::Approx(10.0));
    CHECK(StatePrep::large_spin_jx(1).large_spin_prep().axis == SpinAxis::x);
    CHECK_THROWS_AS(StatePrep::qubit(1.0, 0.0).large_spin_prep(), std::logic_error);
    CHECK_THROWS_AS(StatePrep::large_spin_jz(2).qubit_prep(), std::logic_error);
}

TEST_CASE("measurement protocol") {
    CHECK_NOTHROW(MeasurementProtocol(0.5, 1));
    CHECK_THROWS_AS(MeasurementProtocol(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(MeasurementProtocol(-1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(MeasurementProtocol(1.0, 0), std::invalid_argument);
}
