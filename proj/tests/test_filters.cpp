#include <cmath>
#include <random>

#include <doctest.h>

#include "qzeno/filters.hpp"

using namespace qzeno;

namespace {

constexpr double pi = 3.14159265358979323846;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// midpoint-rule evaluation of the defining double integrals; independent of
// the quadrature engine
DPair d_pair_brute(double om, double tau, const SystemParams& sys, const QubitPrep& prep, int n) {
    const double h = tau / n;
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) * h;
        const OverlapAmplitudes rt = overlap_amplitudes(t, prep, sys);
        const int m = i + 1;
        const double hp = t / m;
        for (int j = 0; j < m; ++j) {
            const double tp = (j + 0.5) * hp;
            const OverlapAmplitudes rd = overlap_amplitudes(t - tp, prep, sys);
            d1 += std::cos(om * tp) * (rd.r1 * rt.r1 + rd.r2 * rt.r2) * hp * h;
            d2 += std::sin(om * tp) * (rd.r1 * rt.r2 - rt.r1 * rd.r2) * hp * h;
        }
    }
    return {d1, d2};
}

} // namespace

TEST_CASE("precession coefficients") {
    const SystemParams sys(1.3, 0.7);
    const PrecessionCoeffs at0 = precession_coeffs(0.0, sys);
    CHECK(at0.ax == 0.0);
    CHECK(at0.ay == 0.0);
    CHECK(at0.az == 1.0);

    const PrecessionCoeffs nodelta = precession_coeffs(2.31, SystemParams(1.7, 0.0));
    CHECK(nodelta.ax == 0.0);
    CHECK(nodelta.ay == 0.0);
    CHECK(nodelta.az == 1.0);

    const PrecessionCoeffs quarter = precession_coeffs(0.5 * pi, SystemParams(0.0, 1.0));
    CHECK(quarter.ax == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(quarter.ay == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quarter.az == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    CHECK(precession_coeffs(5.0, SystemParams(0.0, 0.0)).az == 1.0);

    // unit norm over four periods, randomized parameters
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.05, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams s(dist(rng), dist(rng));
        for (int i = 0; i <= 40; ++i) {
            const double t = 4.0 * pi / s.omega * i / 40.0;
            const PrecessionCoeffs a = precession_coeffs(t, s);
            CHECK(a.ax * a.ax + a.ay * a.ay + a.az * a.az == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    // periodic with period 2 pi / Omega
    const SystemParams ps(1.2, 2.1);
    const double period = 2.0 * pi / ps.omega;
    for (double t : {0.3, 1.1, 2.9}) {
        const PrecessionCoeffs a = precession_coeffs(t, ps);
        const PrecessionCoeffs b = precession_coeffs(t + period, ps);
        CHECK(a.ax == doctest::Approx(b.ax).epsilon(1e-10));
        CHECK(a.ay == doctest::Approx(b.ay).epsilon(1e-10));
        CHECK(a.az == doctest::Approx(b.az).epsilon(1e-10));
    }
}

TEST_CASE("rotated coefficients") {
    const SystemParams sys(2.0, 1.0);
    const PrecessionCoeffs at0 = rotated_coeffs(0.0, sys);
    CHECK(at0.ax == 1.0);
    CHECK(at0.ay == 0.0);
    CHECK(at0.az == 0.0);

    // b_x = a_z and b_y = -a_y on a time grid
    for (int i = 0; i <= 60; ++i) {
        const double t = 8.0 * i / 60.0;
        const PrecessionCoeffs a = precession_coeffs(t, sys);
        const PrecessionCoeffs b = rotated_coeffs(t, sys);
        CHECK(b.ax == doctest::Approx(a.az).epsilon(1e-14));
        CHECK(b.ay == doctest::Approx(-a.ay).scale(1.0).epsilon(1e-14));
        CHECK(b.ax * b.ax + b.ay * b.ay + b.az * b.az == doctest::Approx(1.0).epsilon(1e-12));
    }

    // eps = 0, delta = 1: (cos t, -sin t, 0)
    const PrecessionCoeffs simple = rotated_coeffs(0.8, SystemParams(0.0, 1.0));
    CHECK(simple.ax == doctest::Approx(std::cos(0.8)).epsilon(1e-15));
    CHECK(simple.ay == doctest::Approx(-std::sin(0.8)).epsilon(1e-15));
    CHECK(simple.az == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("overlap amplitudes") {
    const SystemParams sys(1.1, 1.9);
    for (double t : {0.0, 0.4, 1.7, 3.0}) {
        const PrecessionCoeffs a = precession_coeffs(t, sys);
        const OverlapAmplitudes up_x = overlap_amplitudes(t, QubitPrep{0.5 * pi, 0.0}, sys);
        CHECK(up_x.r1 == doctest::Approx(a.az).epsilon(1e-14));
        CHECK(up_x.r2 == doctest::Approx(a.ay).epsilon(1e-14));
        const OverlapAmplitudes up_z = overlap_amplitudes(t, QubitPrep{0.0, 0.0}, sys);
        CHECK(up_z.r1 == doctest::Approx(-a.ax).scale(1.0).epsilon(1e-14));
        CHECK(up_z.r2 == doctest::Approx(a.ay).epsilon(1e-14));
    }
    const OverlapAmplitudes t0 = overlap_amplitudes(0.0, QubitPrep{1.1, 2.2}, sys);
    CHECK(t0.r1 == doctest::Approx(std::sin(1.1)).epsilon(1e-15));
    CHECK(t0.r2 == 0.0);

    // the matrix element never exceeds unit modulus
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ang(0.0, pi);
    std::uniform_real_distribution<double> tt(0.0, 12.0);
    for (int trial = 0; trial < 100; ++trial) {
        const QubitPrep prep{ang(rng), 2.0 * ang(rng)};
        const OverlapAmplitudes r = overlap_amplitudes(tt(rng), prep, sys);
        CHECK(r.r1 * r.r1 + r.r2 * r.r2 <= 1.0 + 1e-12);
    }
}

TEST_CASE("population-decay filter") {
    CHECK(filter_population_decay(1.5, 2.0, 1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(filter_population_decay(1.5 + pi, 2.0, 1.5) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-15)); // zero of sinc at (eps-w)tau/2 = -pi
    CHECK(filter_population_decay(0.0, 2.0, 1.0) ==
          doctest::Approx(2.0 * std::sin(1.0) * std::sin(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(filter_population_decay(1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("pure-dephasing filter") {
    CHECK(filter_pure_dephasing(0.0, 2.0, Temperature::zero()) == doctest::Approx(2.0));
    CHECK(filter_pure_dephasing(pi, 2.0, Temperature::zero()) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-15)); // w = 2 pi / tau
    CHECK(filter_pure_dephasing(1.0, 2.0, Temperature::zero()) ==
          doctest::Approx(1.0 - std::cos(2.0)).epsilon(1e-14));
    CHECK(std::isinf(filter_pure_dephasing(0.0, 2.0, Temperature::finite(1.0))));
    CHECK(filter_pure_dephasing(1.0, 2.0, Temperature::finite(2.0)) ==
          doctest::Approx((1.0 - std::cos(2.0)) * 1.3130352854993312).epsilon(1e-12));
    CHECK_THROWS_AS(filter_pure_dephasing(1.0, -1.0, Temperature::zero()), std::domain_error);
}

TEST_CASE("closed-form D pair") {
    const SystemParams sys(2.0, 1.0);

    SUBCASE("delta = 0 reduces to the dephasing kernel") {
        const SystemParams deph(1.5, 0.0);
        const DPair d = d_pair_closed(0.9, 1.3, deph, ClosedFormBranch::theta_half_pi);
        CHECK(d.d1 == doctest::Approx((1.0 - std::cos(0.9 * 1.3)) / (0.9 * 0.9)).epsilon(1e-14));
        CHECK(d.d2 == 0.0);
        const DPair dz = d_pair_closed(0.9, 1.3, deph, ClosedFormBranch::theta_zero);
        CHECK(dz.d1 == 0.0);
        CHECK(dz.d2 == 0.0);
    }

    SUBCASE("tau = 0 vanishes") {
        const DPair d = d_pair_closed(1.0, 0.0, sys, ClosedFormBranch::theta_half_pi);
        CHECK(d.d1 == 0.0);
        CHECK(d.d2 == 0.0);
    }

    SUBCASE("matches the numeric path") {
        const DPair c = d_pair_closed(1.0, 1.0, sys, ClosedFormBranch::theta_half_pi);
        const DPair n = d_pair_numeric(1.0, 1.0, sys, QubitPrep{0.5 * pi, 0.0});
        CHECK(c.d1 == doctest::Approx(n.d1).epsilon(1e-8));
        CHECK(c.d2 == doctest::Approx(n.d2).epsilon(1e-8));
    }

    SUBCASE("guard band raises") {
        CHECK_THROWS_AS(d_pair_closed(sys.omega + 1e-4, 1.0, sys, ClosedFormBranch::theta_half_pi),
                        SingularBandError);
        CHECK_THROWS_AS(d_pair_closed(5e-4, 1.0, sys, ClosedFormBranch::theta_zero),
                        SingularBandError);
        CHECK(singular_band_halfwidth(sys) == doctest::Approx(1e-3 * sys.omega));
        CHECK(singular_band_halfwidth(SystemParams(0.1, 0.2)) == doctest::Approx(1e-3));
    }
}

TEST_CASE("numeric D pair") {
    SUBCASE("dephasing limit") {
        const SystemParams deph(2.0, 0.0);
        const DPair d = d_pair_numeric(1.1, 0.9, deph, QubitPrep{0.5 * pi, 0.0});
        CHECK(d.d1 == doctest::Approx((1.0 - std::cos(1.1 * 0.9)) / (1.1 * 1.1)).epsilon(1e-9));
        CHECK(d.d2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    }

    SUBCASE("tau = 0") {
        const DPair d = d_pair_numeric(1.0, 0.0, SystemParams(1.0, 1.0), QubitPrep{0.3, 0.4});
        CHECK(d.d1 == 0.0);
        CHECK(d.d2 == 0.0);
    }

    SUBCASE("arbitrary angles vs brute force") {
        const SystemParams sys(1.0, 1.0);
        const QubitPrep prep{0.25 * pi, pi / 3.0};
        const DPair fast = d_pair_numeric(2.0, 1.0, sys, prep);
        const DPair slow = d_pair_brute(2.0, 1.0, sys, prep, 4000);
        CHECK(std::fabs(fast.d1 - slow.d1) < 1e-6);
        CHECK(std::fabs(fast.d2 - slow.d2) < 1e-6);
    }

    SUBCASE("d1 even, d2 odd under omega sign flip") {
        const SystemParams sys(1.4, 0.8);
        const QubitPrep prep{0.7, 1.2};
        const DPair plus = d_pair_numeric(1.7, 1.1, sys, prep);
        const DPair minus = d_pair_numeric(-1.7, 1.1, sys, prep);
        CHECK(plus.d1 == doctest::Approx(minus.d1).epsilon(1e-9));
        CHECK(plus.d2 == doctest::Approx(-minus.d2).scale(1.0).epsilon(1e-9));
    }

    SUBCASE("d1 dominates |d2|") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> angle(0.0, pi);
        std::uniform_real_distribution<double> param(0.0, 3.0);
        std::uniform_real_distribution<double> freq(0.05, 6.0);
        for (int trial = 0; trial < 12; ++trial) {
            const SystemParams sys(param(rng), param(rng));
            const QubitPrep prep{angle(rng), 2.0 * angle(rng)};
            const DPair d = d_pair_numeric(freq(rng), 0.4 + param(rng) / 3.0, sys, prep);
            CHECK(d.d1 >= std::fabs(d.d2) - 1e-9);
        }
    }
}

TEST_CASE("general filter reductions") {
    SUBCASE("delta = 0 equals the pure-dephasing filter") {
        const SystemParams deph(2.0, 0.0);
        for (const Temperature& T : {Temperature::zero(), Temperature::finite(2.0)}) {
            for (double w : {0.2, 0.7, 1.9, 4.4, 7.6}) {
                CHECK(filter_general(w, 1.5, deph, QubitPrep{0.5 * pi, 0.0}, T) ==
                      doctest::Approx(filter_pure_dephasing(w, 1.5, T)).epsilon(1e-10));
            }
        }
        CHECK(filter_general(0.0, 1.5, deph, QubitPrep{0.5 * pi, 0.0}, Temperature::zero()) ==
              doctest::Approx(1.5).epsilon(1e-12));
    }

    SUBCASE("eps = 0 equals the population-decay filter at zero temperature") {
        const SystemParams pop(0.0, 1.0);
        for (double w = 0.0; w <= 8.0; w += 0.37) {
            const double expected = 2.0 * sinc(0.5 * (1.0 - w) * 2.0) * sinc(0.5 * (1.0 - w) * 2.0);
            CHECK(filter_general(w, 2.0, pop, QubitPrep{0.5 * pi, 0.0}, Temperature::zero()) ==
                  doctest::Approx(expected).scale(1.0).epsilon(1e-8));
        }
        // inside the guard band the numeric path takes over seamlessly
        const double at_res = filter_general(1.0, 2.0, pop, QubitPrep{0.5 * pi, 0.0}, Temperature::zero());
        CHECK(at_res == doctest::Approx(2.0).epsilon(1e-8));
    }

    SUBCASE("matches the amplitude form at zero temperature") {
        const SystemParams sys(2.0, 1.0);
        for (double w : {0.0, 0.4, 1.1, 2.9, 5.5, 8.0}) {
            const double q = filter_general(w, 2.0, sys, QubitPrep{0.5 * pi, 0.0}, Temperature::zero());
            const double oracle = zero_temperature_amplitude_form(w, 2.0, sys, QubitPrep{0.5 * pi, 0.0});
            CHECK(q == doctest::Approx(oracle).scale(1.0).epsilon(1e-8));
        }
    }

    SUBCASE("continuity across the guard band") {
        for (const SystemParams& sys : {SystemParams(2.0, 2.0), SystemParams(1.0, 2.0), SystemParams(2.0, 1.0)}) {
            const double band = singular_band_halfwidth(sys);
            const double edge = sys.omega + 1.01 * band;
            const DPair closed = d_pair_closed(edge, 1.0, sys, ClosedFormBranch::theta_half_pi);
            const DPair numeric_edge = d_pair_numeric(edge, 1.0, sys, QubitPrep{0.5 * pi, 0.0});
            CHECK(std::fabs(closed.d1 - numeric_edge.d1) < 1e-6);
            CHECK(std::fabs(closed.d2 - numeric_edge.d2) < 1e-6);

            // crossing the band only moves the value by the local modulus of continuity
            const DPair numeric_center = d_pair_numeric(sys.omega, 1.0, sys, QubitPrep{0.5 * pi, 0.0});
            const DPair closed_far = d_pair_closed(sys.omega + 4.0 * band, 1.0, sys, ClosedFormBranch::theta_half_pi);
            const double slope1 = std::fabs(closed_far.d1 - closed.d1) / (3.0 * band);
            const double slope2 = std::fabs(closed_far.d2 - closed.d2) / (3.0 * band);
            CHECK(std::fabs(numeric_center.d1 - closed.d1) <= 3.0 * slope1 * band + 1e-6);
            CHECK(std::fabs(numeric_center.d2 - closed.d2) <= 3.0 * slope2 * band + 1e-6);
        }
    }

    SUBCASE("high-frequency falloff") {
        const Temperature T0 = Temperature::zero();
        CHECK(filter_population_decay(1000.0, 1.0, 3.0) < 1e-4);
        CHECK(filter_pure_dephasing(1000.0, 1.0, T0) < 1e-4);
        CHECK(filter_general(1000.0, 1.0, SystemParams(2.0, 2.0), QubitPrep{0.5 * pi, 0.0}, T0) < 1e-4);
        CHECK(filter_general(1000.0, 1.0, SystemParams(2.0, 1.0), QubitPrep{0.0, 0.0}, T0) < 1e-4);
        CHECK(filter_large_spin(1000.0, 1.0, SystemParams(0.0, 3.0), StatePrep::large_spin_jz(2), T0) < 1e-4);
    }

    SUBCASE("argument guards") {
        CHECK_THROWS_AS(filter_general(1.0, 0.0, SystemParams(1.0, 1.0), QubitPrep{0.0, 0.0},
                                       Temperature::zero()),
                        std::domain_error);
        CHECK_THROWS_AS(filter_general(-1.0, 1.0, SystemParams(1.0, 1.0), QubitPrep{0.0, 0.0},
                                       Temperature::zero()),
                        std::domain_error);
    }
}

TEST_CASE("amplitude form") {
    SUBCASE("dephasing case") {
        const SystemParams deph(1.2, 0.0);
        for (double w : {0.3, 1.0, 2.6}) {
            CHECK(zero_temperature_amplitude_form(w, 1.4, deph, QubitPrep{0.5 * pi, 0.0}) ==
                  doctest::Approx(2.0 / 1.4 * (1.0 - std::cos(w * 1.4)) / (w * w)).epsilon(1e-9));
        }
    }
    SUBCASE("population case") {
        const SystemParams pop(0.0, 1.0);
        for (double w : {0.3, 1.0, 2.6}) {
            const double x = 0.5 * (1.0 - w) * 1.4;
            CHECK(zero_temperature_amplitude_form(w, 1.4, pop, QubitPrep{0.5 * pi, 0.0}) ==
                  doctest::Approx(1.4 * sinc(x) * sinc(x)).epsilon(1e-9));
        }
    }
    SUBCASE("cross-check against the D pair") {
        const SystemParams sys(2.0, 2.0);
        const DPair d = d_pair_numeric(1.0, 1.0, sys, QubitPrep{0.5 * pi, 0.0});
        CHECK(zero_temperature_amplitude_form(1.0, 1.0, sys, QubitPrep{0.5 * pi, 0.0}) ==
              doctest::Approx(2.0 * (d.d1 + d.d2)).epsilon(1e-8));
    }
}

TEST_CASE("large-spin filter") {
    const SystemParams sys(1.0, 2.0);
    const Temperature T0 = Temperature::zero();

    const double single = filter_general(1.3, 0.8, sys, QubitPrep{0.0, 0.0}, T0);
    CHECK(filter_large_spin(1.3, 0.8, sys, StatePrep::large_spin_jz(1), T0) ==
          doctest::Approx(single).epsilon(1e-14));
    CHECK(filter_large_spin(1.3, 0.8, sys, StatePrep::large_spin_jz(20), T0) ==
          doctest::Approx(20.0 * filter_large_spin(1.3, 0.8, sys, StatePrep::large_spin_jz(1), T0))
              .epsilon(1e-15));
    CHECK(filter_large_spin(1.3, 0.8, sys, StatePrep::large_spin_jx(2), T0) ==
          doctest::Approx(2.0 * filter_general(1.3, 0.8, sys, QubitPrep{0.5 * pi, 0.0}, T0))
              .epsilon(1e-14));
}
