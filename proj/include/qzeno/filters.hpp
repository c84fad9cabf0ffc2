// filters.hpp — Filter-function families Q(omega, tau): closed forms for the
// two standard state preparations, the generic numeric path for arbitrary
// Bloch angles, and the collective large-spin variants.

#pragma once

#include "qzeno/core.hpp"
#include "qzeno/quad.hpp"

namespace qzeno {

// Coefficients of sigma_x/y/z (or J_x/y/z) in the interaction-picture coupling
// operator at time t; unit norm for all t.
struct PrecessionCoeffs {
    double ax{0.0};
    double ay{0.0};
    double az{1.0};
};

// Real and imaginary parts of the matrix element between the prepared state
// and its orthogonal complement.
struct OverlapAmplitudes {
    double r1{0.0};
    double r2{0.0};
};

// Values of the two double integrals entering the general filter.
struct DPair {
    double d1{0.0};
    double d2{0.0};
};

enum class ClosedFormBranch {
    theta_half_pi, // theta = pi/2, phi = 0
    theta_zero     // theta = 0,    phi = 0
};

// a_x(t), a_y(t), a_z(t); returns (0, 0, 1) exactly when Omega = 0.
PrecessionCoeffs precession_coeffs(double t, const SystemParams& sys);

// Rotated-frame coefficients b_x(t), b_y(t), b_z(t), computed with
// (eps_r, delta_r) = (delta, -eps); b_x(0) = 1.
PrecessionCoeffs rotated_coeffs(double t, const SystemParams& sys);

OverlapAmplitudes overlap_amplitudes(double t, const QubitPrep& prep, const SystemParams& sys);

// Q(w, tau) = tau * sinc^2[(eps - w) tau / 2] with sinc(x) = sin(x)/x.
double filter_population_decay(double omega, double tau, double epsilon);

// Q(w, tau) = (2/tau) coth(beta w / 2) (1 - cos(w tau)) / w^2.
// At w = 0 the analytic limit is returned: tau at zero temperature, +inf for
// finite beta (the thermal factor diverges faster than the kernel vanishes).
double filter_pure_dephasing(double omega, double tau, const Temperature& T);

// Half-width of the guard band around the removable singularities at
// w = Omega and w = 0 of the closed-form D expressions.
double singular_band_halfwidth(const SystemParams& sys) noexcept;

inline quad::QuadConfig d_pair_default_config() {
    quad::QuadConfig cfg;
    cfg.abs_tol = 1e-10;
    return cfg;
}

// Closed-form D1, D2 for the two printed branches. Throws SingularBandError
// inside the guard band; callers route to d_pair_numeric there.
DPair d_pair_closed(double omega, double tau, const SystemParams& sys, ClosedFormBranch branch);

// D1, D2 by nested quadrature of their defining double integrals; valid for
// every (theta, phi).
DPair d_pair_numeric(double omega, double tau, const SystemParams& sys, const QubitPrep& prep,
                     const quad::QuadConfig& cfg = d_pair_default_config());

// Generalized filter Q(w, tau) = (2/tau) { coth(beta w / 2) D1 + D2 }.
// Uses the closed-form D pair when the preparation matches a printed branch
// and w lies outside the guard band, the numeric path otherwise.
double filter_general(double omega, double tau, const SystemParams& sys, const QubitPrep& prep,
                      const Temperature& T, const quad::QuadConfig& cfg = d_pair_default_config());

// Independent zero-temperature oracle: the squared modulus of the one-sided
// overlap transform, (1/tau) | int_0^tau e^{-i w t} [r1(t) + i r2(t)] dt |^2.
double zero_temperature_amplitude_form(double omega, double tau, const SystemParams& sys,
                                       const QubitPrep& prep,
                                       const quad::QuadConfig& cfg = d_pair_default_config());

// Collective filter: 2j times the single-particle filter of the matching
// Bloch preparation (theta = 0 for the J_z-maximal state, theta = pi/2 for
// the J_x-maximal state).
double filter_large_spin(double omega, double tau, const SystemParams& sys, const StatePrep& prep,
                         const Temperature& T, const quad::QuadConfig& cfg = d_pair_default_config());

} // namespace qzeno
