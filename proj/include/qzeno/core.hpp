// core.hpp — Domain types and elementary scalar functions shared across the library.
//
// All quantities are dimensionless with hbar = 1. Parameters are validated at
// construction; the scalar functions assume valid inputs.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace qzeno {

// ---------------------------- error taxonomy --------------------------------

// A requested tolerance was not reached; carries the best available estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, double value, double error_estimate)
        : std::runtime_error(msg), value_(value), error_estimate_(error_estimate) {}
    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double value_;
    double error_estimate_;
};

// An integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form evaluation was requested inside the removable-singularity guard
// band; callers should route to the numeric path instead.
class SingularBandError : public std::domain_error {
    using std::domain_error::domain_error;
};

// The truncated Hilbert space exceeds the configured memory budget.
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------- system -------------------------------------

// Two-level (or collective per-particle) system parameters.
struct SystemParams {
    double epsilon{0.0}; // level spacing
    double delta{0.0};   // tunneling amplitude
    double omega{0.0};   // precession frequency sqrt(epsilon^2 + delta^2)

    SystemParams() = default;
    SystemParams(double eps, double dlt);
};

// Precession frequency of the coupling operator in the interaction picture.
double rabi_frequency(const SystemParams& sys) noexcept;

// ---------------------------- state preparation ------------------------------

struct QubitPrep {
    double theta{0.0}; // polar Bloch angle in [0, pi]
    double phi{0.0};   // azimuth in [0, 2*pi)
};

enum class SpinAxis { z, x };

struct LargeSpinPrep {
    int n_spins{1};            // number of two-level systems, j = n_spins/2
    SpinAxis axis{SpinAxis::z}; // z: |j> (J_z-maximal), x: |psi_c> (J_x-maximal)

    double j() const noexcept { return 0.5 * n_spins; }
};

struct StatePrep {
    std::variant<QubitPrep, LargeSpinPrep> state;

    static StatePrep qubit(double theta, double phi);
    static StatePrep large_spin_jz(int n_spins);
    static StatePrep large_spin_jx(int n_spins);

    bool is_qubit() const noexcept { return std::holds_alternative<QubitPrep>(state); }
    const QubitPrep& qubit_prep() const;
    const LargeSpinPrep& large_spin_prep() const;
};

// ------------------------------- environment ---------------------------------

// Power-law bath with exponential cutoff: J(w) = G w^s wc^(1-s) exp(-w/wc).
struct SpectralDensity {
    double coupling_g{0.01}; // dimensionless strength G > 0
    double ohmicity_s{1.0};  // exponent s > 0 (1: Ohmic, <1: sub-, >1: super-Ohmic)
    double cutoff_wc{10.0};  // cutoff frequency

    SpectralDensity() = default;
    SpectralDensity(double g, double s, double wc);

    // closed form of the total integral of J over [0, inf)
    double total_integral() const { return coupling_g * cutoff_wc * cutoff_wc * std::tgamma(ohmicity_s + 1.0); }
};

double spectral_density(double omega, const SpectralDensity& bath);

class Temperature {
public:
    static Temperature zero() noexcept { return Temperature{}; }
    static Temperature finite(double beta);

    bool is_zero() const noexcept { return !finite_; }
    double beta() const; // only meaningful for the finite variant

private:
    Temperature() = default;
    bool finite_{false};
    double beta_{0.0};
};

// coth(beta*omega/2); identically 1 at zero temperature. Requires omega > 0.
double thermal_factor(double omega, const Temperature& T);

// ------------------------------ measurements ----------------------------------

struct MeasurementProtocol {
    double tau{1.0};       // measurement interval, > 0
    long n_measurements{1}; // number of projective measurements, >= 1

    MeasurementProtocol() = default;
    MeasurementProtocol(double tau_interval, long n);
};

} // namespace qzeno
