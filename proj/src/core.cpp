// core.cpp — Parameter validation and elementary scalar functions.

#include "qzeno/core.hpp"

#include <limits>

namespace qzeno {

namespace {

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be finite");
}

constexpr double two_pi = 6.283185307179586476925286766559;

} // namespace

SystemParams::SystemParams(double eps, double dlt) : epsilon(eps), delta(dlt) {
    require_finite(eps, "epsilon");
    require_finite(dlt, "delta");
    omega = std::hypot(eps, dlt);
}

double rabi_frequency(const SystemParams& sys) noexcept { return sys.omega; }

StatePrep StatePrep::qubit(double theta, double phi) {
    require_finite(theta, "theta");
    require_finite(phi, "phi");
    if (theta < 0.0 || theta > 3.14159265358979323846 + 1e-12)
        throw std::invalid_argument("theta must lie in [0, pi]");
    if (phi < 0.0 || phi >= two_pi)
        throw std::invalid_argument("phi must lie in [0, 2*pi)");
    return StatePrep{QubitPrep{theta, phi}};
}

StatePrep StatePrep::large_spin_jz(int n_spins) {
    if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
    return StatePrep{LargeSpinPrep{n_spins, SpinAxis::z}};
}

StatePrep StatePrep::large_spin_jx(int n_spins) {
    if (n_spins < 1) throw std::invalid_argument("n_spins must be >= 1");
    return StatePrep{LargeSpinPrep{n_spins, SpinAxis::x}};
}

const QubitPrep& StatePrep::qubit_prep() const {
    if (!is_qubit()) throw std::logic_error("state preparation is not a qubit state");
    return std::get<QubitPrep>(state);
}

const LargeSpinPrep& StatePrep::large_spin_prep() const {
    if (is_qubit()) throw std::logic_error("state preparation is not a large-spin state");
    return std::get<LargeSpinPrep>(state);
}

SpectralDensity::SpectralDensity(double g, double s, double wc)
    : coupling_g(g), ohmicity_s(s), cutoff_wc(wc) {
    require_finite(g, "G");
    require_finite(s, "s");
    require_finite(wc, "wc");
    if (g <= 0.0) throw std::invalid_argument("coupling G must be > 0");
    if (s <= 0.0) throw std::invalid_argument("Ohmicity s must be > 0");
    if (wc <= 0.0) throw std::invalid_argument("cutoff wc must be > 0");
}

double spectral_density(double omega, const SpectralDensity& bath) {
    if (!(omega >= 0.0)) throw std::domain_error("spectral_density requires omega >= 0");
    if (omega == 0.0) return 0.0; // w^s vanishes for s > 0
    return bath.coupling_g * std::pow(omega, bath.ohmicity_s) *
           std::pow(bath.cutoff_wc, 1.0 - bath.ohmicity_s) * std::exp(-omega / bath.cutoff_wc);
}

Temperature Temperature::finite(double beta) {
    require_finite(beta, "beta");
    if (beta <= 0.0) throw std::invalid_argument("inverse temperature beta must be > 0");
    Temperature T;
    T.finite_ = true;
    T.beta_ = beta;
    return T;
}

double Temperature::beta() const {
    if (!finite_) throw std::logic_error("zero-temperature variant has no beta");
    return beta_;
}

double thermal_factor(double omega, const Temperature& T) {
    if (!(omega > 0.0)) throw std::domain_error("thermal_factor requires omega > 0");
    if (T.is_zero()) return 1.0;
    const double x = 0.5 * T.beta() * omega;
    // small-argument Laurent series; avoids cancellation in 1/tanh(x)
    if (x < 1e-4) return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
}

MeasurementProtocol::MeasurementProtocol(double tau_interval, long n)
    : tau(tau_interval), n_measurements(n) {
    require_finite(tau_interval, "tau");
    if (tau_interval <= 0.0) throw std::invalid_argument("tau must be > 0");
    if (n < 1) throw std::invalid_argument("n_measurements must be >= 1");
}

} // namespace qzeno
