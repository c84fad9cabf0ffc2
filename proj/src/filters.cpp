// filters.cpp — Filter-function families and the D-integral evaluation paths.

#include "qzeno/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qzeno {

namespace {

constexpr double pi = 3.14159265358979323846;

double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// (1 - cos(w*tau)) / w^2, stable for small w*tau
double cos_kernel(double omega, double tau) {
    const double s = std::sin(0.5 * omega * tau);
    return 2.0 * s * s / (omega * omega);
}

bool matches(double value, double target) { return std::fabs(value - target) <= 1e-12; }

// preparation-agnostic routing decision for the closed-form branches
bool closed_branch_for(const QubitPrep& prep, ClosedFormBranch& branch) {
    if (!matches(prep.phi, 0.0)) return false;
    if (matches(prep.theta, 0.5 * pi)) {
        branch = ClosedFormBranch::theta_half_pi;
        return true;
    }
    if (matches(prep.theta, 0.0)) {
        branch = ClosedFormBranch::theta_zero;
        return true;
    }
    return false;
}

DPair d_pair_closed_theta_half_pi(double w, double tau, double eps, double dlt, double Om) {
    const double w2 = w * w, W2 = Om * Om, e2 = eps * eps, d2 = dlt * dlt;
    const double cwt = std::cos(w * tau), swt = std::sin(w * tau);
    const double cWt = std::cos(Om * tau), sWt = std::sin(Om * tau);
    const double c2Wt = std::cos(2.0 * Om * tau);

    const double x1 = 3.0 * d2 * d2 * w2 * w2 +
                      4.0 * W2 * cwt * (e2 * (e2 - w2) * (w2 - W2) - d2 * w2 * (d2 + w2) * cWt) +
                      d2 * w * (4.0 * W2 * Om * (e2 - 2.0 * w2) * swt * sWt -
                                w * e2 * (w2 - W2) * (c2Wt - 4.0 * cWt)) -
                      8.0 * W2 * W2 * W2 * (d2 + w2) - 3.0 * d2 * w2 * W2 * (d2 + w2) +
                      W2 * W2 * (4.0 * d2 * d2 + 15.0 * d2 * w2 + 4.0 * w2 * w2) + 4.0 * W2 * W2 * W2 * W2;
    const double x2 = 4.0 * W2 * W2 * w2 * (w2 - W2) * (w2 - W2);

    const double x3 = dlt * (w * Om * (e2 - d2 - w2) * swt * sWt +
                             cwt * (e2 * (W2 - w2) - (W2 * (d2 + w2) + d2 * w2 - W2 * W2) * cWt) +
                             W2 * (d2 + w2) + d2 * w2 + e2 * (w2 - W2) * cWt - W2 * W2);
    const double x4 = w * W2 * (w2 - W2) * (w2 - W2);

    return {x1 / x2, x3 / x4};
}

DPair d_pair_closed_theta_zero(double w, double tau, double eps, double dlt, double Om) {
    const double w2 = w * w, W2 = Om * Om, e2 = eps * eps, d2 = dlt * dlt;
    const double cwt = std::cos(w * tau), swt = std::sin(w * tau);
    const double cWt = std::cos(Om * tau), sWt = std::sin(Om * tau);
    const double c2Wt = std::cos(2.0 * Om * tau);

    const double x1 = d2 * (w2 * W2 * (w2 + 3.0 * W2) -
                            4.0 * w * W2 * Om * (w2 + e2) * swt * sWt +
                            4.0 * W2 * cwt * (e2 * (w2 - W2) - w2 * (W2 + e2) * cWt) +
                            w2 * (W2 - w2) * (d2 * c2Wt + 4.0 * e2 * cWt) +
                            e2 * (3.0 * w2 * w2 - 3.0 * w2 * W2 + 4.0 * W2 * W2));
    const double x2 = 4.0 * W2 * W2 * w2 * (w2 - W2) * (w2 - W2);

    const double u = w * std::cos(0.5 * w * tau) * std::sin(0.5 * Om * tau) -
                     Om * std::sin(0.5 * w * tau) * std::cos(0.5 * Om * tau);
    const double x3 = 4.0 * d2 * eps * u * u;
    const double x4 = w * W2 * (w2 - W2) * (w2 - W2);

    return {x1 / x2, x3 / x4};
}

double assemble_filter(double omega, double tau, const DPair& d, const Temperature& T) {
    const double coth = T.is_zero() ? 1.0 : thermal_factor(omega, T);
    return std::max(0.0, (2.0 / tau) * (coth * d.d1 + d.d2));
}

} // namespace

PrecessionCoeffs precession_coeffs(double t, const SystemParams& sys) {
    const double Om = sys.omega;
    if (Om == 0.0) return {0.0, 0.0, 1.0};
    const double s = std::sin(0.5 * Om * t);
    const double s2 = s * s;
    return {2.0 * sys.epsilon * sys.delta / (Om * Om) * s2,
            sys.delta / Om * std::sin(Om * t),
            1.0 - 2.0 * sys.delta * sys.delta / (Om * Om) * s2};
}

PrecessionCoeffs rotated_coeffs(double t, const SystemParams& sys) {
    const double eps_r = sys.delta;
    const double dlt_r = -sys.epsilon;
    const double Om = sys.omega; // Omega_r = Omega
    if (Om == 0.0) return {1.0, 0.0, 0.0};
    const double s = std::sin(0.5 * Om * t);
    const double s2 = s * s;
    return {1.0 - 2.0 * eps_r * eps_r / (Om * Om) * s2,
            -eps_r / Om * std::sin(Om * t),
            2.0 * eps_r * dlt_r / (Om * Om) * s2};
}

OverlapAmplitudes overlap_amplitudes(double t, const QubitPrep& prep, const SystemParams& sys) {
    const PrecessionCoeffs a = precession_coeffs(t, sys);
    const double ct = std::cos(prep.theta), st = std::sin(prep.theta);
    const double cp = std::cos(prep.phi), sp = std::sin(prep.phi);
    return {-a.ax * cp * ct - a.ay * sp * ct + a.az * st, a.ay * cp - a.ax * sp};
}

double filter_population_decay(double omega, double tau, double epsilon) {
    if (!(tau > 0.0)) throw std::domain_error("filter_population_decay requires tau > 0");
    const double s = sinc(0.5 * (epsilon - omega) * tau);
    return tau * s * s;
}

double filter_pure_dephasing(double omega, double tau, const Temperature& T) {
    if (!(tau > 0.0)) throw std::domain_error("filter_pure_dephasing requires tau > 0");
    if (omega < 0.0) throw std::domain_error("filter_pure_dephasing requires omega >= 0");
    if (omega == 0.0)
        return T.is_zero() ? tau : std::numeric_limits<double>::infinity();
    return (2.0 / tau) * thermal_factor(omega, T) * cos_kernel(omega, tau);
}

double singular_band_halfwidth(const SystemParams& sys) noexcept {
    return 1e-3 * std::max(sys.omega, 1.0);
}

DPair d_pair_closed(double omega, double tau, const SystemParams& sys, ClosedFormBranch branch) {
    if (tau == 0.0) return {0.0, 0.0};
    if (!(tau > 0.0)) throw std::domain_error("d_pair_closed requires tau >= 0");

    // delta = 0 reduces analytically: the coupling operator is static
    if (sys.delta == 0.0) {
        if (branch == ClosedFormBranch::theta_zero) return {0.0, 0.0};
        if (omega == 0.0) return {0.5 * tau * tau, 0.0};
        return {cos_kernel(omega, tau), 0.0};
    }

    const double band = singular_band_halfwidth(sys);
    if (omega <= band || std::fabs(omega - sys.omega) <= band)
        throw SingularBandError("omega lies in the guard band of the closed-form D expressions; "
                                "use d_pair_numeric");

    return branch == ClosedFormBranch::theta_half_pi
               ? d_pair_closed_theta_half_pi(omega, tau, sys.epsilon, sys.delta, sys.omega)
               : d_pair_closed_theta_zero(omega, tau, sys.epsilon, sys.delta, sys.omega);
}

DPair d_pair_numeric(double omega, double tau, const SystemParams& sys, const QubitPrep& prep,
                     const quad::QuadConfig& cfg) {
    if (tau == 0.0) return {0.0, 0.0};
    if (!(tau > 0.0)) throw std::domain_error("d_pair_numeric requires tau >= 0");

    const double osc = std::max({std::fabs(omega), sys.omega, 0.5});

    auto d1_integrand = [&](double t, double tp) {
        const OverlapAmplitudes rt = overlap_amplitudes(t, prep, sys);
        const OverlapAmplitudes rd = overlap_amplitudes(t - tp, prep, sys);
        return std::cos(omega * tp) * (rd.r1 * rt.r1 + rd.r2 * rt.r2);
    };
    auto d2_integrand = [&](double t, double tp) {
        const OverlapAmplitudes rt = overlap_amplitudes(t, prep, sys);
        const OverlapAmplitudes rd = overlap_amplitudes(t - tp, prep, sys);
        return std::sin(omega * tp) * (rd.r1 * rt.r2 - rt.r1 * rd.r2);
    };

    const double d1 = quad::integrate_triangle(d1_integrand, tau, osc, cfg).value;
    const double d2 = quad::integrate_triangle(d2_integrand, tau, osc, cfg).value;
    return {d1, d2};
}

double filter_general(double omega, double tau, const SystemParams& sys, const QubitPrep& prep,
                      const Temperature& T, const quad::QuadConfig& cfg) {
    if (!(tau > 0.0)) throw std::domain_error("filter_general requires tau > 0");
    if (omega < 0.0) throw std::domain_error("filter_general requires omega >= 0");

    if (sys.delta == 0.0) {
        // static coupling operator: r1 = sin(theta), r2 = 0, so the filter is
        // sin^2(theta) times the pure-dephasing one, exactly
        const double st = std::sin(prep.theta);
        const double amp = st * st;
        if (omega == 0.0) {
            if (T.is_zero()) return amp * tau;
            return amp > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        return amp * (2.0 / tau) * thermal_factor(omega, T) * cos_kernel(omega, tau);
    }

    if (omega == 0.0) {
        // analytic w -> 0 limit; D2 vanishes (odd kernel) and D1 is finite
        const double d1 = d_pair_numeric(0.0, tau, sys, prep, cfg).d1;
        if (T.is_zero()) return std::max(0.0, (2.0 / tau) * d1);
        return d1 > cfg.abs_tol ? std::numeric_limits<double>::infinity() : 0.0;
    }

    ClosedFormBranch branch{};
    if (closed_branch_for(prep, branch)) {
        const double band = singular_band_halfwidth(sys);
        const bool in_band = omega <= band || std::fabs(omega - sys.omega) <= band;
        if (!in_band) return assemble_filter(omega, tau, d_pair_closed(omega, tau, sys, branch), T);
    }
    return assemble_filter(omega, tau, d_pair_numeric(omega, tau, sys, prep, cfg), T);
}

double zero_temperature_amplitude_form(double omega, double tau, const SystemParams& sys,
                                       const QubitPrep& prep, const quad::QuadConfig& cfg) {
    if (!(tau > 0.0)) throw std::domain_error("zero_temperature_amplitude_form requires tau > 0");

    const double osc = std::max({std::fabs(omega), sys.omega, 0.5});
    auto real_part = [&](double t) {
        const OverlapAmplitudes r = overlap_amplitudes(t, prep, sys);
        return r.r1 * std::cos(omega * t) + r.r2 * std::sin(omega * t);
    };
    auto imag_part = [&](double t) {
        const OverlapAmplitudes r = overlap_amplitudes(t, prep, sys);
        return r.r2 * std::cos(omega * t) - r.r1 * std::sin(omega * t);
    };
    const double re = quad::integrate_interval(real_part, 0.0, tau, osc, cfg).value;
    const double im = quad::integrate_interval(imag_part, 0.0, tau, osc, cfg).value;
    return (re * re + im * im) / tau;
}

double filter_large_spin(double omega, double tau, const SystemParams& sys, const StatePrep& prep,
                         const Temperature& T, const quad::QuadConfig& cfg) {
    const LargeSpinPrep& ls = prep.large_spin_prep();
    const double theta = (ls.axis == SpinAxis::z) ? 0.0 : 0.5 * pi;
    const double single = filter_general(omega, tau, sys, QubitPrep{theta, 0.0}, T, cfg);
    return static_cast<double>(ls.n_spins) * single; // 2j = n_spins
}

} // namespace qzeno
