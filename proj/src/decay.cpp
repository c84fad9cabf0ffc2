// decay.cpp — Decay-rate evaluation, survival, and regime classification.

#include "qzeno/decay.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace qzeno {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;

void check_family_prep(ModelFamily family, const StatePrep& prep) {
    const bool large = !prep.is_qubit();
    if (family == ModelFamily::large_spin) {
        if (!large) throw std::invalid_argument("large_spin family requires a large-spin preparation");
        return;
    }
    if (large) throw std::invalid_argument("qubit families require a qubit preparation");
    if (family == ModelFamily::population_decay && prep.qubit_prep().theta != 0.0)
        throw std::invalid_argument("population_decay fixes the excited-state preparation (theta = 0)");
}

} // namespace

ModelSpec::ModelSpec(ModelFamily family_, const SystemParams& sys_, const StatePrep& prep_,
                     const Temperature& T_, const SpectralDensity& bath_)
    : family(family_), sys(sys_), prep(prep_), T(T_), bath(bath_) {
    check_family_prep(family, prep);
}

ModelSpec ModelSpec::population_decay(const SystemParams& sys, const Temperature& T,
                                      const SpectralDensity& bath) {
    return ModelSpec(ModelFamily::population_decay, sys, StatePrep::qubit(0.0, 0.0), T, bath);
}

double model_filter(double omega, double tau, const ModelSpec& model, const quad::QuadConfig& cfg) {
    switch (model.family) {
    case ModelFamily::population_decay:
        return filter_population_decay(omega, tau, rabi_frequency(model.sys));
    case ModelFamily::pure_dephasing: {
        const double st = std::sin(model.prep.qubit_prep().theta);
        return st * st * filter_pure_dephasing(omega, tau, model.T);
    }
    case ModelFamily::general_spin_boson:
        return filter_general(omega, tau, model.sys, model.prep.qubit_prep(), model.T, cfg);
    case ModelFamily::large_spin:
        return filter_large_spin(omega, tau, model.sys, model.prep, model.T, cfg);
    }
    throw std::logic_error("unknown model family");
}

double effective_decay_rate(double tau, const ModelSpec& model, const quad::QuadConfig& cfg) {
    if (!(tau > 0.0)) throw std::domain_error("effective_decay_rate requires tau > 0");

    quad::QuadConfig d_cfg = d_pair_default_config();
    auto integrand = [&](double w) {
        return spectral_density(w, model.bath) * model_filter(w, tau, model, d_cfg);
    };
    const double osc = tau + two_pi / std::max(rabi_frequency(model.sys), 1.0);
    const double value = quad::integrate_semi_infinite(integrand, model.bath.cutoff_wc, osc, cfg).value;
    return std::max(0.0, value);
}

double survival_probability(const MeasurementProtocol& protocol, double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("survival_probability requires gamma >= 0");
    return std::exp(-gamma * static_cast<double>(protocol.n_measurements) * protocol.tau);
}

RegimeClassification classify_regimes(std::span<const double> taus, std::span<const double> gammas) {
    const std::size_t n = taus.size();
    if (n != gammas.size()) throw std::invalid_argument("taus and gammas must have equal length");
    if (n < 5) throw std::invalid_argument("classify_regimes requires at least 5 grid points");

    double max_abs = 0.0;
    for (double g : gammas) max_abs = std::max(max_abs, std::fabs(g));
    const double slope_eps = 1e-6 * max_abs;

    // slope signs, with sub-threshold slopes merged into a neighboring segment
    std::vector<int> sign(n - 1, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = (gammas[i + 1] - gammas[i]) / (taus[i + 1] - taus[i]);
        sign[i] = (std::fabs(s) <= slope_eps) ? 0 : (s > 0.0 ? 1 : -1);
    }

    RegimeClassification out;
    if (std::all_of(sign.begin(), sign.end(), [](int s) { return s == 0; })) {
        out.degenerate_flat = true;
        out.segments.push_back({taus.front(), taus.back(), Regime::zeno});
        return out;
    }
    int current = 0;
    for (int& s : sign) {
        if (s != 0)
            current = s;
        else if (current != 0)
            s = current;
    }
    for (std::size_t i = sign.size() - 1; i-- > 0;) // leading flats inherit the first real slope
        if (sign[i] == 0) sign[i] = sign[i + 1];

    auto vertex = [&](std::size_t i) {
        // parabola through the three points bracketing the sign change at slope i|i+1
        const double x1 = taus[i], x2 = taus[i + 1], x3 = taus[i + 2];
        const double y1 = gammas[i], y2 = gammas[i + 1], y3 = gammas[i + 2];
        const double num = (x2 - x1) * (x2 - x1) * (y2 - y3) - (x2 - x3) * (x2 - x3) * (y2 - y1);
        const double den = (x2 - x1) * (y2 - y3) - (x2 - x3) * (y2 - y1);
        double t = (den == 0.0) ? x2 : x2 - 0.5 * num / den;
        return std::clamp(t, x1, x3);
    };

    double seg_start = taus.front();
    int seg_sign = sign[0];
    for (std::size_t i = 0; i + 1 < sign.size(); ++i) {
        if (sign[i + 1] == sign[i]) continue;
        const double t_star = vertex(i);
        out.extrema.push_back(
            {t_star, sign[i] > 0 ? ExtremumKind::maximum : ExtremumKind::minimum});
        out.segments.push_back({seg_start, t_star, seg_sign > 0 ? Regime::zeno : Regime::anti_zeno});
        seg_start = t_star;
        seg_sign = sign[i + 1];
    }
    out.segments.push_back({seg_start, taus.back(), seg_sign > 0 ? Regime::zeno : Regime::anti_zeno});
    return out;
}

DecayCurve gamma_curve(std::span<const double> taus, const ModelSpec& model,
                       const quad::QuadConfig& cfg) {
    if (taus.size() < 5) throw std::invalid_argument("gamma_curve requires at least 5 grid points");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0)) throw std::invalid_argument("tau grid must be positive");
        if (i > 0 && !(taus[i] > taus[i - 1]))
            throw std::invalid_argument("tau grid must be strictly increasing");
    }

    DecayCurve curve;
    curve.taus.assign(taus.begin(), taus.end());
    curve.gammas.resize(taus.size());
    detail::parallel_for(taus.size(),
                         [&](std::size_t i) { curve.gammas[i] = effective_decay_rate(taus[i], model, cfg); });

    RegimeClassification cls = classify_regimes(curve.taus, curve.gammas);
    curve.extrema = std::move(cls.extrema);
    curve.segments = std::move(cls.segments);
    curve.degenerate_flat = cls.degenerate_flat;
    return curve;
}

double pure_dephasing_exact(double tau, const SpectralDensity& bath, const Temperature& T,
                            const quad::QuadConfig& cfg) {
    if (!(tau > 0.0)) throw std::domain_error("pure_dephasing_exact requires tau > 0");

    auto integrand = [&](double w) {
        const double s = std::sin(0.5 * w * tau);
        return spectral_density(w, bath) * 4.0 * (2.0 * s * s) / (w * w) * thermal_factor(w, T);
    };
    const double gamma_tau =
        quad::integrate_semi_infinite(integrand, bath.cutoff_wc, tau + 1.0, cfg).value;
    // Gamma = -(1/tau) ln[1 - (1 - e^{-gamma})/2], written through expm1/log1p
    return -std::log1p(0.5 * std::expm1(-gamma_tau)) / tau;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("bad log-spaced grid request");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = lo * std::exp(ratio * static_cast<double>(i) / (n - 1));
    grid.back() = hi;
    return grid;
}

} // namespace qzeno
