// bathsim.cpp — Nonperturbative survival through one measurement interval.
//
// Three evolution strategies share the same contract:
//   * dephasing_factorized — the dephasing coupling commutes mode-by-mode, so
//     each mode evolves conditionally on sigma_z = +/-1 in its own truncated
//     Fock space and the decoherence factor is a product.
//   * decay_sector — the RWA decay model conserves excitation number; the
//     initial excited state lives in the (M+1)-dimensional single-excitation
//     sector, which is diagonalized exactly.
//   * full — Lanczos short-step propagation of the joint state vector over
//     system x (n_max+1)^M occupations.

#include "qzeno/bathsim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#include "dense.hpp"

namespace qzeno::bathsim {

using detail::cdouble;

namespace {

// ---------------------------- system operators ------------------------------

struct SystemBlock {
    int dim{2};
    std::vector<double> h;      // dense real symmetric H_S (row-major)
    std::vector<double> f_diag; // diagonal coupling operator (sigma_z or 2 J_z)
    std::vector<cdouble> psi;   // prepared state
};

SystemBlock make_system_block(const ModelSpec& model) {
    SystemBlock blk;
    if (model.prep.is_qubit()) {
        const QubitPrep& q = model.prep.qubit_prep();
        blk.dim = 2;
        blk.h = {0.5 * model.sys.epsilon, 0.5 * model.sys.delta,
                 0.5 * model.sys.delta, -0.5 * model.sys.epsilon};
        blk.f_diag = {1.0, -1.0};
        blk.psi = {cdouble{std::cos(0.5 * q.theta), 0.0},
                   std::exp(cdouble{0.0, q.phi}) * std::sin(0.5 * q.theta)};
        return blk;
    }

    const LargeSpinPrep& ls = model.prep.large_spin_prep();
    const int n = ls.n_spins;
    const double j = ls.j();
    blk.dim = n + 1;
    blk.h.assign(static_cast<std::size_t>(blk.dim) * blk.dim, 0.0);
    blk.f_diag.resize(static_cast<std::size_t>(blk.dim));
    for (int i = 0; i < blk.dim; ++i) {
        const double m = j - i; // index 0 is the J_z-maximal state |j>
        blk.h[static_cast<std::size_t>(i) * blk.dim + i] = model.sys.epsilon * m;
        blk.f_diag[static_cast<std::size_t>(i)] = 2.0 * m;
        if (i + 1 < blk.dim) {
            const double jx = 0.5 * std::sqrt(j * (j + 1.0) - m * (m - 1.0));
            blk.h[static_cast<std::size_t>(i) * blk.dim + (i + 1)] += model.sys.delta * jx;
            blk.h[static_cast<std::size_t>(i + 1) * blk.dim + i] += model.sys.delta * jx;
        }
    }

    blk.psi.assign(static_cast<std::size_t>(blk.dim), cdouble{0.0, 0.0});
    if (ls.axis == SpinAxis::z) {
        blk.psi[0] = 1.0;
    } else {
        // J_x-maximal state: top eigenvector of J_x, sign fixed deterministically
        std::vector<double> jx(static_cast<std::size_t>(blk.dim) * blk.dim, 0.0);
        for (int i = 0; i + 1 < blk.dim; ++i) {
            const double m = j - i;
            const double v = 0.5 * std::sqrt(j * (j + 1.0) - m * (m - 1.0));
            jx[static_cast<std::size_t>(i) * blk.dim + (i + 1)] = v;
            jx[static_cast<std::size_t>(i + 1) * blk.dim + i] = v;
        }
        std::vector<double> vals, vecs;
        detail::jacobi_eigh(jx, blk.dim, vals, vecs);
        const int top = blk.dim - 1; // eigenvalues ascending
        int imax = 0;
        double amax = 0.0;
        for (int i = 0; i < blk.dim; ++i) {
            const double v = std::fabs(vecs[static_cast<std::size_t>(i) * blk.dim + top]);
            if (v > amax) {
                amax = v;
                imax = i;
            }
        }
        const double flip = vecs[static_cast<std::size_t>(imax) * blk.dim + top] < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < blk.dim; ++i)
            blk.psi[static_cast<std::size_t>(i)] = flip * vecs[static_cast<std::size_t>(i) * blk.dim + top];
    }
    return blk;
}

// dense complex rotation e^{+i H_S tau}
std::vector<cdouble> system_rotation(const SystemBlock& blk, double tau) {
    std::vector<double> vals, vecs;
    detail::jacobi_eigh(blk.h, blk.dim, vals, vecs);
    const int n = blk.dim;
    std::vector<cdouble> u(static_cast<std::size_t>(n) * n, cdouble{0.0, 0.0});
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cdouble acc{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                acc += vecs[static_cast<std::size_t>(r) * n + j] *
                       std::exp(cdouble{0.0, vals[static_cast<std::size_t>(j)] * tau}) *
                       vecs[static_cast<std::size_t>(c) * n + j];
            u[static_cast<std::size_t>(r) * n + c] = acc;
        }
    return u;
}

// ------------------------- factorized dephasing path ------------------------

cdouble mode_decoherence_factor(double omega, double g, double tau, int n_max) {
    const int n = n_max + 1;
    auto evolve = [&](double sign) {
        std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
        for (int k = 0; k < n; ++k) {
            h[static_cast<std::size_t>(k) * n + k] = omega * k;
            if (k + 1 < n) {
                h[static_cast<std::size_t>(k) * n + (k + 1)] = sign * g * std::sqrt(k + 1.0);
                h[static_cast<std::size_t>(k + 1) * n + k] = sign * g * std::sqrt(k + 1.0);
            }
        }
        std::vector<double> vals, vecs;
        detail::jacobi_eigh(std::move(h), n, vals, vecs);
        std::vector<cdouble> vac(static_cast<std::size_t>(n), cdouble{0.0, 0.0});
        vac[0] = 1.0;
        std::vector<cdouble> chi;
        detail::apply_exp_i_h(vals, vecs, n, tau, -1, vac, chi);
        return chi;
    };
    const std::vector<cdouble> chi_plus = evolve(+1.0);
    const std::vector<cdouble> chi_minus = evolve(-1.0);
    cdouble overlap{0.0, 0.0};
    for (int k = 0; k < n; ++k)
        overlap += std::conj(chi_plus[static_cast<std::size_t>(k)]) * chi_minus[static_cast<std::size_t>(k)];
    return overlap;
}

double survival_dephasing_factorized(const ModelSpec& model, const BathDiscretization& disc,
                                     double tau, int n_max) {
    const double theta = model.prep.qubit_prep().theta;
    cdouble prod{1.0, 0.0};
    for (const BathMode& mode : disc.modes) {
        if (mode.g == 0.0) continue;
        prod *= mode_decoherence_factor(mode.omega, mode.g, tau, n_max);
    }
    const double st = std::sin(theta);
    const double s = 1.0 - 0.5 * st * st * (1.0 - prod.real());
    return std::clamp(s, 0.0, 1.0);
}

// --------------------------- decay sector path -------------------------------

double survival_decay_sector(const ModelSpec& model, const BathDiscretization& disc, double tau) {
    const int m = static_cast<int>(disc.modes.size());
    const int n = m + 1;
    const double level = rabi_frequency(model.sys);

    std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
    h[0] = 0.5 * level;
    for (int k = 0; k < m; ++k) {
        const int idx = k + 1;
        h[static_cast<std::size_t>(idx) * n + idx] = disc.modes[static_cast<std::size_t>(k)].omega - 0.5 * level;
        h[static_cast<std::size_t>(idx)] = disc.modes[static_cast<std::size_t>(k)].g;
        h[static_cast<std::size_t>(idx) * n] = disc.modes[static_cast<std::size_t>(k)].g;
    }
    std::vector<double> vals, vecs;
    detail::jacobi_eigh(std::move(h), n, vals, vecs);

    cdouble amp{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const double u0j = vecs[static_cast<std::size_t>(j)]; // row 0, column j
        amp += u0j * u0j * std::exp(cdouble{0.0, -vals[static_cast<std::size_t>(j)] * tau});
    }
    return std::clamp(std::norm(amp), 0.0, 1.0);
}

// ------------------------------- full path -----------------------------------

struct FullSpace {
    SystemBlock sys;
    std::vector<double> mode_omega;
    std::vector<double> mode_g;
    int n_max{0};
    std::size_t dim{0};
    std::vector<double> bath_energy; // per occupation config
    bool rwa_coupling{false};        // sigma^+ b + sigma^- b^dagger instead of F (b + b^dagger)
};

FullSpace build_full_space(const ModelSpec& model, const BathDiscretization& disc, int n_max,
                           std::size_t max_dim) {
    FullSpace sp;
    sp.sys = make_system_block(model);
    sp.n_max = n_max;
    sp.rwa_coupling = model.family == ModelFamily::population_decay;
    if (sp.rwa_coupling) {
        // diagonalized two-level system with level spacing Omega
        const double level = rabi_frequency(model.sys);
        sp.sys.h = {0.5 * level, 0.0, 0.0, -0.5 * level};
    }

    const int m = static_cast<int>(disc.modes.size());
    const int radix = n_max + 1;
    double dim_estimate = sp.sys.dim;
    for (int k = 0; k < m; ++k) dim_estimate *= radix;
    if (dim_estimate > static_cast<double>(max_dim))
        throw CapacityError("truncated Hilbert dimension " + std::to_string(dim_estimate) +
                            " exceeds budget " + std::to_string(max_dim));

    sp.mode_omega.resize(static_cast<std::size_t>(m));
    sp.mode_g.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        sp.mode_omega[static_cast<std::size_t>(k)] = disc.modes[static_cast<std::size_t>(k)].omega;
        sp.mode_g[static_cast<std::size_t>(k)] = disc.modes[static_cast<std::size_t>(k)].g;
    }

    const std::size_t configs = static_cast<std::size_t>(dim_estimate) / sp.sys.dim;
    sp.dim = static_cast<std::size_t>(dim_estimate);
    sp.bath_energy.assign(configs, 0.0);
    for (std::size_t c = 0; c < configs; ++c) {
        std::size_t rest = c;
        double e = 0.0;
        for (int k = 0; k < m; ++k) {
            e += sp.mode_omega[static_cast<std::size_t>(k)] * static_cast<double>(rest % radix);
            rest /= radix;
        }
        sp.bath_energy[c] = e;
    }
    return sp;
}

void apply_hamiltonian(const FullSpace& sp, const std::vector<cdouble>& v, std::vector<cdouble>& y) {
    const int ds = sp.sys.dim;
    const int radix = sp.n_max + 1;
    const std::size_t dim = sp.dim;
    y.assign(dim, cdouble{0.0, 0.0});

    // bath diagonal + system block
    for (std::size_t c = 0; c < sp.bath_energy.size(); ++c) {
        const std::size_t base = c * ds;
        const double e = sp.bath_energy[c];
        for (int r = 0; r < ds; ++r) {
            cdouble acc = e * v[base + r];
            for (int s = 0; s < ds; ++s)
                acc += sp.sys.h[static_cast<std::size_t>(r) * ds + s] * v[base + s];
            y[base + r] = acc;
        }
    }

    // coupling terms, mode by mode
    std::size_t stride = static_cast<std::size_t>(ds);
    for (std::size_t k = 0; k < sp.mode_omega.size(); ++k) {
        const double g = sp.mode_g[k];
        if (g != 0.0) {
            const std::size_t block = stride * static_cast<std::size_t>(radix);
            for (std::size_t high = 0; high < dim; high += block) {
                for (int n = 0; n + 1 <= sp.n_max; ++n) {
                    const double amp = g * std::sqrt(n + 1.0);
                    const std::size_t lo_base = high + static_cast<std::size_t>(n) * stride;
                    const std::size_t hi_base = lo_base + stride;
                    if (sp.rwa_coupling) {
                        // sigma^+ b: (down, n+1) -> (up, n); plus hermitian partner
                        for (std::size_t low = 0; low < stride; low += static_cast<std::size_t>(ds)) {
                            y[lo_base + low] += amp * v[hi_base + low + 1];
                            y[hi_base + low + 1] += amp * v[lo_base + low];
                        }
                    } else {
                        for (std::size_t low = 0; low < stride; ++low) {
                            const double f = sp.sys.f_diag[low % static_cast<std::size_t>(ds)];
                            y[hi_base + low] += amp * f * v[lo_base + low];
                            y[lo_base + low] += amp * f * v[hi_base + low];
                        }
                    }
                }
            }
        }
        stride *= static_cast<std::size_t>(radix);
    }
}

// Lanczos propagation of v by exp(-i H tau) with per-interval error budget.
void lanczos_propagate(const FullSpace& sp, std::vector<cdouble>& v, double tau, double step_tol) {
    const std::size_t dim = sp.dim;
    const int m_max = std::min<std::size_t>(30, dim);

    double remaining = tau;
    double dt = tau;
    std::vector<std::vector<cdouble>> basis;
    std::vector<cdouble> w(dim);

    while (remaining > 1e-15 * tau) {
        dt = std::min(dt, remaining);

        // build the Krylov basis once, reuse it while shrinking dt
        basis.clear();
        std::vector<double> alpha, beta;
        double vnorm = 0.0;
        for (const cdouble& x : v) vnorm += std::norm(x);
        vnorm = std::sqrt(vnorm);

        basis.emplace_back(v);
        for (cdouble& x : basis[0]) x /= vnorm;

        int m = 0;
        double beta_last = 0.0;
        bool breakdown = false;
        for (m = 1; m <= m_max; ++m) {
            apply_hamiltonian(sp, basis.back(), w);
            cdouble a{0.0, 0.0};
            for (std::size_t i = 0; i < dim; ++i) a += std::conj(basis.back()[i]) * w[i];
            alpha.push_back(a.real());
            for (std::size_t i = 0; i < dim; ++i) w[i] -= a.real() * basis.back()[i];
            if (m >= 2) {
                const auto& prev = basis[basis.size() - 2];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= beta.back() * prev[i];
            }
            // full reorthogonalization keeps the basis clean over long steps
            for (const auto& b : basis) {
                cdouble ov{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) ov += std::conj(b[i]) * w[i];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= ov * b[i];
            }
            double nw = 0.0;
            for (const cdouble& x : w) nw += std::norm(x);
            nw = std::sqrt(nw);
            beta_last = nw;
            if (nw < 1e-13 || m == m_max) {
                breakdown = nw < 1e-13;
                break;
            }
            beta.push_back(nw);
            basis.emplace_back(w);
            for (cdouble& x : basis.back()) x /= nw;
        }
        m = static_cast<int>(alpha.size());

        // spectral decomposition of the tridiagonal projection
        std::vector<double> t(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) {
            t[static_cast<std::size_t>(i) * m + i] = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                t[static_cast<std::size_t>(i) * m + (i + 1)] = beta[static_cast<std::size_t>(i)];
                t[static_cast<std::size_t>(i + 1) * m + i] = beta[static_cast<std::size_t>(i)];
            }
        }
        std::vector<double> vals, vecs;
        detail::jacobi_eigh(std::move(t), m, vals, vecs);

        std::vector<cdouble> e1(static_cast<std::size_t>(m), cdouble{0.0, 0.0});
        e1[0] = 1.0;
        std::vector<cdouble> y;
        for (;;) {
            detail::apply_exp_i_h(vals, vecs, m, dt, -1, e1, y);
            const double budget = step_tol * (dt / tau);
            const double err = breakdown ? 0.0 : beta_last * std::abs(y[static_cast<std::size_t>(m - 1)]);
            if (err <= budget || dt <= 1e-12 * tau) break;
            dt *= 0.5;
        }

        for (std::size_t i = 0; i < dim; ++i) {
            cdouble acc{0.0, 0.0};
            for (int j = 0; j < m; ++j) acc += basis[static_cast<std::size_t>(j)][i] * y[static_cast<std::size_t>(j)];
            v[i] = vnorm * acc;
        }
        remaining -= dt;
        dt *= 1.5; // grow cautiously; the error check shrinks it again if needed
    }
}

double survival_full(const ModelSpec& model, const BathDiscretization& disc, double tau,
                     const SimOptions& opts) {
    FullSpace sp = build_full_space(model, disc, opts.n_max, opts.max_dim);
    const int ds = sp.sys.dim;

    TruncatedState state;
    state.sys_dim = ds;
    state.mode_count = static_cast<int>(disc.modes.size());
    state.n_max = opts.n_max;
    state.amp.assign(sp.dim, cdouble{0.0, 0.0});
    for (int s = 0; s < ds; ++s) state.amp[static_cast<std::size_t>(s)] = sp.sys.psi[static_cast<std::size_t>(s)];

    lanczos_propagate(sp, state.amp, tau, opts.step_tol);

    const double norm_after = state.norm();
    if (std::fabs(1.0 - norm_after * norm_after) > 1e-9)
        throw AccuracyError("propagation lost unitarity beyond tolerance", norm_after, std::fabs(1.0 - norm_after * norm_after));

    // undo the free system evolution, then project every bath configuration
    // onto the prepared state
    const std::vector<cdouble> rot = system_rotation(sp.sys, tau);
    double survival = 0.0;
    for (std::size_t c = 0; c < sp.bath_energy.size(); ++c) {
        const std::size_t base = c * ds;
        cdouble overlap{0.0, 0.0};
        for (int r = 0; r < ds; ++r) {
            cdouble rotated{0.0, 0.0};
            for (int s = 0; s < ds; ++s)
                rotated += rot[static_cast<std::size_t>(r) * ds + s] * state.amp[base + s];
            overlap += std::conj(sp.sys.psi[static_cast<std::size_t>(r)]) * rotated;
        }
        survival += std::norm(overlap);
    }
    return std::clamp(survival, 0.0, 1.0);
}

EvolveMethod resolve_method(const ModelSpec& model, EvolveMethod requested) {
    if (requested != EvolveMethod::automatic) return requested;
    switch (model.family) {
    case ModelFamily::pure_dephasing: return EvolveMethod::dephasing_factorized;
    case ModelFamily::population_decay: return EvolveMethod::decay_sector;
    default: return EvolveMethod::full;
    }
}

} // namespace

double BathDiscretization::coupling_weight_sum() const {
    double sum = 0.0;
    for (const BathMode& m : modes) sum += m.g * m.g;
    return sum;
}

BathDiscretization discretize(const SpectralDensity& bath, int mode_count, double omega_max,
                              GridScheme scheme) {
    if (mode_count < 1) throw std::invalid_argument("mode_count must be >= 1");
    if (!(omega_max > 0.0)) throw std::invalid_argument("omega_max must be > 0");

    BathDiscretization disc;
    disc.scheme = scheme;
    disc.omega_max = omega_max;
    disc.modes.resize(static_cast<std::size_t>(mode_count));
    const double dw = omega_max / mode_count;
    for (int k = 0; k < mode_count; ++k) {
        const double w = (scheme == GridScheme::midpoint) ? (k + 0.5) * dw : (k + 1.0) * dw;
        disc.modes[static_cast<std::size_t>(k)] = {w, std::sqrt(spectral_density(w, bath) * dw)};
    }
    return disc;
}

double TruncatedState::norm() const {
    double sum = 0.0;
    for (const auto& x : amp) sum += std::norm(x);
    return std::sqrt(sum);
}

double single_interval_survival(const ModelSpec& model, const BathDiscretization& disc, double tau,
                                int n_max) {
    SimOptions opts;
    opts.n_max = n_max;
    return single_interval_survival(model, disc, tau, opts);
}

double single_interval_survival(const ModelSpec& model, const BathDiscretization& disc, double tau,
                                const SimOptions& opts) {
    if (!(tau > 0.0)) throw std::domain_error("single_interval_survival requires tau > 0");
    if (opts.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (!model.T.is_zero())
        throw std::invalid_argument("the exact-dynamics oracle supports zero temperature only");

    switch (resolve_method(model, opts.method)) {
    case EvolveMethod::dephasing_factorized:
        if (model.family != ModelFamily::pure_dephasing &&
            !(model.family == ModelFamily::general_spin_boson && model.sys.delta == 0.0))
            throw std::invalid_argument("factorized evolution requires a dephasing coupling");
        return survival_dephasing_factorized(model, disc, tau, opts.n_max);
    case EvolveMethod::decay_sector:
        if (model.family != ModelFamily::population_decay)
            throw std::invalid_argument("the excitation-sector method applies to the decay model only");
        return survival_decay_sector(model, disc, tau);
    case EvolveMethod::full:
    default:
        return survival_full(model, disc, tau, opts);
    }
}

OracleReport compare_to_perturbative(const ModelSpec& model, const BathDiscretization& disc,
                                     std::span<const double> tau_grid, int n_max, double threshold,
                                     bool refine_check, const SimOptions& base_opts) {
    SimOptions opts = base_opts;
    opts.n_max = n_max;

    OracleReport report;
    report.threshold = threshold;
    for (double tau : tau_grid) {
        const double s = single_interval_survival(model, disc, tau, opts);
        const double gamma_sim = -std::log(std::max(s, 1e-300)) / tau;
        const double gamma_pert = effective_decay_rate(tau, model);
        const double gap = std::fabs(gamma_sim - gamma_pert) / std::max(gamma_pert, 1e-300);
        report.rows.push_back({tau, gamma_sim, gamma_pert, gap, gap > threshold});
        report.max_gap = std::max(report.max_gap, gap);
        report.any_above_threshold = report.any_above_threshold || gap > threshold;
    }

    if (refine_check && !disc.modes.empty()) {
        try {
            SpectralDensity bath = model.bath;
            const BathDiscretization finer =
                discretize(bath, static_cast<int>(disc.modes.size()) * 2, disc.omega_max, disc.scheme);
            double delta = 0.0;
            for (std::size_t i = 0; i < report.rows.size(); ++i) {
                const OracleRow& row = report.rows[i];
                const double s2 = single_interval_survival(model, finer, row.tau, opts);
                const double gamma2 = -std::log(std::max(s2, 1e-300)) / row.tau;
                delta = std::max(delta, std::fabs(gamma2 - row.gamma_sim) /
                                            std::max(row.gamma_pert, 1e-300));
            }
            report.refinement_checked = true;
            report.refinement_delta = delta;
            report.under_resolved = delta > std::max(report.max_gap, 1e-12);
        } catch (const CapacityError&) {
            report.refinement_checked = false;
        }
    }
    return report;
}

} // namespace qzeno::bathsim
