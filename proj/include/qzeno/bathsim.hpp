// bathsim.hpp — Exact-dynamics oracle: discretize the bath into modes, evolve
// system + truncated bath through one measurement interval (including the
// e^{+iH_S tau} rotation before the measurement), and measure the survival
// nonperturbatively.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qzeno/core.hpp"
#include "qzeno/decay.hpp"

namespace qzeno::bathsim {

struct BathMode {
    double omega{0.0}; // mode frequency
    double g{0.0};     // real coupling amplitude, g^2 = J(omega) * d_omega
};

enum class GridScheme { uniform, midpoint };

struct BathDiscretization {
    std::vector<BathMode> modes;
    GridScheme scheme{GridScheme::midpoint};
    double omega_max{0.0};

    double coupling_weight_sum() const; // sum_k g_k^2, approximates int J
};

BathDiscretization discretize(const SpectralDensity& bath, int mode_count, double omega_max,
                              GridScheme scheme = GridScheme::midpoint);

// Joint system + truncated-bath state, system index fastest.
struct TruncatedState {
    int sys_dim{0};
    int mode_count{0};
    int n_max{0};
    std::vector<std::complex<double>> amp;

    std::size_t dim() const noexcept { return amp.size(); }
    double norm() const;
};

enum class EvolveMethod {
    automatic,            // pick per family
    full,                 // state vector over (n_max+1)^M occupations
    decay_sector,         // exact single-excitation sector of the RWA decay model
    dephasing_factorized  // mode-by-mode conditional evolution (dephasing only)
};

struct SimOptions {
    int n_max{2};
    EvolveMethod method{EvolveMethod::automatic};
    double step_tol{1e-10};           // per-step propagation error target
    std::size_t max_dim{std::size_t{1} << 22}; // amplitude budget for the full path
};

// Survival probability of one measurement interval, starting from the
// prepared state with all modes in vacuum.
double single_interval_survival(const ModelSpec& model, const BathDiscretization& disc, double tau,
                                int n_max);
double single_interval_survival(const ModelSpec& model, const BathDiscretization& disc, double tau,
                                const SimOptions& opts);

struct OracleRow {
    double tau{0.0};
    double gamma_sim{0.0};
    double gamma_pert{0.0};
    double rel_gap{0.0};
    bool above_threshold{false};
};

struct OracleReport {
    std::vector<OracleRow> rows;
    double threshold{0.05};
    double max_gap{0.0};
    bool any_above_threshold{false};
    bool refinement_checked{false};
    double refinement_delta{0.0}; // max |Gamma_sim(M) - Gamma_sim(2M)| / Gamma_pert
    bool under_resolved{false};   // refinement shift exceeds the reported gap
};

// Per-tau comparison of the simulated decay rate -ln(s)/tau against the
// perturbative overlap integral.
OracleReport compare_to_perturbative(const ModelSpec& model, const BathDiscretization& disc,
                                     std::span<const double> tau_grid, int n_max,
                                     double threshold = 0.05, bool refine_check = true,
                                     const SimOptions& base_opts = {});

} // namespace qzeno::bathsim
