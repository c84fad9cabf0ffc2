// decay.hpp — Effective decay rate Gamma(tau), survival probability,
// Zeno/anti-Zeno regime classification, and the exact pure-dephasing solution.

#pragma once

#include <span>
#include <vector>

#include "qzeno/core.hpp"
#include "qzeno/filters.hpp"
#include "qzeno/quad.hpp"

namespace qzeno {

enum class ModelFamily { population_decay, pure_dephasing, general_spin_boson, large_spin };

// A fully specified measurement-modified decay problem.
struct ModelSpec {
    ModelFamily family{ModelFamily::general_spin_boson};
    SystemParams sys{};
    StatePrep prep{QubitPrep{}};
    Temperature T{Temperature::zero()};
    SpectralDensity bath{};

    ModelSpec() = default;
    ModelSpec(ModelFamily family, const SystemParams& sys, const StatePrep& prep,
              const Temperature& T, const SpectralDensity& bath);

    // decay model with the excited-state preparation fixed
    static ModelSpec population_decay(const SystemParams& sys, const Temperature& T,
                                      const SpectralDensity& bath);
};

// Filter Q(w, tau) of the model's family. The population-decay family uses the
// level spacing Omega = sqrt(eps^2 + delta^2) of the diagonalized system; the
// pure-dephasing family carries the sin^2(theta) preparation weight.
double model_filter(double omega, double tau, const ModelSpec& model,
                    const quad::QuadConfig& cfg = d_pair_default_config());

// Gamma(tau) = int_0^inf J(w) Q(w, tau) dw.
double effective_decay_rate(double tau, const ModelSpec& model, const quad::QuadConfig& cfg = {});

// S = exp(-Gamma N tau).
double survival_probability(const MeasurementProtocol& protocol, double gamma);

enum class Regime { zeno, anti_zeno };
enum class ExtremumKind { maximum, minimum };

struct Extremum {
    double tau{0.0};
    ExtremumKind kind{ExtremumKind::maximum};
};

struct Segment {
    double tau_lo{0.0};
    double tau_hi{0.0};
    Regime label{Regime::zeno};
};

struct RegimeClassification {
    std::vector<Extremum> extrema;
    std::vector<Segment> segments;
    bool degenerate_flat{false}; // Gamma is flat to within slope_eps everywhere
};

// Slope-sign classification over a Gamma(tau) grid; extrema are located by a
// local quadratic fit through the three points bracketing each sign change.
// Requires at least 5 grid points.
RegimeClassification classify_regimes(std::span<const double> taus, std::span<const double> gammas);

struct DecayCurve {
    std::vector<double> taus;
    std::vector<double> gammas;
    std::vector<Extremum> extrema;
    std::vector<Segment> segments;
    bool degenerate_flat{false};
};

// Gamma over a strictly increasing tau grid, plus regime classification.
// Grid points are evaluated independently (and possibly concurrently).
DecayCurve gamma_curve(std::span<const double> taus, const ModelSpec& model,
                       const quad::QuadConfig& cfg = {});

// Exact (nonperturbative) pure-dephasing decay rate:
//   gamma(tau) = int J(w) (4/w^2) (1 - cos(w tau)) coth(beta w / 2) dw,
//   Gamma(tau) = -(1/tau) ln[1 - (1 - e^{-gamma})/2].
double pure_dephasing_exact(double tau, const SpectralDensity& bath, const Temperature& T,
                            const quad::QuadConfig& cfg = {});

// log-spaced grid used for decay-curve datasets
std::vector<double> log_spaced(double lo, double hi, int n);

} // namespace qzeno
