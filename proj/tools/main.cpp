// main.cpp — qzeno command-line tool: filter curves, decay-rate curves, regime
// classification, figure-reproduction datasets, and exact-oracle comparisons.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qzeno/cli.hpp"

namespace {

using qzeno::cli::RunConfig;

void add_model_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--family", cfg.family, "model family: decay|dephasing|general|largespin");
    app->add_option("--eps", cfg.eps, "level spacing epsilon");
    app->add_option("--delta", cfg.delta, "tunneling amplitude Delta");
    app->add_option("--theta", cfg.theta, "preparation polar angle (radians)");
    app->add_option("--phi", cfg.phi, "preparation azimuth (radians)");
    app->add_option("--nspins", cfg.n_spins, "particle count for the large-spin family");
    app->add_option("--init", cfg.init, "large-spin initial state: jz|jx");
    app->add_option("--G", cfg.coupling_g, "bath coupling strength G");
    app->add_option("--s", cfg.ohmicity_s, "bath Ohmicity exponent s");
    app->add_option("--wc", cfg.cutoff_wc, "bath cutoff frequency");
    auto* beta = app->add_option_function<double>(
        "--beta",
        [&cfg](double b) {
            cfg.beta = b;
            cfg.zero_temp = false;
        },
        "inverse temperature (finite-temperature bath)");
    app->add_flag_callback(
           "--zero-temp", [&cfg]() { cfg.zero_temp = true; }, "zero-temperature bath (default)")
        ->excludes(beta);
    app->add_option("--rel-tol", cfg.rel_tol, "relative quadrature tolerance");
}

void add_output_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--format", cfg.format, "output format: csv|json");
    app->add_option("--out", cfg.out, "output path (default: stdout)");
    app->add_option("--precision", cfg.precision, "significant digits in output");
}

void add_tau_grid_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--tau-min", cfg.tau_min, "smallest measurement interval");
    app->add_option("--tau-max", cfg.tau_max, "largest measurement interval");
    app->add_option("--tau-points", cfg.tau_points, "number of tau grid points");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-modified decay rates for spin-boson models"};
    app.require_subcommand(1);

    RunConfig filter_cfg, gamma_cfg, regimes_cfg, figure_cfg, oracle_cfg;
    int figure_id = 1;

    CLI::App* filter = app.add_subcommand("filter", "filter function Q(omega, tau) over an omega grid");
    add_model_flags(filter, filter_cfg);
    add_output_flags(filter, filter_cfg);
    filter->add_option("--tau", filter_cfg.tau, "measurement interval");
    filter->add_option("--omega-min", filter_cfg.omega_min, "smallest frequency");
    filter->add_option("--omega-max", filter_cfg.omega_max, "largest frequency");
    filter->add_option("--omega-points", filter_cfg.omega_points, "number of omega grid points");

    CLI::App* gamma = app.add_subcommand("gamma", "decay rate Gamma(tau) with regime labels");
    add_model_flags(gamma, gamma_cfg);
    add_output_flags(gamma, gamma_cfg);
    add_tau_grid_flags(gamma, gamma_cfg);

    CLI::App* regimes = app.add_subcommand("regimes", "Zeno/anti-Zeno segments and extrema");
    add_model_flags(regimes, regimes_cfg);
    add_output_flags(regimes, regimes_cfg);
    add_tau_grid_flags(regimes, regimes_cfg);

    CLI::App* figure = app.add_subcommand("figure", "emit a named figure dataset directory");
    figure->add_option("id", figure_id, "figure id (1..7)")->required();
    add_output_flags(figure, figure_cfg);

    CLI::App* oracle = app.add_subcommand("oracle", "compare exact bath simulation to the overlap integral");
    oracle_cfg.tau_min = 0.2;
    oracle_cfg.tau_max = 2.0;
    oracle_cfg.tau_points = 7;
    oracle_cfg.family = "dephasing";
    add_model_flags(oracle, oracle_cfg);
    add_output_flags(oracle, oracle_cfg);
    add_tau_grid_flags(oracle, oracle_cfg);
    oracle->add_option("--modes", oracle_cfg.modes, "bath modes in the discretization");
    oracle->add_option("--nmax", oracle_cfg.n_max, "per-mode occupation cutoff");
    oracle->add_option("--max-gap", oracle_cfg.max_gap, "relative gap threshold for exit status");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qzeno::cli::exit_usage;
    }

    if (filter->parsed()) return qzeno::cli::cmd_filter(filter_cfg, std::cout, std::cerr);
    if (gamma->parsed()) return qzeno::cli::cmd_gamma(gamma_cfg, std::cout, std::cerr);
    if (regimes->parsed()) return qzeno::cli::cmd_regimes(regimes_cfg, std::cout, std::cerr);
    if (figure->parsed()) return qzeno::cli::cmd_figure(figure_id, figure_cfg, std::cerr);
    if (oracle->parsed()) return qzeno::cli::cmd_oracle(oracle_cfg, std::cout, std::cerr);
    return qzeno::cli::exit_usage;
}
