// cli.hpp — Command-level entry points shared by the command-line tool and the
// tests: run configuration, dataset emission in CSV/JSON, and the figure
// reproduction catalog.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qzeno/bathsim.hpp"
#include "qzeno/decay.hpp"

namespace qzeno::cli {

// Flat, parseable mirror of ModelSpec + QuadConfig + output options.
struct RunConfig {
    std::string family{"general"}; // decay | dephasing | general | largespin
    double eps{0.0};
    double delta{2.0};
    double theta{1.5707963267948966};
    double phi{0.0};
    int n_spins{1};
    std::string init{"jz"}; // jz | jx
    double coupling_g{0.01};
    double ohmicity_s{1.0};
    double cutoff_wc{10.0};
    bool zero_temp{true};
    double beta{0.0}; // used when zero_temp is false
    double tau{1.0};
    double tau_min{0.02};
    double tau_max{3.0};
    int tau_points{150};
    double omega_min{0.0};
    double omega_max{8.0};
    int omega_points{400};
    std::string format{"csv"}; // csv | json
    std::string out{};         // empty: stdout (a directory for figure datasets)
    int precision{9};
    double rel_tol{1e-8};
    int modes{80};
    int n_max{2};
    double max_gap{0.05};

    ModelSpec to_model() const;
    quad::QuadConfig to_quad() const;
};

// canonical textual form (lower-cased enums, defaulted fields filled in)
RunConfig normalize(RunConfig cfg);

std::string emit_config(const RunConfig& cfg);      // JSON text
RunConfig parse_config(const std::string& text);    // inverse of emit_config

bool operator==(const RunConfig& a, const RunConfig& b);

// A self-describing table: column names plus the full parameter echo.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::variant<double, std::string>>> rows;
    std::vector<std::pair<std::string, std::string>> params;
};

void write_csv(const Table& table, std::ostream& os, int precision);
void write_json(const Table& table, std::ostream& os, int precision);
void write_table(const Table& table, const RunConfig& cfg, std::ostream& os);

// exit-status contract: 0 success, 1 validation/threshold failure, 2 usage error
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

int cmd_filter(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gamma(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_regimes(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_figure(int figure_id, const RunConfig& cfg, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace qzeno::cli
