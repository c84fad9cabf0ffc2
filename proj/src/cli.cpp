// cli.cpp — Run configuration, dataset emission, and the command entry points.

#include "qzeno/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"

namespace qzeno::cli {

namespace {

using nlohmann::json;

// wrong flag values / combinations; maps to exit status 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

double round_through(double v, int precision) {
    return std::strtod(format_number(v, precision).c_str(), nullptr);
}

ModelFamily family_from_string(const std::string& name) {
    if (name == "decay") return ModelFamily::population_decay;
    if (name == "dephasing") return ModelFamily::pure_dephasing;
    if (name == "general") return ModelFamily::general_spin_boson;
    if (name == "largespin") return ModelFamily::large_spin;
    throw UsageError("unknown family '" + name + "' (expected decay|dephasing|general|largespin)");
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw UsageError("grid needs at least 2 points and max > min");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    g.back() = hi;
    return g;
}

const char* regime_name(Regime r) { return r == Regime::zeno ? "zeno" : "anti-zeno"; }

std::string label_for_tau(const DecayCurve& curve, double tau) {
    if (curve.degenerate_flat) return "no-decay";
    for (const Segment& seg : curve.segments)
        if (tau <= seg.tau_hi || &seg == &curve.segments.back()) return regime_name(seg.label);
    return regime_name(curve.segments.back().label);
}

std::vector<std::pair<std::string, std::string>> param_echo(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> p;
    auto num = [&](double v) { return format_number(v, c.precision); };
    p.emplace_back("family", c.family);
    p.emplace_back("eps", num(c.eps));
    p.emplace_back("delta", num(c.delta));
    p.emplace_back("theta", num(c.theta));
    p.emplace_back("phi", num(c.phi));
    p.emplace_back("n_spins", std::to_string(c.n_spins));
    p.emplace_back("init", c.init);
    p.emplace_back("G", num(c.coupling_g));
    p.emplace_back("s", num(c.ohmicity_s));
    p.emplace_back("wc", num(c.cutoff_wc));
    p.emplace_back("temperature", c.zero_temp ? "zero" : ("beta=" + num(c.beta)));
    p.emplace_back("rel_tol", num(c.rel_tol));
    p.emplace_back("units", "dimensionless, hbar=1");
    return p;
}

void write_stream_or_file(const Table& table, const RunConfig& cfg, std::ostream& fallback) {
    if (cfg.out.empty()) {
        write_table(table, cfg, fallback);
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
    write_table(table, cfg, os);
}

// ------------------------------ figure catalog -------------------------------

struct FigureCurve {
    const char* name;
    double eps;
    double delta;
};

struct FigureDef {
    bool filter_figure;      // Q(omega) at fixed tau vs Gamma(tau)
    double tau_fixed;        // filter figures only
    double ohmicity;
    int n_spins;             // 0: single qubit, general family
    const char* init;        // jz | jx, large-spin figures only
    FigureCurve curves[3];
};

// every figure carries the same three parameter triples; the single-qubit
// figures use theta = pi/2, phi = 0
const FigureDef* figure_def(int id) {
    static const FigureDef defs[7] = {
        {true, 2.0, 1.0, 0, "", {{"population_decay", 0.0, 1.0}, {"pure_dephasing", 1.0, 0.0}, {"general", 2.0, 1.0}}},
        {true, 1.0, 1.0, 0, "", {{"population_decay", 0.0, 1.0}, {"pure_dephasing", 1.0, 0.0}, {"general", 2.0, 1.0}}},
        {false, 0.0, 1.0, 0, "", {{"population_decay", 0.0, 2.0}, {"pure_dephasing", 2.0, 0.0}, {"general", 2.0, 2.0}}},
        {false, 0.0, 0.8, 0, "", {{"population_decay", 0.0, 2.0}, {"pure_dephasing", 2.0, 0.0}, {"general", 2.0, 2.0}}},
        {false, 0.0, 2.0, 0, "", {{"population_decay", 0.0, 2.0}, {"pure_dephasing", 2.0, 0.0}, {"general", 2.0, 2.0}}},
        {false, 0.0, 0.8, 20, "jz", {{"population_decay", 0.0, 2.0}, {"pure_dephasing", 2.0, 0.0}, {"general", 2.0, 2.0}}},
        {false, 0.0, 1.5, 20, "jx", {{"population_decay", 0.0, 2.0}, {"pure_dephasing", 2.0, 0.0}, {"general", 2.0, 2.0}}},
    };
    if (id < 1 || id > 7) return nullptr;
    return &defs[id - 1];
}

} // namespace

// ------------------------------- run config ----------------------------------

ModelSpec RunConfig::to_model() const {
    const ModelFamily family_id = family_from_string(lower(family));
    const SystemParams sys(eps, delta);
    const SpectralDensity bath(coupling_g, ohmicity_s, cutoff_wc);
    const Temperature temp = zero_temp ? Temperature::zero() : Temperature::finite(beta);

    StatePrep prep = StatePrep::qubit(theta, phi);
    if (family_id == ModelFamily::large_spin) {
        const std::string axis = lower(init);
        if (axis == "jz")
            prep = StatePrep::large_spin_jz(n_spins);
        else if (axis == "jx")
            prep = StatePrep::large_spin_jx(n_spins);
        else
            throw UsageError("unknown init '" + init + "' (expected jz|jx)");
    } else if (family_id == ModelFamily::population_decay) {
        prep = StatePrep::qubit(0.0, 0.0);
    }
    return ModelSpec(family_id, sys, prep, temp, bath);
}

quad::QuadConfig RunConfig::to_quad() const {
    quad::QuadConfig cfg;
    cfg.rel_tol = rel_tol;
    return cfg;
}

RunConfig normalize(RunConfig cfg) {
    cfg.family = lower(cfg.family);
    cfg.init = lower(cfg.init);
    cfg.format = lower(cfg.format);
    if (cfg.zero_temp) cfg.beta = 0.0;
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    const RunConfig c = normalize(cfg);
    json j;
    j["family"] = c.family;
    j["eps"] = c.eps;
    j["delta"] = c.delta;
    j["theta"] = c.theta;
    j["phi"] = c.phi;
    j["n_spins"] = c.n_spins;
    j["init"] = c.init;
    j["G"] = c.coupling_g;
    j["s"] = c.ohmicity_s;
    j["wc"] = c.cutoff_wc;
    j["zero_temp"] = c.zero_temp;
    j["beta"] = c.beta;
    j["tau"] = c.tau;
    j["tau_min"] = c.tau_min;
    j["tau_max"] = c.tau_max;
    j["tau_points"] = c.tau_points;
    j["omega_min"] = c.omega_min;
    j["omega_max"] = c.omega_max;
    j["omega_points"] = c.omega_points;
    j["format"] = c.format;
    j["out"] = c.out;
    j["precision"] = c.precision;
    j["rel_tol"] = c.rel_tol;
    j["modes"] = c.modes;
    j["n_max"] = c.n_max;
    j["max_gap"] = c.max_gap;
    return j.dump(2);
}

RunConfig parse_config(const std::string& text) {
    const json j = json::parse(text);
    RunConfig c;
    c.family = j.value("family", c.family);
    c.eps = j.value("eps", c.eps);
    c.delta = j.value("delta", c.delta);
    c.theta = j.value("theta", c.theta);
    c.phi = j.value("phi", c.phi);
    c.n_spins = j.value("n_spins", c.n_spins);
    c.init = j.value("init", c.init);
    c.coupling_g = j.value("G", c.coupling_g);
    c.ohmicity_s = j.value("s", c.ohmicity_s);
    c.cutoff_wc = j.value("wc", c.cutoff_wc);
    c.zero_temp = j.value("zero_temp", c.zero_temp);
    c.beta = j.value("beta", c.beta);
    c.tau = j.value("tau", c.tau);
    c.tau_min = j.value("tau_min", c.tau_min);
    c.tau_max = j.value("tau_max", c.tau_max);
    c.tau_points = j.value("tau_points", c.tau_points);
    c.omega_min = j.value("omega_min", c.omega_min);
    c.omega_max = j.value("omega_max", c.omega_max);
    c.omega_points = j.value("omega_points", c.omega_points);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    c.precision = j.value("precision", c.precision);
    c.rel_tol = j.value("rel_tol", c.rel_tol);
    c.modes = j.value("modes", c.modes);
    c.n_max = j.value("n_max", c.n_max);
    c.max_gap = j.value("max_gap", c.max_gap);
    return normalize(c);
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return emit_config(a) == emit_config(b);
}

// --------------------------------- tables ------------------------------------

void write_csv(const Table& table, std::ostream& os, int precision) {
    for (const auto& [key, value] : table.params) os << "# " << key << " = " << value << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::holds_alternative<double>(row[i]))
                os << format_number(std::get<double>(row[i]), precision);
            else
                os << std::get<std::string>(row[i]);
            os << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(const Table& table, std::ostream& os, int precision) {
    json j;
    json params = json::object();
    for (const auto& [key, value] : table.params) params[key] = value;
    j["params"] = params;
    j["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell))
                r.push_back(round_through(std::get<double>(cell), precision));
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void write_table(const Table& table, const RunConfig& cfg, std::ostream& os) {
    const std::string fmt = lower(cfg.format);
    if (fmt == "csv")
        write_csv(table, os, cfg.precision);
    else if (fmt == "json")
        write_json(table, os, cfg.precision);
    else
        throw UsageError("unknown format '" + cfg.format + "' (expected csv|json)");
}

// -------------------------------- commands ------------------------------------

namespace {

Table make_filter_table(const RunConfig& c) {
    const ModelSpec model = c.to_model();
    const std::vector<double> grid = linear_grid(c.omega_min, c.omega_max, c.omega_points);

    std::vector<double> q(grid.size());
    detail::parallel_for(grid.size(),
                         [&](std::size_t i) { q[i] = model_filter(grid[i], c.tau, model); });

    Table t;
    t.columns = {"omega", "Q"};
    t.params = param_echo(c);
    t.params.emplace_back("tau", format_number(c.tau, c.precision));
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], q[i]});
    return t;
}

std::pair<Table, DecayCurve> make_gamma_table(const RunConfig& c) {
    const ModelSpec model = c.to_model();
    const std::vector<double> grid = log_spaced(c.tau_min, c.tau_max, c.tau_points);
    const DecayCurve curve = gamma_curve(grid, model, c.to_quad());

    Table t;
    t.columns = {"tau", "Gamma", "label"};
    t.params = param_echo(c);
    for (std::size_t i = 0; i < curve.taus.size(); ++i)
        t.rows.push_back({curve.taus[i], curve.gammas[i], label_for_tau(curve, curve.taus[i])});
    return {std::move(t), curve};
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace

int cmd_filter(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig c = normalize(cfg);
        write_stream_or_file(make_filter_table(c), c, out);
        return exit_ok;
    });
}

int cmd_gamma(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig c = normalize(cfg);
        write_stream_or_file(make_gamma_table(c).first, c, out);
        return exit_ok;
    });
}

int cmd_regimes(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig c = normalize(cfg);
        auto [gamma_table, curve] = make_gamma_table(c);

        Table t;
        t.columns = {"kind", "tau_lo", "tau_hi", "label"};
        t.params = gamma_table.params;
        if (curve.degenerate_flat) {
            t.params.emplace_back("note", "no decay: Gamma is identically zero on the grid");
        }
        for (const Segment& seg : curve.segments)
            t.rows.push_back({std::string("segment"), seg.tau_lo, seg.tau_hi,
                              std::string(regime_name(seg.label))});
        for (const Extremum& ex : curve.extrema)
            t.rows.push_back({std::string("extremum"), ex.tau, ex.tau,
                              std::string(ex.kind == ExtremumKind::maximum ? "maximum" : "minimum")});
        write_stream_or_file(t, c, out);
        return exit_ok;
    });
}

int cmd_figure(int figure_id, const RunConfig& cfg, std::ostream& err) {
    return guarded(err, [&] {
        const FigureDef* def = figure_def(figure_id);
        if (!def) throw UsageError("unknown figure id " + std::to_string(figure_id) + " (expected 1..7)");

        RunConfig base = normalize(cfg);
        base.coupling_g = 0.01;
        base.cutoff_wc = 10.0;
        base.zero_temp = true;
        base.ohmicity_s = def->ohmicity;
        base.theta = 1.5707963267948966;
        base.phi = 0.0;
        if (def->filter_figure) base.tau = def->tau_fixed;
        if (def->n_spins > 0) {
            base.family = "largespin";
            base.n_spins = def->n_spins;
            base.init = def->init;
        } else {
            base.family = "general";
        }

        const std::filesystem::path dir =
            base.out.empty() ? std::filesystem::path("figure" + std::to_string(figure_id))
                             : std::filesystem::path(base.out);
        std::filesystem::create_directories(dir);

        const std::string ext = base.format == "json" ? ".json" : ".csv";
        json manifest;
        manifest["figure"] = figure_id;
        manifest["kind"] = def->filter_figure ? "filter_curves" : "gamma_curves";
        manifest["columns"] = def->filter_figure ? json::array({"omega", "Q"})
                                                 : json::array({"tau", "Gamma", "label"});
        json curves = json::array();

        for (const FigureCurve& curve : def->curves) {
            RunConfig c = base;
            c.eps = curve.eps;
            c.delta = curve.delta;
            c.out = (dir / (std::string(curve.name) + ext)).string();
            const Table table = def->filter_figure ? make_filter_table(c) : make_gamma_table(c).first;
            std::ofstream os(c.out, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open output file '" + c.out + "'");
            write_table(table, c, os);

            json entry;
            entry["name"] = curve.name;
            entry["file"] = std::string(curve.name) + ext;
            RunConfig echoed = c;
            echoed.out = std::string(curve.name) + ext; // keep the manifest relocatable
            entry["params"] = json::parse(emit_config(echoed));
            curves.push_back(std::move(entry));
        }
        manifest["curves"] = std::move(curves);

        std::ofstream ms(dir / "manifest.json", std::ios::binary);
        if (!ms) throw std::runtime_error("cannot write manifest");
        ms << manifest.dump(2) << "\n";
        return exit_ok;
    });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig c = normalize(cfg);
        const ModelSpec model = c.to_model();
        const bathsim::BathDiscretization disc =
            bathsim::discretize(model.bath, c.modes, 10.0 * model.bath.cutoff_wc);
        const std::vector<double> grid = linear_grid(c.tau_min, c.tau_max, c.tau_points);

        const bathsim::OracleReport report =
            bathsim::compare_to_perturbative(model, disc, grid, c.n_max, c.max_gap);

        Table t;
        t.columns = {"tau", "gamma_sim", "gamma_pert", "rel_gap", "above_threshold"};
        t.params = param_echo(c);
        t.params.emplace_back("modes", std::to_string(c.modes));
        t.params.emplace_back("n_max", std::to_string(c.n_max));
        t.params.emplace_back("max_gap", format_number(c.max_gap, c.precision));
        if (report.refinement_checked) {
            t.params.emplace_back("refinement_delta", format_number(report.refinement_delta, c.precision));
            t.params.emplace_back("under_resolved", report.under_resolved ? "true" : "false");
        }
        for (const bathsim::OracleRow& row : report.rows)
            t.rows.push_back({row.tau, row.gamma_sim, row.gamma_pert, row.rel_gap,
                              std::string(row.above_threshold ? "yes" : "no")});
        write_stream_or_file(t, c, out);
        return report.any_above_threshold ? exit_failure : exit_ok;
    });
}

} // namespace qzeno::cli
