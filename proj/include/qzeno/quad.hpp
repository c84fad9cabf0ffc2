// quad.hpp — Adaptive 1D quadrature on finite and exponentially cut-off
// semi-infinite intervals, plus the nested 2D scheme for ordered double
// integrals over the triangle 0 <= t' <= t <= tau.
//
// The panel rule is the embedded Gauss(7)/Kronrod(15) pair. Refinement is
// worst-panel-first with deterministic tie breaking, and the final summation
// runs left to right, so results are bit-reproducible at fixed config.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qzeno/core.hpp"

namespace qzeno::quad {

struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_panels = 10000; // subdivision budget (leaf count)
    double tail_cut = 30.0; // semi-infinite domain is truncated at tail_cut * wc
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
};

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1], positive half.
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double gk_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double err;
    bool refinable;
};

// One Gauss-Kronrod pass over [a, b] with the QUADPACK error heuristic.
template <class F>
Panel gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_nodes[i];
        fv[i] = f(c - dx);
        fv[14 - i] = f(c + dx);
    }
    for (double v : fv)
        if (!std::isfinite(v)) throw EvaluationError("integrand produced a non-finite value");

    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double pair = (i == 7) ? fv[7] : fv[i] + fv[14 - i];
        resk += gk_weights[i] * pair;
        resabs += gk_weights[i] * ((i == 7) ? std::fabs(fv[7]) : std::fabs(fv[i]) + std::fabs(fv[14 - i]));
        if (i % 2 == 1) resg += gauss_weights[i / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double w = gk_weights[i];
        if (i == 7)
            resasc += w * std::fabs(fv[7] - mean);
        else
            resasc += w * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));
    }

    double err = std::fabs((resk - resg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, eps50);

    return Panel{a, b, resk * h, err, true};
}

// Worst-panel-first adaptive driver. Panels with error below `noise_floor`
// are treated as converged (their estimate is dominated by noise in f, e.g.
// from an inner quadrature).
template <class F>
QuadResult adaptive(F&& f, double a, double b, double initial_width, const QuadConfig& cfg,
                    double noise_floor = 0.0) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (!(b > a)) return {0.0, 0.0, 0};

    const int budget = std::max(cfg.max_panels, 16);
    int n0 = static_cast<int>(std::ceil((b - a) / std::max(initial_width, 1e-300)));
    n0 = std::clamp(n0, 1, budget);

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(n0) + 64);
    for (int i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / n0;
        const double pb = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
        panels.push_back(gk15(f, pa, pb));
    }

    auto totals = [&panels]() {
        double v = 0.0, e = 0.0;
        for (const Panel& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair<double, double>{v, e};
    };

    const double min_width = 16.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::fabs(a), std::fabs(b), 1.0});

    for (;;) {
        auto [total, toterr] = totals();
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
        if (toterr <= target) break;

        // deterministic worst-panel pick: strictly larger error wins, ties by order
        int worst = -1;
        double worst_err = noise_floor;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].refinable && panels[i].err > worst_err) {
                worst_err = panels[i].err;
                worst = static_cast<int>(i);
            }
        }
        if (worst < 0) {
            // everything left is noise-limited or unsplittable
            if (noise_floor > 0.0 && toterr <= 10.0 * target) break;
            throw AccuracyError("quadrature tolerance not reached (no refinable panel left)", total, toterr);
        }
        if (static_cast<int>(panels.size()) + 1 > budget)
            throw AccuracyError("quadrature panel budget exhausted", total, toterr);

        Panel p = panels[static_cast<std::size_t>(worst)];
        if (p.b - p.a < min_width) {
            panels[static_cast<std::size_t>(worst)].refinable = false;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        panels[static_cast<std::size_t>(worst)] = gk15(f, p.a, mid);
        panels.push_back(gk15(f, mid, p.b));
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0, errsum = 0.0;
    for (const Panel& p : panels) {
        const double y = p.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        errsum += p.err;
    }
    return {sum, errsum, static_cast<int>(panels.size())};
}

} // namespace detail

// Integral of f over [a, b]. `osc_scale` is the largest oscillation frequency
// present in f; the initial panelling resolves it with width <= pi/(2*osc).
template <class F>
QuadResult integrate_interval(F&& f, double a, double b, double osc_scale, const QuadConfig& cfg = {}) {
    const double osc = std::max(osc_scale, 1e-12);
    const double width = 1.5707963267948966 / osc; // pi/(2*osc)
    return detail::adaptive(f, a, b, width, cfg);
}

// Integral of f over [0, inf) against an exponentially cut-off integrand with
// scale wc; the domain is truncated at cfg.tail_cut * wc.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double wc, double osc_scale, const QuadConfig& cfg = {}) {
    if (!(wc > 0.0)) throw std::invalid_argument("integrate_semi_infinite requires wc > 0");
    return integrate_interval(f, 0.0, cfg.tail_cut * wc, osc_scale, cfg);
}

// Ordered double integral  int_0^tau dt int_0^t dt' g(t, t')  by nested
// adaptive quadrature. The inner initial step is bounded by pi/(10*osc_scale),
// and the inner/outer tolerances are split so the combined error meets cfg.
template <class G>
QuadResult integrate_triangle(G&& g, double tau, double osc_scale, const QuadConfig& cfg = {}) {
    if (!(tau >= 0.0)) throw std::invalid_argument("integrate_triangle requires tau >= 0");
    if (tau == 0.0) return {0.0, 0.0, 0};

    const double osc = std::max(osc_scale, 1e-12);
    const double inner_width = 0.3141592653589793 / osc; // pi/(10*osc)
    const double outer_width = 1.5707963267948966 / osc;

    QuadConfig inner_cfg = cfg;
    inner_cfg.rel_tol = 0.5 * cfg.rel_tol;
    inner_cfg.abs_tol = 0.5 * cfg.abs_tol / std::max(tau, 1.0);

    QuadConfig outer_cfg = cfg;
    outer_cfg.rel_tol = 0.5 * cfg.rel_tol;
    outer_cfg.abs_tol = 0.5 * cfg.abs_tol;

    long inner_panels = 0;
    auto outer_integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        QuadResult r = detail::adaptive([&](double tp) { return g(t, tp); }, 0.0, t, inner_width, inner_cfg);
        inner_panels += r.panels_used;
        return r.value;
    };

    QuadResult res = detail::adaptive(outer_integrand, 0.0, tau, outer_width, outer_cfg,
                                      /*noise_floor=*/4.0 * inner_cfg.abs_tol);
    res.error_estimate += tau * inner_cfg.abs_tol;
    res.panels_used += static_cast<int>(std::min<long>(inner_panels, INT32_MAX - res.panels_used));
    return res;
}

} // namespace qzeno::quad
