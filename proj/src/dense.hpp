// dense.hpp — Small dense symmetric eigensolver (cyclic Jacobi) and helpers
// for propagating with e^{-iHt} built from a spectral decomposition. Sizes
// here are tiny (system blocks, single modes, excitation sectors), so O(n^3)
// sweeps are fine and the sweep order keeps results deterministic.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qzeno::detail {

using cdouble = std::complex<double>;

// Eigendecomposition of a real symmetric matrix (row-major n x n).
// On return `vals[j]` and column j of `vecs` hold the j-th pair, ascending.
inline void jacobi_eigh(std::vector<double> a, int n, std::vector<double>& vals,
                        std::vector<double>& vecs) {
    if (n <= 0 || static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("jacobi_eigh: bad dimensions");

    vecs.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) vecs[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto at = [&](std::vector<double>& m, int r, int c) -> double& {
        return m[static_cast<std::size_t>(r) * n + c];
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
        if (off < 1e-30 * (1.0 + std::fabs(at(a, 0, 0)))) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (apq == 0.0) continue;
                const double theta = 0.5 * (at(a, q, q) - at(a, p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = at(vecs, k, p), vkq = at(vecs, k, q);
                    at(vecs, k, p) = c * vkp - s * vkq;
                    at(vecs, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    vals.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = at(a, i, i);

    // sort ascending (insertion sort keeps it simple and stable)
    for (int i = 1; i < n; ++i) {
        const double v = vals[static_cast<std::size_t>(i)];
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = at(vecs, k, i);
        int j = i - 1;
        while (j >= 0 && vals[static_cast<std::size_t>(j)] > v) {
            vals[static_cast<std::size_t>(j + 1)] = vals[static_cast<std::size_t>(j)];
            for (int k = 0; k < n; ++k) at(vecs, k, j + 1) = at(vecs, k, j);
            --j;
        }
        vals[static_cast<std::size_t>(j + 1)] = v;
        for (int k = 0; k < n; ++k) at(vecs, k, j + 1) = col[static_cast<std::size_t>(k)];
    }
}

// y = exp(sign * i * H * t) x for real symmetric H given by its decomposition.
inline void apply_exp_i_h(const std::vector<double>& vals, const std::vector<double>& vecs, int n,
                          double t, int sign, const std::vector<cdouble>& x,
                          std::vector<cdouble>& y) {
    std::vector<cdouble> proj(static_cast<std::size_t>(n), cdouble{0.0, 0.0});
    for (int j = 0; j < n; ++j) {
        cdouble acc{0.0, 0.0};
        for (int k = 0; k < n; ++k)
            acc += vecs[static_cast<std::size_t>(k) * n + j] * x[static_cast<std::size_t>(k)];
        proj[static_cast<std::size_t>(j)] =
            acc * std::exp(cdouble{0.0, static_cast<double>(sign) * vals[static_cast<std::size_t>(j)] * t});
    }
    y.assign(static_cast<std::size_t>(n), cdouble{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            acc += vecs[static_cast<std::size_t>(k) * n + j] * proj[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(k)] = acc;
    }
}

} // namespace qzeno::detail
