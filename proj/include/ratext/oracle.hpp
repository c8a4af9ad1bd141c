/*
   Copyright 2026 The ratext authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RATEXT_ORACLE_HPP
#define RATEXT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <lapacke.h>

#include "common.hpp"

// Independent numerical machinery used to cross-check every closed form in
// the library: a finite-difference bound-state solver with Richardson
// extrapolation, adaptive quadrature with tail truncation, and a five-point
// stencil residual for candidate eigenpairs. Nothing in this header depends
// on the family or extension code.

namespace ratext {

// Uniform grid with Dirichlet conditions at both ends.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;

    void validate() const {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw validation_error("grid: requires finite lo < hi");
        if (points < 64) throw validation_error("grid: requires >= 64 points");
    }
};

struct EigenResult {
    std::vector<double> energies;       // ascending
    std::vector<double> richardson_gap; // |coarse - fine| per level
};

namespace detail {

inline std::vector<double>
tridiag_lowest(const std::function<double(double)>& V, double lo, double hi,
               int points, int count) {
    const int n = points - 2; // interior nodes
    const double h = (hi - lo) / (points - 1);
    std::vector<double> d(n), e(n - 1, -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        const double x = lo + (i + 1) * h;
        const double val = V(x);
        if (!std::isfinite(val))
            throw numeric_error("potential not finite on the grid");
        d[i] = 2.0 / (h * h) + val;
    }
    std::vector<double> w(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    lapack_int m = 0, nsplit = 0;
    const lapack_int info = LAPACKE_dstebz(
        'I', 'E', n, 0.0, 0.0, 1, count, 0.0, d.data(), e.data(), &m, &nsplit,
        w.data(), iblock.data(), isplit.data());
    if (info != 0 || m < count)
        throw numeric_error("tridiagonal eigenvalue bisection failed");
    w.resize(count);
    return w;
}

} // namespace detail

// Lowest `count` Dirichlet eigenvalues of -psi'' + V psi on the grid, via
// second-order finite differences at N and 2N-1 points combined by
// Richardson extrapolation (h^2 error cancellation).
inline EigenResult solve_bound_states(const std::function<double(double)>& V,
                                      const GridSpec& g, int count) {
    g.validate();
    if (count < 1) throw validation_error("solve_bound_states: count < 1");
    if (count > g.points / 8)
        throw validation_error(
            "solve_bound_states: level count exceeds grid resolution");
    const std::vector<double> coarse =
        detail::tridiag_lowest(V, g.lo, g.hi, g.points, count);
    const std::vector<double> fine =
        detail::tridiag_lowest(V, g.lo, g.hi, 2 * g.points - 1, count);
    EigenResult r;
    r.energies.resize(count);
    r.richardson_gap.resize(count);
    for (int i = 0; i < count; ++i) {
        r.energies[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
        r.richardson_gap[i] = std::fabs(fine[i] - coarse[i]);
    }
    for (int i = 1; i < count; ++i)
        if (!(r.energies[i] >= r.energies[i - 1]))
            throw numeric_error("eigenvalues not ascending");
    return r;
}

namespace detail {

inline double quad_trampoline(double x, void* params) {
    return (*static_cast<std::function<double(double)>*>(params))(x);
}

inline void gsl_quiet() {
    static const auto once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

// Pulls an infinite endpoint in to where |f| has fallen below 1e-16 of the
// scanned peak, doubling the window until the outermost segment is silent.
inline void truncate_endpoints(const std::function<double(double)>& f,
                               double& lo, double& hi) {
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return;
    double a = lo_inf ? (hi_inf ? -32.0 : hi - 64.0) : lo;
    double b = hi_inf ? (lo_inf ? 32.0 : lo + 64.0) : hi;
    auto seg_max = [&](double s, double e) {
        double m = 0.0;
        for (int i = 0; i <= 256; ++i) {
            const double v = std::fabs(f(s + (e - s) * i / 256.0));
            if (std::isfinite(v)) m = std::max(m, v);
        }
        return m;
    };
    double peak = seg_max(a, b);
    if (peak == 0.0) peak = 1.0;
    if (hi_inf) {
        double edge = b;
        for (int it = 0; it < 48; ++it) {
            const double next = a + (edge - a) * 2.0;
            const double tail = seg_max(edge, next);
            peak = std::max(peak, tail);
            edge = next;
            if (tail <= 1e-16 * peak) break;
        }
        hi = edge;
    }
    if (lo_inf) {
        double edge = a;
        for (int it = 0; it < 48; ++it) {
            const double next = b - (b - edge) * 2.0;
            const double tail = seg_max(next, edge);
            peak = std::max(peak, tail);
            edge = next;
            if (tail <= 1e-16 * peak) break;
        }
        lo = edge;
    }
}

} // namespace detail

// Adaptive quadrature of f over (lo, hi); endpoints may be infinite, in
// which case the integrand is truncated where it decays below 1e-16 of its
// peak. Round-off-limited results (integrals that are zero to machine
// precision) are accepted; genuine non-convergence raises numeric_error.
inline double integrate(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol = 1e-10) {
    if (!(lo < hi)) throw validation_error("integrate: requires lo < hi");
    detail::gsl_quiet();
    double a = lo, b = hi;
    std::function<double(double)> fn = f;
    detail::truncate_endpoints(fn, a, b);
    gsl_function gf;
    gf.function = &detail::quad_trampoline;
    gf.params = &fn;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(8192);
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qags(&gf, a, b, 1e-300, rel_tol, 8192, ws,
                                      &result, &abserr);
    if (status != 0 && status != GSL_EROUND) {
        // The epsilon-algorithm mistakes cancellation-dominated integrals
        // (true value zero at working precision) for divergence. Accept the
        // result when it is negligible against the L1 mass of the integrand.
        std::function<double(double)> afn = [&fn](double x) {
            return std::fabs(fn(x));
        };
        gsl_function ga;
        ga.function = &detail::quad_trampoline;
        ga.params = &afn;
        double mass = 0.0, mass_err = 0.0;
        const int mstatus = gsl_integration_qags(&ga, a, b, 1e-300, 1e-6,
                                                 8192, ws, &mass, &mass_err);
        if ((mstatus == 0 || mstatus == GSL_EROUND) &&
            std::fabs(result) + abserr <= 1e-10 * mass)
            status = 0;
    }
    gsl_integration_workspace_free(ws);
    if (status != 0 && status != GSL_EROUND)
        throw numeric_error("quadrature did not converge");
    if (!std::isfinite(result))
        throw numeric_error("quadrature produced a non-finite value");
    return result;
}

// Max interior five-point-stencil residual of the eigenpair (E, psi),
// normalized by max|psi| * max(1, |E|):
//   max_i | -psi''(x_i) + (V(x_i) - E) psi(x_i) | / norm.
inline double schrodinger_residual(const std::function<double(double)>& V,
                                   double E,
                                   const std::function<double(double)>& psi,
                                   const GridSpec& g) {
    g.validate();
    const int n = g.points;
    const double h = (g.hi - g.lo) / (n - 1);
    std::vector<double> p(n);
    double pmax = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = psi(g.lo + i * h);
        if (!std::isfinite(p[i]))
            throw numeric_error("wavefunction not finite on the grid");
        pmax = std::max(pmax, std::fabs(p[i]));
    }
    if (pmax == 0.0) throw validation_error("wavefunction vanishes on grid");
    const double norm = pmax * std::max(1.0, std::fabs(E));
    double worst = 0.0;
    for (int i = 2; i < n - 2; ++i) {
        const double d2 = (-p[i + 2] + 16.0 * p[i + 1] - 30.0 * p[i] +
                           16.0 * p[i - 1] - p[i - 2]) /
                          (12.0 * h * h);
        const double x = g.lo + i * h;
        const double r = -d2 + (V(x) - E) * p[i];
        worst = std::max(worst, std::fabs(r));
    }
    return worst / norm;
}

// Support window of psi at relative mass threshold frac: the hull of scan
// points where psi^2 >= frac * max(psi^2).
struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

inline Window mass_window(const std::function<double(double)>& psi, double lo,
                          double hi, double frac, int scan_points = 40001) {
    std::vector<double> p2(scan_points);
    double best = 0.0;
    for (int i = 0; i < scan_points; ++i) {
        const double x = lo + (hi - lo) * i / (scan_points - 1);
        const double v = psi(x);
        p2[i] = std::isfinite(v) ? v * v : 0.0;
        best = std::max(best, p2[i]);
    }
    if (best == 0.0)
        throw numeric_error("mass_window: function vanishes on the scan");
    int first = 0, last = scan_points - 1;
    while (first < scan_points && p2[first] < frac * best) ++first;
    while (last >= 0 && p2[last] < frac * best) --last;
    Window w;
    w.lo = lo + (hi - lo) * first / (scan_points - 1);
    w.hi = lo + (hi - lo) * last / (scan_points - 1);
    return w;
}

// Residual grid policy: endpoints snapped outward to multiples of 1/16 so
// that h and every node x_i = lo + i h are exact doubles (points - 1 is a
// power of two), removing coordinate jitter from the stencil. min_lo > 0
// clamps the low end for half-line problems.
inline GridSpec dyadic_residual_grid(Window w, double min_lo =
                                         -std::numeric_limits<double>::infinity()) {
    double lo = std::max(w.lo, min_lo);
    double hi = std::max(w.hi, lo + 1.0);
    lo = std::floor(lo * 16.0) / 16.0;
    hi = std::ceil(hi * 16.0) / 16.0;
    if (min_lo > 0.0 && lo < 1.0 / 16.0) lo = 1.0 / 16.0;
    GridSpec g;
    g.lo = lo;
    g.hi = hi;
    g.points = (hi - lo <= 32.0) ? 16385 : 32769;
    return g;
}

} // namespace ratext

#endif
