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

#ifndef RATEXT_VERIFY_HPP
#define RATEXT_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "common.hpp"
#include "dbt.hpp"
#include "families.hpp"
#include "oracle.hpp"

// End-to-end verification driver: runs the full analytic-vs-numeric check
// pipeline for one extension case and for a standard matrix of cases.
// Construction errors become failed checks; nothing here throws for a
// failing case (only for malformed requests).

namespace ratext {

struct Tolerances {
    double state_residual = 1e-8;  // eigenstate stencil residual
    double rs_residual = 1e-9;     // Riccati residual of w_k and v_n
    double spectrum = 1e-5;        // absolute eigenvalue agreement
    double spectrum_floor = 1e-6;  // allowed dip below zero, strict cases
    double orthogonality = 1e-8;   // normalized Gram off-diagonals
    double superpartner = 1e-10;   // relative partner deviation
    double correction_fd = 1e-6;   // analytic vs FD derivative cross-check
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct VerificationReport {
    std::string case_id;
    std::vector<CheckResult> checks;
    bool overall = false;
};

// Default solver box per family; the half-line box grows with the highest
// requested level so the slowest-decaying state still fits.
inline GridSpec default_solver_grid(const FamilySpec& f, int count,
                                    int points = 4096) {
    GridSpec g;
    g.points = points;
    switch (f.kind) {
        case FamilyKind::ho:
            g.lo = -12.0;
            g.hi = 12.0;
            break;
        case FamilyKind::morse:
            g.lo = -6.0;
            g.hi = 12.0;
            break;
        case FamilyKind::erkc:
            g.lo = 1e-4;
            g.hi = std::max(80.0, 52.0 * (f.a + count) / f.gamma);
            break;
    }
    return g;
}

// Scan boxes: wide enough to capture all state mass at the 1e-12 level.
inline Window default_scan_box(const FamilySpec& f) {
    switch (f.kind) {
        case FamilyKind::ho: return {-14.0, 14.0};
        case FamilyKind::morse: return {-8.0, 18.0};
        case FamilyKind::erkc: return {1e-3, 600.0};
    }
    return {-1.0, 1.0};
}

// Narrower boxes for Riccati residual checks, keeping the potential scale
// small enough that double cancellation stays below the 1e-9 gate.
inline Window rs_residual_box(const FamilySpec& f) {
    switch (f.kind) {
        case FamilyKind::ho: return {-8.0, 8.0};
        case FamilyKind::morse: return {-4.0, 14.0};
        case FamilyKind::erkc: return {0.05, 200.0};
    }
    return {-1.0, 1.0};
}

// Residual grid for one closed-form eigenstate: mass window at 1e-12, low
// end clamped to 0.5 for fractional radial powers (unbounded curvature of
// x^{a-1} at the origin), then snapped to the exact dyadic lattice.
inline GridSpec residual_grid(const ClosedFormEigenstate& st,
                              double mass_frac = 1e-12) {
    const Window box = default_scan_box(st.family);
    auto psi = [&st](double x) { return st(x); };
    Window w = mass_window(psi, box.lo, box.hi, mass_frac);
    double min_lo = -std::numeric_limits<double>::infinity();
    if (st.family.kind == FamilyKind::erkc) {
        min_lo = 1e-3;
        const double p = st.family.a - 1.0;
        if (std::fabs(p - std::round(p)) > 1e-9) min_lo = 0.5;
    }
    return dyadic_residual_grid(w, min_lo);
}

namespace detail {

// Max Riccati residual over the box, excluding 1e-3-wide canonical
// neighborhoods of the denominator zeros.
inline double max_rs_residual(const RSFunction& w, Window box,
                              int grid = 400) {
    const std::vector<double> poles = domain_poles(w, box.lo, box.hi);
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = box.lo + (box.hi - box.lo) * (i + 0.5) / grid;
        const double gx = w.canonical_arg(x);
        bool near_pole = false;
        for (double p : poles)
            if (std::fabs(gx - w.canonical_arg(p)) < 1e-3) near_pole = true;
        if (near_pole) continue;
        worst = std::max(worst, std::fabs(w.rs_residual(x)));
    }
    return worst;
}

// 4th-order central-difference derivative for cross-checking the analytic
// derivative path.
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h = 1e-4) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 2.0 * h) - f(x - 2.0 * h)) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

// Gram entry of the orthogonal family. For morse the integral is computed
// in the reciprocal variable where the integrand decays exponentially;
// the value is identical to the z-form entry.
inline double gram_entry(const ExtendedPotential& ext,
                         const OrthogonalFamily& fam, int i, int j) {
    const FamilySpec& f = ext.family;
    if (f.kind == FamilyKind::morse) {
        const int m = ext.n / 2;
        const Polynomial D =
            laguerre_poly(ext.n, -2.0 * (f.a + 1.0 + ext.n), -1.0, "t");
        auto piece = [&](const std::string& label) {
            struct Part {
                Polynomial poly;
                double expo;
            };
            if (label == "-") return Part{Polynomial::constant(1.0, "t"), 0.0};
            const int k = std::stoi(label);
            return Part{m_polynomial(f.a, k, m),
                        static_cast<double>(k + 2 * m + 1)};
        };
        const auto pi = piece(fam.members[i].label);
        const auto pj = piece(fam.members[j].label);
        const double expo =
            2.0 * f.a + 4.0 * m + 1.0 - pi.expo - pj.expo;
        auto integrand = [&](double t) {
            if (!(t > 0.0)) return 0.0;
            const double d = D.eval<double>(t);
            return pi.poly(t) * pj.poly(t) *
                   std::exp(-t + expo * std::log(t)) / (d * d);
        };
        return integrate(integrand, 0.0,
                         std::numeric_limits<double>::infinity(), 1e-10);
    }
    auto integrand = [&](double x) {
        return fam.members[i].fn(x) * fam.members[j].fn(x) * fam.weight(x);
    };
    return integrate(integrand, fam.lo, fam.hi, 1e-10);
}

} // namespace detail

// Runs the full check pipeline for one case. k_max bounds the physical
// levels exercised; Morse clamps it to the bound set. grid_points sets the
// eigensolver resolution.
inline VerificationReport verify_case(const FamilySpec& f, int n, int k_max,
                                      const Tolerances& tol = {},
                                      bool non_conforming = false,
                                      int grid_points = 4096) {
    VerificationReport rep;
    rep.case_id = f.describe() + " n=" + std::to_string(n) +
                  " kmax=" + std::to_string(k_max);
    if (non_conforming) rep.case_id += " non-conforming";
    auto add = [&rep](std::string name, bool pass, double measured,
                      double tolerance, std::string note = "") {
        rep.checks.push_back(
            {std::move(name), pass, measured, tolerance, std::move(note)});
    };
    auto finish = [&rep]() {
        rep.overall = !rep.checks.empty();
        for (const auto& c : rep.checks) rep.overall = rep.overall && c.pass;
        return rep;
    };

    // 1. regularity: trichotomy + Sturm agreement (agreement enforced
    // inside regularity_check; disagreement would throw).
    RegularityVerdict verdict;
    try {
        verdict = regularity_check(f, n);
    } catch (const error& e) {
        add("regularity", false, 1.0, 0.0, e.what());
        return finish();
    }
    add("regularity", verdict.regular,
        static_cast<double>(verdict.sturm_domain_roots), 0.0, verdict.reason);
    if (!verdict.regular) return finish();

    int k_eff = k_max;
    if (const auto nb = bound_state_count(f))
        k_eff = std::min(k_max, *nb - 1);

    // 2. Riccati residuals of the physical and regularized functions.
    const Window rbox = rs_residual_box(f);
    try {
        for (int k = 0; k <= k_eff; ++k) {
            const RSFunction w = rs_physical(f, k);
            const double r = detail::max_rs_residual(w, rbox);
            add("riccati_w_" + std::to_string(k), r <= tol.rs_residual, r,
                tol.rs_residual);
        }
        const RSFunction v = rs_regularized(f, n);
        const double rv = detail::max_rs_residual(v, rbox);
        add("riccati_v", rv <= tol.rs_residual, rv, tol.rs_residual);
    } catch (const error& e) {
        add("riccati", false, 1.0, 0.0, e.what());
        return finish();
    }

    // 3. extension construction.
    ExtendedPotential ext;
    try {
        ext = extend(f, n);
        add("extension", true, 0.0, 0.0);
    } catch (const error& e) {
        add("extension", false, 1.0, 0.0, e.what());
        return finish();
    }

    // 4. analytic correction derivative vs finite differences.
    {
        auto vfun = [&ext](double x) { return ext.v.value(x); };
        double worst = 0.0;
        for (int i = 0; i < 17; ++i) {
            const double x = rbox.lo + (rbox.hi - rbox.lo) * (i + 0.5) / 17.0;
            const double ana = ext.v.derivative(x);
            const double fd = detail::fd_derivative(vfun, x);
            worst = std::max(worst, std::fabs(ana - fd) /
                                        (1.0 + std::fabs(ana)));
        }
        add("correction_fd", worst <= tol.correction_fd, worst,
            tol.correction_fd);
    }

    // 5. closed-form eigenstate residuals (including "-" when present).
    std::vector<int> levels;
    if (!ext.spectrum.strict) levels.push_back(-1);
    for (int k = 0; k <= k_eff; ++k) levels.push_back(k);
    auto Vext = [&ext](double x) { return ext.value(x); };
    for (int level : levels) {
        const std::string nm =
            "state_residual_" +
            (level < 0 ? std::string("minus") : std::to_string(level));
        try {
            const ClosedFormEigenstate st = extended_eigenstate(ext, level);
            const GridSpec g = residual_grid(st);
            const double r = schrodinger_residual(
                Vext, st.energy, [&st](double x) { return st(x); }, g);
            add(nm, r <= tol.state_residual, r, tol.state_residual);
        } catch (const error& e) {
            add(nm, false, 1.0, tol.state_residual, e.what());
        }
    }

    // 6. spectrum: level-by-level agreement (quasi-isospectral cases) or
    // the no-below-ground assertion (strict cases, where the fractional
    // origin power biases all FD eigenvalues far above the 1e-5 gate).
    try {
        if (!ext.spectrum.strict) {
            std::vector<double> expected;
            expected.push_back(ext.v.energy);
            for (int k = 0; k <= k_eff; ++k)
                expected.push_back(base_energy(f, k));
            const int count = static_cast<int>(expected.size());
            const GridSpec g = default_solver_grid(f, count, grid_points);
            const EigenResult er = solve_bound_states(Vext, g, count);
            double worst = 0.0;
            for (int i = 0; i < count; ++i)
                worst = std::max(worst,
                                 std::fabs(er.energies[i] - expected[i]));
            add("spectrum", worst <= tol.spectrum, worst, tol.spectrum);
        } else {
            const int count = k_eff + 1;
            const GridSpec g = default_solver_grid(f, count, grid_points);
            const EigenResult er = solve_bound_states(Vext, g, count);
            const double ground = er.energies[0];
            add("spectrum_floor", ground > -tol.spectrum_floor, ground,
                tol.spectrum_floor,
                "no eigenvalue below the original ground level");
        }
    } catch (const error& e) {
        add("spectrum", false, 1.0, tol.spectrum, e.what());
    }

    // 7. orthogonality of the attached family.
    try {
        const int km_orth = std::min(k_eff, 4);
        const OrthogonalFamily fam = orthogonal_family(ext, km_orth);
        const int sz = static_cast<int>(fam.members.size());
        std::vector<double> diag(sz);
        for (int i = 0; i < sz; ++i)
            diag[i] = detail::gram_entry(ext, fam, i, i);
        double worst = 0.0;
        for (int i = 0; i < sz; ++i)
            for (int j = i + 1; j < sz; ++j) {
                const double g = detail::gram_entry(ext, fam, i, j);
                worst = std::max(worst,
                                 std::fabs(g) / std::sqrt(diag[i] * diag[j]));
            }
        add("orthogonality", worst <= tol.orthogonality, worst,
            tol.orthogonality);
    } catch (const error& e) {
        add("orthogonality", false, 1.0, tol.orthogonality, e.what());
    }

    // 8. backward partner.
    try {
        const Superpartner sp = superpartner(ext);
        if (!sp.strict_case) {
            add("superpartner", sp.max_rel_deviation <= tol.superpartner,
                sp.max_rel_deviation, tol.superpartner);
        } else {
            add("superpartner_scan", sp.grid_regular,
                sp.grid_regular ? 0.0 : 1.0, 0.0,
                "partner potential regular on the scan grid");
        }
    } catch (const error& e) {
        add("superpartner", false, 1.0, tol.superpartner, e.what());
    }

    return finish();
}

struct MatrixEntry {
    FamilySpec family;
    int n = 0;
    int k_max = 0;
    bool expect_failure = false;
    bool non_conforming = false;
};

// Standard verification matrix: the documented instances of all three
// families plus the canonical negative test (odd-order oscillator).
inline std::vector<MatrixEntry> default_matrix() {
    std::vector<MatrixEntry> m;
    m.push_back({FamilySpec::ho(1.0), 2, 3});
    m.push_back({FamilySpec::ho(2.0), 2, 3});
    m.push_back({FamilySpec::ho(2.0), 4, 3});
    m.push_back({FamilySpec::morse(5.0, 1.0), 2, 3});
    m.push_back({FamilySpec::erkc(4.0, 2.0), 2, 3});
    m.push_back({FamilySpec::erkc(1.6, 2.0), 1, 2});
    m.push_back({FamilySpec::ho(2.0), 1, 0, true, true});
    return m;
}

struct MatrixResult {
    std::vector<MatrixEntry> entries;
    std::vector<VerificationReport> reports;
    bool all_pass = false; // positive cases pass, negative cases fail
};

inline MatrixResult verify_matrix(const std::vector<MatrixEntry>& entries,
                                  const Tolerances& tol = {},
                                  int grid_points = 4096) {
    MatrixResult mr;
    mr.entries = entries;
    mr.all_pass = true;
    for (const auto& e : entries) {
        VerificationReport r = verify_case(e.family, e.n, e.k_max, tol,
                                           e.non_conforming, grid_points);
        mr.all_pass =
            mr.all_pass && (e.expect_failure ? !r.overall : r.overall);
        mr.reports.push_back(std::move(r));
    }
    return mr;
}

// Line-oriented rendering. The csv form has one row per check plus a
// closing "overall" row whose measured value is the failed-check count.
inline std::string csv_header() {
    return "case_id,check,status,measured,tolerance\n";
}

inline void append_csv(std::string& out, const VerificationReport& r) {
    int failed = 0;
    for (const auto& c : r.checks) {
        out += r.case_id + "," + c.name + "," + (c.pass ? "pass" : "fail") +
               "," + num::g17(c.measured) + "," + num::g17(c.tolerance) +
               "\n";
        if (!c.pass) ++failed;
    }
    out += r.case_id + ",overall," + (r.overall ? "pass" : "fail") + "," +
           num::g17(static_cast<double>(failed)) + ",0\n";
}

inline void append_tree(std::string& out, const VerificationReport& r) {
    out += "case " + r.case_id + "\n";
    for (const auto& c : r.checks) {
        out += "  check " + c.name + "\n";
        out += std::string("    status ") + (c.pass ? "pass" : "fail") + "\n";
        out += "    measured " + num::g17(c.measured) + "\n";
        out += "    tolerance " + num::g17(c.tolerance) + "\n";
        if (!c.note.empty()) out += "    note " + c.note + "\n";
    }
    out += std::string("  overall ") + (r.overall ? "pass" : "fail") + "\n";
}

} // namespace ratext

#endif
