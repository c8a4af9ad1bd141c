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

#ifndef RATEXT_FAMILIES_HPP
#define RATEXT_FAMILIES_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "classical.hpp"
#include "common.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

// The three shape-invariant base potentials, their bound-state ladder, the
// Riccati functions of physical levels, and the regularized Riccati
// functions obtained from the parameter symmetry. All three families are
// normalized so the ground level sits at zero energy.
//
//   oscillator:  V = omega^2 x^2 / 4 - omega / 2                on R
//   morse:       V = b^2 y^2 - (2a + alpha) b y + a^2           on R
//                with y = exp(-alpha x)
//   radial:      V = a(a-1)/x^2 - gamma/x + gamma^2/(4a^2)      on x > 0
//
// Level parameters: a_k = a - k alpha (morse), a_k = a + k (radial). Bound
// levels: E_k = k omega, a^2 - a_k^2, gamma^2/4 (1/a^2 - 1/a_k^2).

namespace ratext {

enum class FamilyKind { ho, morse, erkc };

struct FamilySpec {
    FamilyKind kind = FamilyKind::ho;
    double omega = 0.0;       // ho
    double a = 0.0;           // morse, erkc
    double b = 0.0;           // morse
    double alpha_scale = 1.0; // morse
    double gamma = 0.0;       // erkc

    static FamilySpec ho(double omega) {
        if (!(omega > 0.0))
            throw validation_error("oscillator requires omega > 0");
        FamilySpec f;
        f.kind = FamilyKind::ho;
        f.omega = omega;
        return f;
    }

    static FamilySpec morse(double a, double b, double alpha_scale = 1.0) {
        if (!(a > 0.0) || !(b > 0.0))
            throw validation_error("morse requires a > 0 and b > 0");
        if (!(alpha_scale > 0.0))
            throw validation_error("morse requires alpha_scale > 0");
        FamilySpec f;
        f.kind = FamilyKind::morse;
        f.a = a;
        f.b = b;
        f.alpha_scale = alpha_scale;
        return f;
    }

    static FamilySpec erkc(double a, double gamma) {
        if (!(a > 1.0)) throw validation_error("radial family requires a > 1");
        if (!(gamma > 0.0))
            throw validation_error("radial family requires gamma > 0");
        FamilySpec f;
        f.kind = FamilyKind::erkc;
        f.a = a;
        f.gamma = gamma;
        return f;
    }

    // Unvalidated construction; images of the parameter symmetry live
    // outside the physical ranges on purpose.
    static FamilySpec raw(FamilyKind kind, double omega, double a, double b,
                          double alpha_scale, double gamma) {
        FamilySpec f;
        f.kind = kind;
        f.omega = omega;
        f.a = a;
        f.b = b;
        f.alpha_scale = alpha_scale;
        f.gamma = gamma;
        return f;
    }

    double domain_lo() const {
        return kind == FamilyKind::erkc
                   ? 0.0
                   : -std::numeric_limits<double>::infinity();
    }
    double domain_hi() const { return std::numeric_limits<double>::infinity(); }

    bool in_domain(double x) const {
        return kind == FamilyKind::erkc ? x > 0.0 : std::isfinite(x);
    }

    std::string describe() const {
        switch (kind) {
            case FamilyKind::ho: return "ho omega=" + num::g17(omega);
            case FamilyKind::morse:
                return "morse a=" + num::g17(a) + " b=" + num::g17(b) +
                       " alpha=" + num::g17(alpha_scale);
            case FamilyKind::erkc:
                return "erkc a=" + num::g17(a) + " gamma=" + num::g17(gamma);
        }
        return "";
    }
};

inline double potential_value(const FamilySpec& f, double x) {
    switch (f.kind) {
        case FamilyKind::ho:
            return f.omega * f.omega / 4.0 * x * x - f.omega / 2.0;
        case FamilyKind::morse: {
            const double y = std::exp(-f.alpha_scale * x);
            return f.b * f.b * y * y -
                   (2.0 * f.a + f.alpha_scale) * f.b * y + f.a * f.a;
        }
        case FamilyKind::erkc: {
            if (!(x > 0.0))
                throw domain_error("radial potential requires x > 0");
            return f.a * (f.a - 1.0) / (x * x) - f.gamma / x +
                   f.gamma * f.gamma / (4.0 * f.a * f.a);
        }
    }
    throw validation_error("unknown family");
}

// Number of bound levels, or empty for families with infinitely many.
inline std::optional<int> bound_state_count(const FamilySpec& f) {
    if (f.kind == FamilyKind::morse)
        return static_cast<int>(std::floor(f.a / f.alpha_scale));
    return std::nullopt;
}

// Ladder energy E_k; k may be negative (formal below-ground levels used by
// the extension construction).
inline double base_energy(const FamilySpec& f, int k) {
    switch (f.kind) {
        case FamilyKind::ho: return k * f.omega;
        case FamilyKind::morse: {
            const double ak = f.a - k * f.alpha_scale;
            return f.a * f.a - ak * ak;
        }
        case FamilyKind::erkc: {
            const double ak = f.a + k;
            if (std::fabs(ak) < 1e-12)
                throw singular_energy_error(
                    "level parameter a+k vanishes; energy undefined");
            const double g2 = f.gamma * f.gamma;
            return g2 / (4.0 * f.a * f.a) - g2 / (4.0 * ak * ak);
        }
    }
    throw validation_error("unknown family");
}

// A Riccati function w with -w' + w^2 = V - E. Stored as an elementary base
// part plus the negative log-derivative of a polynomial D composed with the
// canonical variable:
//
//   w(x) = inv/x + lin*x + cst + cy*exp(-alpha x) - g'(x) D'(g(x))/D(g(x))
//
// where g is the canonical change of variable. Physical levels use the
// oscillator variable u = sqrt(omega/2) x or the natural variable directly;
// regularized functions use s = omega x^2/2 (oscillator) so that D stays a
// genuine polynomial with definite sign.
enum class CanonicalVar { none, ho_u, ho_s, morse_z, erkc_x };

struct RSFunction {
    FamilySpec family;
    double energy = 0.0;
    bool is_physical = false;
    int index = 0; // level k if physical, order n if regularized

    double inv = 0.0, lin = 0.0, cst = 0.0, cy = 0.0;
    CanonicalVar var = CanonicalVar::none;
    Polynomial D = Polynomial::constant(1.0);

    std::string base_text;

    // Canonical variable and its first two x-derivatives at x.
    void chain(double x, double& g, double& gp, double& gpp) const {
        switch (var) {
            case CanonicalVar::ho_u: {
                const double c = std::sqrt(family.omega / 2.0);
                g = c * x;
                gp = c;
                gpp = 0.0;
                return;
            }
            case CanonicalVar::ho_s:
                g = family.omega * x * x / 2.0;
                gp = family.omega * x;
                gpp = family.omega;
                return;
            case CanonicalVar::morse_z: {
                const double al = family.alpha_scale;
                const double z = 2.0 * family.b / al * std::exp(-al * x);
                g = z;
                gp = -al * z;
                gpp = al * al * z;
                return;
            }
            case CanonicalVar::erkc_x:
                g = x;
                gp = 1.0;
                gpp = 0.0;
                return;
            case CanonicalVar::none:
                g = x;
                gp = 0.0;
                gpp = 0.0;
                return;
        }
    }

    double canonical_arg(double x) const {
        double g, gp, gpp;
        chain(x, g, gp, gpp);
        return g;
    }

    double base_value(double x) const {
        double v = lin * x + cst;
        if (inv != 0.0) v += inv / x;
        if (cy != 0.0) v += cy * std::exp(-family.alpha_scale * x);
        return v;
    }

    double value(double x) const {
        double v = base_value(x);
        if (D.degree() >= 1) {
            double g, gp, gpp;
            chain(x, g, gp, gpp);
            v -= gp * D.derivative().eval<double>(g) / D.eval<double>(g);
        }
        return v;
    }

    double derivative(double x) const {
        double d = lin;
        if (inv != 0.0) d -= inv / (x * x);
        if (cy != 0.0)
            d -= family.alpha_scale * cy * std::exp(-family.alpha_scale * x);
        if (D.degree() >= 1) {
            double g, gp, gpp;
            chain(x, g, gp, gpp);
            const double den = D.eval<double>(g);
            const double r1 = D.derivative().eval<double>(g) / den;
            const double r2 = D.derivative().derivative().eval<double>(g) / den;
            d -= gpp * r1 + gp * gp * (r2 - r1 * r1);
        }
        return d;
    }

    // Residual of the Riccati equation -w' + w^2 - (V - E) at x.
    double rs_residual(double x) const {
        const double w = value(x);
        return -derivative(x) + w * w -
               (potential_value(family, x) - energy);
    }
};

// Riccati function of the physical level k (node-bearing for k >= 1).
inline RSFunction rs_physical(const FamilySpec& f, int k) {
    if (k < 0) throw validation_error("rs_physical: negative level");
    if (const auto nb = bound_state_count(f); nb && k >= *nb)
        throw no_such_level_error("no such bound state: level " +
                                  std::to_string(k) + " of " +
                                  std::to_string(*nb));
    RSFunction w;
    w.family = f;
    w.energy = base_energy(f, k);
    w.is_physical = true;
    w.index = k;
    switch (f.kind) {
        case FamilyKind::ho:
            w.lin = f.omega / 2.0;
            w.var = CanonicalVar::ho_u;
            w.D = hermite_poly(k, "u");
            w.base_text = "omega*x/2";
            break;
        case FamilyKind::morse: {
            const double ak = f.a - k * f.alpha_scale;
            w.cst = ak;
            w.cy = -f.b;
            w.var = CanonicalVar::morse_z;
            w.D = laguerre_poly(k, 2.0 * ak / f.alpha_scale, 1.0, "z");
            w.base_text = "a_k - b*exp(-alpha*x)";
            break;
        }
        case FamilyKind::erkc:
            w.inv = -f.a;
            w.cst = f.gamma / (2.0 * (f.a + k));
            w.var = CanonicalVar::erkc_x;
            w.D = laguerre_poly(k, 2.0 * f.a - 1.0, f.gamma / (f.a + k), "x");
            w.base_text = "-a/x + gamma/(2 a_k)";
            break;
    }
    return w;
}

// Regularized Riccati function of order n: the parameter-symmetry image of
// the level-n Riccati function, solving the same equation at the formal
// energy E_{-(n+1)}. Its denominator polynomial has definite sign on the
// domain exactly when regularity_check reports Regular; this constructor
// does not enforce that.
inline RSFunction rs_regularized(const FamilySpec& f, int n) {
    if (n < 0) throw validation_error("rs_regularized: negative order");
    RSFunction v;
    v.family = f;
    v.is_physical = false;
    v.index = n;
    switch (f.kind) {
        case FamilyKind::ho: {
            v.energy = -(n + 1.0) * f.omega;
            v.lin = -f.omega / 2.0;
            v.var = CanonicalVar::ho_s;
            const int m = n / 2;
            if (n % 2 == 0) {
                v.D = laguerre_poly(m, -0.5, -1.0, "s");
                v.base_text = "-omega*x/2";
            } else {
                v.inv = -1.0;
                v.D = laguerre_poly(m, 0.5, -1.0, "s");
                v.base_text = "-omega*x/2 - 1/x";
            }
            break;
        }
        case FamilyKind::morse: {
            const double am = f.a + (n + 1.0) * f.alpha_scale; // a_{-(n+1)}
            v.energy = f.a * f.a - am * am;
            v.cst = -am;
            v.cy = f.b;
            v.var = CanonicalVar::morse_z;
            v.D = laguerre_poly(n, -2.0 * (f.a / f.alpha_scale + 1.0 + n),
                                -1.0, "z");
            v.base_text = "b*exp(-alpha*x) - a_{-(n+1)}";
            break;
        }
        case FamilyKind::erkc: {
            const double am = f.a - (n + 1.0); // a_{-(n+1)}
            if (std::fabs(f.a - (n + 1.0)) < 1e-12 * (1.0 + f.a))
                throw unsupported_error(
                    "boundary a = n+1: below-ground level parameter vanishes");
            if (std::fabs(f.a - (n + 1.0) / 2.0) < 1e-12 * (1.0 + f.a))
                throw unsupported_error(
                    "boundary a = (n+1)/2: denominator parameter degenerates");
            v.energy = base_energy(f, -(n + 1));
            v.inv = f.a - 1.0;
            v.cst = -f.gamma / (2.0 * am);
            v.var = CanonicalVar::erkc_x;
            v.D = laguerre_poly(n, 1.0 - 2.0 * f.a, -f.gamma / am, "x");
            v.base_text = "(a-1)/x - gamma/(2 a_{-(n+1)})";
            break;
        }
    }
    return v;
}

// Parameter symmetry Gamma: maps the family parameters so that the
// potential shifts by a constant and physical levels map onto the formal
// below-ground ladder. Applying the map twice restores the original
// parameters.
struct SymmetryImage {
    FamilySpec mapped_params;
    double potential_shift = 0.0;
    std::string energy_map;
};

inline SymmetryImage gamma_map(const FamilySpec& f) {
    SymmetryImage im;
    switch (f.kind) {
        case FamilyKind::ho:
            im.mapped_params = FamilySpec::raw(FamilyKind::ho, -f.omega, 0.0,
                                               0.0, 1.0, 0.0);
            im.potential_shift = f.omega;
            im.energy_map = "E_n -> E_{-(n+1)} = -(n+1)*omega";
            break;
        case FamilyKind::morse: {
            const double a1 = f.a + f.alpha_scale;
            im.mapped_params =
                FamilySpec::raw(FamilyKind::morse, 0.0, -a1, -f.b,
                                f.alpha_scale, 0.0);
            im.potential_shift = a1 * a1 - f.a * f.a; // -E_{-1}
            im.energy_map = "E_n -> E_{-(n+1)} - E_{-1}";
            break;
        }
        case FamilyKind::erkc: {
            const double am1 = f.a - 1.0;
            im.mapped_params = FamilySpec::raw(FamilyKind::erkc, 0.0,
                                               1.0 - f.a, 0.0, 1.0, f.gamma);
            const double g2 = f.gamma * f.gamma;
            im.potential_shift =
                g2 / (4.0 * am1 * am1) - g2 / (4.0 * f.a * f.a); // -E_{-1}
            im.energy_map = "E_n -> E_{-(n+1)} - E_{-1}";
            break;
        }
    }
    return im;
}

// Terminating continued fraction for the polynomial tail of the Riccati
// functions: returns R_n (physical) or Q_n (regularized), i.e. the value the
// log-derivative tail takes at x, not w or v themselves. Bottom-up
// evaluation; a vanishing partial denominator raises pole_error.
inline double rs_continued_fraction_eval(const FamilySpec& f, int n, double x,
                                         bool regularized) {
    if (n < 0) throw validation_error("continued fraction: negative order");
    if (f.kind == FamilyKind::erkc && !(x > 0.0))
        throw domain_error("radial family requires x > 0");
    if (n == 0) return 0.0;
    auto guard = [](double den) {
        if (!std::isfinite(den) || std::fabs(den) < 1e-12)
            throw pole_error("continued fraction hit a pole of the tail");
        return den;
    };
    double t = 0.0;
    switch (f.kind) {
        case FamilyKind::ho: {
            for (int j = n; j >= 1; --j) {
                const double den =
                    guard(f.omega * x + (regularized ? t : -t));
                t = (n - j + 1) * f.omega / den;
            }
            return -t;
        }
        case FamilyKind::morse: {
            const double by = f.b * std::exp(-f.alpha_scale * x);
            const double al = f.alpha_scale;
            auto E = [&](double j) {
                const double aj = f.a - j * al;
                return f.a * f.a - aj * aj;
            };
            if (!regularized) {
                const double En = E(n);
                for (int j = n; j >= 1; --j) {
                    const double den = guard((f.a - (j - 1) * al) +
                                             (f.a - j * al) - 2.0 * by - t);
                    t = (En - E(j - 1)) / den;
                }
            } else {
                const double Etop = E(-(n + 1.0));
                for (int j = n; j >= 1; --j) {
                    const double den =
                        guard(-((f.a + j * al) + (f.a + (j + 1) * al)) +
                              2.0 * by - t);
                    t = (Etop - E(-static_cast<double>(j))) / den;
                }
            }
            return -t;
        }
        case FamilyKind::erkc: {
            const double base = regularized ? 1.0 - f.a : f.a;
            auto w0 = [&](double aa) {
                return -aa / x + f.gamma / (2.0 * aa);
            };
            auto E = [&](double j) {
                const double aj = base + j;
                const double g2 = f.gamma * f.gamma;
                return g2 / (4.0 * base * base) - g2 / (4.0 * aj * aj);
            };
            const double En = E(n);
            for (int j = n; j >= 1; --j) {
                const double den =
                    guard(w0(base + j - 1) + w0(base + j) - t);
                t = (En - E(j - 1.0)) / den;
            }
            return -t;
        }
    }
    throw validation_error("unknown family");
}

// Regularity verdict for the order-n extension: combines the zero-location
// trichotomy of the denominator polynomial with an independent Sturm count
// on the physical domain. The two classifications must agree; disagreement
// is an internal error, not a user error.
struct RegularityVerdict {
    bool regular = false;
    ZeroCount klh;
    int sturm_domain_roots = 0;
    // Structural x^-1 pole of v_n inside the domain (odd oscillator orders);
    // independent of the denominator roots counted above.
    bool origin_pole = false;
    std::string reason;
};

inline RegularityVerdict regularity_check(const FamilySpec& f, int n) {
    if (n < 0) throw validation_error("regularity_check: negative order");
    RegularityVerdict v;
    int klh_domain = 0;
    Polynomial D;
    double sturm_lo = 0.0,
           sturm_hi = std::numeric_limits<double>::infinity();
    switch (f.kind) {
        case FamilyKind::ho: {
            const int m = n / 2;
            const double la = (n % 2 == 0) ? -0.5 : 0.5;
            v.klh = klh_zero_counts(m, la);
            // Stored in s = omega x^2/2 >= 0; zeros of L_m(-s) at positive
            // Laguerre argument sit at negative s, outside the range of s.
            D = laguerre_poly(m, la, -1.0, "s");
            klh_domain = v.klh.negative;
            if (n % 2 == 0) {
                v.regular = (klh_domain == 0);
                v.reason =
                    "parameter -1/2 > -1 branch: all denominator zeros lie at "
                    "negative s, outside the domain";
            } else {
                v.regular = false;
                v.origin_pole = true;
                v.reason =
                    "odd order carries an explicit x^-1 pole at the origin; "
                    "singular inside the full line";
            }
            break;
        }
        case FamilyKind::morse: {
            const double la = -2.0 * (f.a / f.alpha_scale + 1.0 + n);
            v.klh = klh_zero_counts(n, la);
            D = laguerre_poly(n, la, -1.0, "z");
            // Domain is z > 0, i.e. negative Laguerre arguments.
            klh_domain = v.klh.negative;
            v.regular = (klh_domain == 0);
            v.reason = v.regular
                           ? "parameter below -n branch: even order keeps the "
                             "half line z > 0 node free"
                           : "parameter below -n branch: odd order leaves one "
                             "zero on the half line z > 0";
            break;
        }
        case FamilyKind::erkc: {
            if (std::fabs(f.a - (n + 1.0)) < 1e-12 * (1.0 + f.a) ||
                std::fabs(f.a - (n + 1.0) / 2.0) < 1e-12 * (1.0 + f.a))
                throw unsupported_error(
                    "boundary a = (n+1)/2 or a = n+1 is not representable");
            const double la = 1.0 - 2.0 * f.a;
            const double am = f.a - (n + 1.0);
            v.klh = klh_zero_counts(n, la);
            D = laguerre_poly(n, la, -f.gamma / am, "x");
            const bool arg_positive = (am < 0.0); // case (i) window
            klh_domain = arg_positive ? v.klh.positive : v.klh.negative;
            v.regular = (klh_domain == 0);
            if (arg_positive) {
                v.reason = v.regular
                               ? "strict window (n+1)/2 < a < n+1: parameter "
                                 "below -n branch has no positive zeros"
                               : "interior branch -n < alpha < -1: zeros "
                                 "remain at positive arguments in the domain";
            } else {
                v.reason = v.regular
                               ? "a > n+1 with even order: no zeros at "
                                 "negative arguments"
                               : "a > n+1 with odd order: one zero at "
                                 "negative arguments enters the domain";
            }
            break;
        }
    }
    v.sturm_domain_roots = count_real_roots(D, sturm_lo, sturm_hi);
    if (v.sturm_domain_roots != klh_domain)
        throw internal_inconsistency_error(
            "trichotomy and Sturm count disagree: " +
            std::to_string(klh_domain) + " vs " +
            std::to_string(v.sturm_domain_roots));
    return v;
}

// x-positions of the zeros of the denominator of w (poles of the Riccati
// function) inside (lo, hi), located by sign-change scan plus bisection.
// Assumes simple zeros, which holds for the node polynomials used here.
inline std::vector<double> domain_poles(const RSFunction& w, double lo,
                                        double hi, int scan_points = 8192) {
    std::vector<double> poles;
    if (w.D.degree() < 1) return poles;
    auto q = [&](double x) { return w.D.eval<double>(w.canonical_arg(x)); };
    double prev_x = lo, prev_v = q(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * i / scan_points;
        const double val = q(x);
        if (val == 0.0) {
            // Zero exactly on a scan node: no sign change on either side.
            if (i < scan_points) poles.push_back(x);
        } else if ((prev_v < 0.0 && val > 0.0) ||
                   (prev_v > 0.0 && val < 0.0)) {
            double a = prev_x, b = x, fa = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = q(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
                if (b - a < 1e-15 * (1.0 + std::fabs(a))) break;
            }
            poles.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = val;
    }
    return poles;
}

} // namespace ratext

#endif
