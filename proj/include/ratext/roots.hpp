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

#ifndef RATEXT_ROOTS_HPP
#define RATEXT_ROOTS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "common.hpp"
#include "polynomial.hpp"

// Real-root counting for the node analysis of denominator polynomials:
// a floating-point Sturm chain (exact distinct-root counts on open
// intervals) and the zero-location trichotomy for generalized Laguerre
// polynomials with arbitrary real parameter. The two are independent
// classifications; callers cross-check them against each other.

namespace ratext {

namespace detail {

// Normalizes to unit max coefficient. Chain construction below assumes this
// scaling to keep remainder magnitudes comparable across steps.
inline std::vector<double> normalized(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    std::vector<double> r(c);
    if (m > 0.0)
        for (double& v : r) v /= m;
    while (r.size() > 1 && r.back() == 0.0) r.pop_back();
    return r;
}

// Remainder of a/b by synthetic long division; inputs are normalized, so
// coefficients stay O(1) for the moderate degrees used here.
inline std::vector<double> poly_remainder(std::vector<double> a,
                                          const std::vector<double>& b) {
    const double lead = b.back();
    while (a.size() >= b.size() && a.size() > 1) {
        const double q = a.back() / lead;
        const std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= q * b[j];
        a.pop_back();
        while (a.size() > std::max<std::size_t>(1, b.size() - 1) &&
               std::fabs(a.back()) < 1e-14)
            a.pop_back();
    }
    while (a.size() > 1 && std::fabs(a.back()) < 1e-14) a.pop_back();
    return a;
}

struct SturmChain {
    std::vector<std::vector<double>> members;
};

inline SturmChain build_sturm_chain(const Polynomial& p) {
    SturmChain ch;
    std::vector<double> p0 = normalized(p.coeffs());
    ch.members.push_back(p0);
    if (p0.size() == 1) return ch;
    std::vector<double> p1(p0.size() - 1);
    for (std::size_t j = 1; j < p0.size(); ++j)
        p1[j - 1] = p0[j] * static_cast<double>(j);
    p1 = normalized(p1);
    ch.members.push_back(p1);
    // Euclidean chain with sign flip; a near-zero remainder means the gcd is
    // reached (repeated roots), and the chain ends there.
    while (ch.members.back().size() > 1) {
        const auto& a = ch.members[ch.members.size() - 2];
        const auto& b = ch.members.back();
        std::vector<double> r = poly_remainder(a, b);
        double m = 0.0;
        for (double v : r) m = std::max(m, std::fabs(v));
        if (m < 1e-12) break;
        for (double& v : r) v = -v / m;
        ch.members.push_back(r);
    }
    return ch;
}

inline double eval_coeffs(const std::vector<double>& c, double x) {
    double acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Sign variations of the chain at x; +-inf use leading-coefficient signs.
// Zero entries are skipped (standard convention for interior points of the
// chain; the endpoints passed in are never exact roots of the head, see
// count_real_roots).
inline int sign_variations(const SturmChain& ch, double x) {
    int prev = 0, var = 0;
    for (const auto& m : ch.members) {
        double v;
        if (std::isinf(x)) {
            const double lead = m.back();
            const int deg = static_cast<int>(m.size()) - 1;
            v = (x > 0) ? lead : lead * ((deg % 2 == 0) ? 1.0 : -1.0);
        } else {
            v = eval_coeffs(m, x);
        }
        int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

} // namespace detail

// Number of distinct real roots of p in the open interval (lo, hi); lo/hi
// may be +-infinity. Roots exactly at the origin are never counted: they are
// deflated first (callers get origin information from klh_zero_counts).
// Roots landing exactly on a finite nonzero endpoint are excluded by nudging
// the endpoint inward; this is best-effort at relative distance 1e-10.
inline int count_real_roots(const Polynomial& p, double lo, double hi) {
    if (!(lo < hi)) throw validation_error("count_real_roots: empty interval");
    const double scale = p.max_abs_coeff();
    if (scale < 1e-300)
        throw validation_error(
            "count_real_roots: degenerate polynomial (all coefficients below 1e-300)");

    // Deflate origin roots: strip leading (low-order) coefficients that are
    // zero at working precision. The 1e-9 margin absorbs recurrence roundoff
    // relative to the final coefficient scale, which can be several orders
    // above machine epsilon when intermediate coefficients dwarf the result
    // (integer-parameter Laguerre polynomials are the worst case).
    std::vector<double> c = p.coeffs();
    std::size_t drop = 0;
    while (drop + 1 < c.size() && std::fabs(c[drop]) <= 1e-9 * scale) ++drop;
    std::vector<double> deflated(c.begin() + drop, c.end());
    Polynomial q{std::vector<double>(deflated), p.var_tag()};
    if (q.degree() == 0) return 0;

    detail::SturmChain ch = detail::build_sturm_chain(q);
    // Unconditional inward nudge: the chain head is normalized, so an exact
    // "is this endpoint a root" test is meaningless at working precision.
    auto nudged = [](double e, double dir) {
        if (std::isinf(e)) return e;
        return e + dir * 1e-10 * (1.0 + std::fabs(e));
    };
    const double a = nudged(lo, +1.0);
    const double b = nudged(hi, -1.0);
    const int va = detail::sign_variations(ch, a);
    const int vb = detail::sign_variations(ch, b);
    return va - vb;
}

// Zero locations of L_n^{(alpha)} for arbitrary real alpha, split by sign of
// the argument. negative is 0 or 1 except on the integer-parameter branch
// where all imbalance moves into the origin multiplicity.
struct ZeroCount {
    int positive = 0;
    int negative = 0;
    int origin_multiplicity = 0;
};

inline ZeroCount klh_zero_counts(int n, double alpha) {
    if (n < 0) throw validation_error("klh_zero_counts: negative degree");
    ZeroCount zc;
    if (n == 0) return zc;
    if (alpha > -1.0) {
        zc.positive = n;
        return zc;
    }
    // Integer branch: alpha = -j with 1 <= j <= n gives an origin zero of
    // multiplicity j; the remaining n-j roots are positive.
    if (num::is_integer(alpha)) {
        const int j = static_cast<int>(std::llround(-alpha));
        if (j >= 1 && j <= n) {
            zc.positive = n - j;
            zc.origin_multiplicity = j;
            return zc;
        }
    }
    if (alpha < -n) {
        zc.negative = n % 2;
        return zc;
    }
    // Non-integer alpha in (-n, -1): floor(-alpha) roots leave through the
    // origin; at most one re-emerges on the negative axis (odd count).
    const int j = static_cast<int>(std::floor(-alpha));
    zc.positive = n - j;
    zc.negative = j % 2;
    return zc;
}

} // namespace ratext

#endif
