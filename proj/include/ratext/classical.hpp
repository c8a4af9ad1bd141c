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

#ifndef RATEXT_CLASSICAL_HPP
#define RATEXT_CLASSICAL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "polynomial.hpp"

// Classical orthogonal polynomial machinery: generalized Laguerre with
// arbitrary real parameter (negative and non-integer included), physicists'
// Hermite, the Hermite-of-imaginary-argument decomposition, and Pochhammer
// symbols. Everything is recurrence-based; no factorials of large arguments.

namespace ratext {

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
inline double pochhammer(double a, int n) {
    if (n < 0) throw validation_error("pochhammer: negative order");
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= a + i;
    return r;
}

// L_n^{(alpha)}(t) by the three-term recurrence
//   (k+1) L_{k+1} = (2k+1+alpha-t) L_k - (k+alpha) L_{k-1}.
// Valid for any real alpha; n < 0 evaluates to 0 (empty polynomial), which
// the recurrence-shaped call sites rely on.
template <class T>
T laguerre_eval_t(int n, double alpha, T t) {
    if (n < 0) return T(0);
    if (n == 0) return T(1);
    T p0 = T(1);
    T p1 = T(1) + T(alpha) - t;
    for (int k = 1; k < n; ++k) {
        T p2 = ((T(2 * k + 1 + alpha) - t) * p1 - T(k + alpha) * p0) / T(k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline double laguerre_eval(int n, double alpha, double t) {
    return laguerre_eval_t<double>(n, alpha, t);
}

// Coefficient form of u -> L_n^{(alpha)}(scale * u). Exact degree n for
// scale != 0 (leading coefficient (-scale)^n / n!).
inline Polynomial laguerre_poly(int n, double alpha, double scale,
                                std::string var_tag = "x") {
    if (n < 0) throw validation_error("laguerre_poly: negative degree");
    Polynomial p0 = Polynomial::constant(1.0, var_tag);
    if (n == 0) return p0;
    // p1(u) = 1 + alpha - scale*u
    Polynomial p1({1.0 + alpha, -scale}, var_tag);
    const Polynomial su({0.0, scale}, var_tag);
    for (int k = 1; k < n; ++k) {
        Polynomial p2 =
            ((Polynomial::constant(2 * k + 1 + alpha, var_tag) - su) * p1 -
             p0 * (k + alpha)) *
            (1.0 / (k + 1));
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// Physicists' Hermite H_n via H_{k+1} = 2u H_k - 2k H_{k-1}.
template <class T>
T hermite_eval_t(int n, T u) {
    if (n < 0) return T(0);
    if (n == 0) return T(1);
    T p0 = T(1);
    T p1 = T(2) * u;
    for (int k = 1; k < n; ++k) {
        T p2 = T(2) * u * p1 - T(2 * k) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline double hermite_eval(int n, double u) {
    return hermite_eval_t<double>(n, u);
}

inline Polynomial hermite_poly(int n, std::string var_tag = "u") {
    if (n < 0) throw validation_error("hermite_poly: negative degree");
    Polynomial p0 = Polynomial::constant(1.0, var_tag);
    if (n == 0) return p0;
    Polynomial p1({0.0, 2.0}, var_tag);
    const Polynomial two_u({0.0, 2.0}, var_tag);
    for (int k = 1; k < n; ++k) {
        Polynomial p2 = two_u * p1 - p0 * (2.0 * k);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

enum class Parity { even, odd };

// Decomposition of Hermite at imaginary argument into a definite-sign
// Laguerre factor:
//   i^{-n} H_n(i u) = 2^n m! * u^{n mod 2} * L_m^{(laguerre_alpha)}(-u^2)
// with n = 2m (even, alpha = -1/2) or n = 2m+1 (odd, alpha = +1/2).
// Every factor on the right is strictly positive for real u != 0, which is
// what makes below-ground denominators node-free.
struct HermiteImaginaryForm {
    int m;
    Parity parity;
    double laguerre_alpha;
    double constant; // 2^n m!
};

inline HermiteImaginaryForm hermite_imaginary_as_laguerre(int n) {
    if (n < 0)
        throw validation_error("hermite_imaginary_as_laguerre: negative degree");
    HermiteImaginaryForm f{};
    f.m = n / 2;
    f.parity = (n % 2 == 0) ? Parity::even : Parity::odd;
    f.laguerre_alpha = (n % 2 == 0) ? -0.5 : 0.5;
    double c = 1.0;
    for (int i = 0; i < n; ++i) c *= 2.0;
    for (int i = 2; i <= f.m; ++i) c *= i;
    f.constant = c;
    return f;
}

// Max absolute residual over the sample set of the two contiguous-parameter
// identities
//   L_n^{(beta)}(z) + L_{n-1}^{(beta+1)}(z) = L_n^{(beta+1)}(z)
//   z L_{n-1}^{(beta+1)}(z) = (n+beta) L_{n-1}^{(beta)}(z) - n L_n^{(beta)}(z).
inline double glp_identity_residual(int n, double beta,
                                    const std::vector<double>& samples) {
    if (n < 1) throw validation_error("glp_identity_residual: requires n >= 1");
    double worst = 0.0;
    for (double z : samples) {
        const double a = laguerre_eval(n, beta, z) +
                         laguerre_eval(n - 1, beta + 1, z) -
                         laguerre_eval(n, beta + 1, z);
        const double b = z * laguerre_eval(n - 1, beta + 1, z) -
                         ((n + beta) * laguerre_eval(n - 1, beta, z) -
                          n * laguerre_eval(n, beta, z));
        worst = std::max({worst, std::fabs(a), std::fabs(b)});
    }
    return worst;
}

} // namespace ratext

#endif
