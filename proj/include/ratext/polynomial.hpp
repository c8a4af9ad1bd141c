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

#ifndef RATEXT_POLYNOMIAL_HPP
#define RATEXT_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace ratext {

// Dense univariate polynomial with real coefficients in ascending order.
// coeffs[j] multiplies x^j; the invariant is coeffs non-empty with exact
// trailing zeros trimmed (a zero polynomial is stored as {0}).
// var_tag names the canonical variable for documentation and rendering; it
// never affects arithmetic.
class Polynomial {
  public:
    Polynomial() : c_{0.0} {}

    explicit Polynomial(std::vector<double> coeffs, std::string var_tag = "x")
        : c_(std::move(coeffs)), tag_(std::move(var_tag)) {
        if (c_.empty()) c_.push_back(0.0);
        trim_();
    }

    static Polynomial constant(double v, std::string var_tag = "x") {
        return Polynomial({v}, std::move(var_tag));
    }

    static Polynomial identity(std::string var_tag = "x") {
        return Polynomial({0.0, 1.0}, std::move(var_tag));
    }

    const std::vector<double>& coeffs() const { return c_; }
    const std::string& var_tag() const { return tag_; }
    void set_var_tag(std::string t) { tag_ = std::move(t); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::fabs(v));
        return m;
    }

    // Horner evaluation; T is double or long double.
    template <class T>
    T eval(T x) const {
        T acc = static_cast<T>(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;)
            acc = acc * x + static_cast<T>(c_[i]);
        return acc;
    }

    double operator()(double x) const { return eval<double>(x); }

    Polynomial derivative() const {
        if (degree() == 0) return constant(0.0, tag_);
        std::vector<double> d(c_.size() - 1);
        for (std::size_t j = 1; j < c_.size(); ++j)
            d[j - 1] = c_[j] * static_cast<double>(j);
        return Polynomial(std::move(d), tag_);
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t j = 0; j < c_.size(); ++j) r[j] += c_[j];
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[j] += o.c_[j];
        return Polynomial(std::move(r), tag_);
    }

    Polynomial operator-(const Polynomial& o) const {
        std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t j = 0; j < c_.size(); ++j) r[j] += c_[j];
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[j] -= o.c_[j];
        return Polynomial(std::move(r), tag_);
    }

    Polynomial operator*(const Polynomial& o) const {
        std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r), tag_);
    }

    Polynomial operator*(double s) const {
        std::vector<double> r(c_);
        for (double& v : r) v *= s;
        return Polynomial(std::move(r), tag_);
    }

    friend Polynomial operator*(double s, const Polynomial& p) { return p * s; }

    // p(x) -> p(s*x): coefficient j picks up s^j.
    Polynomial with_scaled_argument(double s) const {
        std::vector<double> r(c_);
        double pw = 1.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            r[j] *= pw;
            pw *= s;
        }
        return Polynomial(std::move(r), tag_);
    }

    // p(t) -> p(x^2): coefficient j moves to position 2j.
    Polynomial with_squared_argument(std::string new_tag = "x") const {
        std::vector<double> r(2 * c_.size() - 1, 0.0);
        for (std::size_t j = 0; j < c_.size(); ++j) r[2 * j] = c_[j];
        return Polynomial(std::move(r), std::move(new_tag));
    }

    // x^j -> x^{d-j} with d = target_degree; requires degree() <= d.
    // Realizes x^d * p(1/x) for polynomials of exact degree d.
    Polynomial reversed(int target_degree) const {
        if (degree() > target_degree)
            throw validation_error("reversed: target degree below actual degree");
        std::vector<double> r(static_cast<std::size_t>(target_degree) + 1, 0.0);
        for (std::size_t j = 0; j < c_.size(); ++j)
            r[static_cast<std::size_t>(target_degree) - j] = c_[j];
        return Polynomial(std::move(r), tag_);
    }

  private:
    void trim_() {
        while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
    std::string tag_ = "x";
};

// Coefficient-wise comparison at tolerance tol relative to the larger
// max-coefficient magnitude of the two operands.
inline bool approx_equal(const Polynomial& a, const Polynomial& b,
                         double tol = 1e-10) {
    const double scale =
        std::max({1e-300, a.max_abs_coeff(), b.max_abs_coeff()});
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    for (std::size_t j = 0; j < n; ++j) {
        const double av = j < a.coeffs().size() ? a.coeffs()[j] : 0.0;
        const double bv = j < b.coeffs().size() ? b.coeffs()[j] : 0.0;
        if (std::fabs(av - bv) > tol * scale) return false;
    }
    return true;
}

} // namespace ratext

#endif
