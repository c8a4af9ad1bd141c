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

#include <catch2/catch_amalgamated.hpp>

#include "ratext/polynomial.hpp"

using ratext::Polynomial;

TEST_CASE("construction trims trailing zeros", "[polynomial]") {
    Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(p.coeffs().size() == 2);
    CHECK(Polynomial({0.0, 0.0}).is_zero());
    CHECK(Polynomial::constant(3.0).degree() == 0);
    CHECK(Polynomial::identity().degree() == 1);
}

TEST_CASE("evaluation matches direct expansion", "[polynomial]") {
    Polynomial p({2.0, -3.0, 0.5, 1.0}); // 2 - 3x + x^2/2 + x^3
    for (double x : {-2.5, -1.0, 0.0, 0.3, 4.0}) {
        const double direct = 2.0 - 3.0 * x + 0.5 * x * x + x * x * x;
        CHECK(p(x) == Catch::Approx(direct).margin(1e-14));
    }
    CHECK(p.eval<long double>(0.5L) ==
          Catch::Approx(static_cast<double>(p(0.5))));
}

TEST_CASE("arithmetic", "[polynomial]") {
    Polynomial a({1.0, 1.0});
    Polynomial b({1.0, -1.0});
    CHECK(ratext::approx_equal(a * b, Polynomial({1.0, 0.0, -1.0})));
    CHECK(ratext::approx_equal(a + b, Polynomial({2.0})));
    CHECK(ratext::approx_equal(a - b, Polynomial({0.0, 2.0})));
    CHECK(ratext::approx_equal(2.0 * a, Polynomial({2.0, 2.0})));
    CHECK((a - a).is_zero());
}

TEST_CASE("derivative", "[polynomial]") {
    Polynomial p({5.0, 0.0, 3.0, 2.0}); // 5 + 3x^2 + 2x^3
    CHECK(ratext::approx_equal(p.derivative(),
                               Polynomial({0.0, 6.0, 6.0})));
    CHECK(Polynomial::constant(4.0).derivative().is_zero());
}

TEST_CASE("argument transforms", "[polynomial]") {
    Polynomial p({1.0, 2.0, 3.0}); // 1 + 2x + 3x^2
    const Polynomial s = p.with_scaled_argument(-2.0);
    for (double x : {-1.0, 0.4, 2.0})
        CHECK(s(x) == Catch::Approx(p(-2.0 * x)).margin(1e-13));
    const Polynomial q = p.with_squared_argument();
    CHECK(q.degree() == 4);
    for (double x : {-1.5, 0.7})
        CHECK(q(x) == Catch::Approx(p(x * x)).margin(1e-13));
}

TEST_CASE("coefficient reversal", "[polynomial]") {
    // x^2 p(1/x) for p = 2 + 3x: reversal into degree 2 gives 3x + 2x^2.
    Polynomial p({2.0, 3.0});
    const Polynomial r = p.reversed(2);
    CHECK(ratext::approx_equal(r, Polynomial({0.0, 3.0, 2.0})));
    for (double x : {0.5, 1.3, 4.0})
        CHECK(r(x) == Catch::Approx(x * x * p(1.0 / x)).margin(1e-12));
    CHECK_THROWS_AS(p.reversed(0), ratext::validation_error);
}

TEST_CASE("approx_equal is scale relative", "[polynomial]") {
    Polynomial big({1e12, 2e12});
    Polynomial bigged({1e12 + 1e-2, 2e12});
    CHECK(ratext::approx_equal(big, bigged));
    CHECK_FALSE(ratext::approx_equal(Polynomial({1.0}), Polynomial({1.1})));
}
