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

#ifndef RATEXT_COMMON_HPP
#define RATEXT_COMMON_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace ratext {

// Error taxonomy. Every throwing path in the library uses one of these, so
// callers (CLI, verification driver) can map failures to exit codes and
// failed checks without string matching.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter or argument rejected before any computation starts.
struct validation_error : error {
    using error::error;
};

// Evaluation point outside the potential's domain.
struct domain_error : error {
    using error::error;
};

// Energy level whose closed form degenerates (division by a vanishing
// level parameter).
struct singular_energy_error : error {
    using error::error;
};

// Requested bound level does not exist for these parameters.
struct no_such_level_error : error {
    using error::error;
};

// Requested the extra (below-ground) state of a strictly isospectral
// extension, which has none.
struct no_extra_state_error : error {
    using error::error;
};

// Evaluation landed on (or within tolerance of) a pole.
struct pole_error : error {
    using error::error;
};

// Construction refused because the extension is singular inside the domain.
struct regularity_error : error {
    using error::error;
};

// Parameter combination the closed-form machinery cannot represent.
struct unsupported_error : error {
    using error::error;
};

// Two independent internal classifications disagreed; indicates a bug, not
// a user error.
struct internal_inconsistency_error : error {
    using error::error;
};

// Numerical routine failed to converge or produced non-finite output.
struct numeric_error : error {
    using error::error;
};

namespace num {

// Shortest round-trip-safe decimal form: 17 significant digits.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

inline bool is_integer(double v, double tol = 1e-9) {
    return std::fabs(v - std::round(v)) <= tol * std::max(1.0, std::fabs(v));
}

} // namespace num

} // namespace ratext

#endif
