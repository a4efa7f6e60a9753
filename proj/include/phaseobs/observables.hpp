// Copyright 2026 The phaseobs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHASEOBS_OBSERVABLES_HPP
#define PHASEOBS_OBSERVABLES_HPP

#include <cstddef>

#include "phaseobs/circle_set.hpp"
#include "phaseobs/fock.hpp"
#include "phaseobs/phase_matrix.hpp"

namespace phaseobs {

/// <n|E(X)|m> = c_nm (1/2pi) int_X e^{i(n-m)theta} dtheta.
Operator evaluate(const PhaseMatrix& pm, const CircleSet& set);

/// || R(theta) E(X) R(theta)^* - E(X + theta) || for given E(X), E(X + theta).
double covariance_residual(const Operator& e_set, const Operator& e_shifted, double theta);
double covariance_residual(const PhaseMatrix& pm, const CircleSet& set, double theta);

/// Uniform in number states but not shift covariant:
/// (|X|/2pi) I + ((1/2pi) int_X sin) (|0><1| + |1><0|).
Operator counterexample_F(const CircleSet& set, std::size_t dim);
double counterexample_covariance_residual(const CircleSet& set, double theta, std::size_t dim);

/// ||E(X)^2 - E(X)||.
double projection_defect(const PhaseMatrix& pm, const CircleSet& set);

/// E^(p) = int theta^p dE for p in {1, 2}.
Operator moment_operator(const PhaseMatrix& pm, int p);

/// c_nm = <n|E^(1)|m> i(n - m) off the diagonal, ones on it.
Matrix phase_matrix_from_first_moment(const Operator& first_moment);

struct VarianceReport {
    double operator_form = 0;  // <n|(E^(1))^2|n> - <n|E^(1)|n>^2 at truncation
    double series_form = 0;    // sum_{m != n, m < dim} |c_nm|^2 / (n - m)^2
    double tail_bound = 0;     // bound on the omitted m >= dim terms
    bool agree = false;        // forms agree to 1e-6
};

VarianceReport first_moment_variance(const PhaseMatrix& pm, std::size_t n);

/// V^(k) = int e^{ik theta} dE = sum_n c_{n,n+k} |n><n+k|.
Operator cyclic_moment(const PhaseMatrix& pm, std::size_t k);

struct StrongReport {
    bool strong = false;
    std::size_t failing_k = 0;   // smallest failing k, 0 when strong
    double residual = 0;         // ||V^(k) - (V^(1))^k|| at failing_k, or the max seen
};

/// Compares V^(k) with (V^(1))^k for 1 <= k <= kmax on the block that drops
/// the last k rows and columns.
StrongReport is_strong(const PhaseMatrix& pm, std::size_t kmax, double tol = 1e-10);

struct NumberShiftReport {
    bool shifts = false;        // |c_{n,n+k}| = 1 for all checked pairs
    bool exact = false;         // V^(k)|n+k> = |n> with phase exactly one
    double modulus_defect = 0;  // max | |c_{n,n+k}| - 1 |
    double phase_defect = 0;    // max |c_{n,n+k} - 1|
};

NumberShiftReport number_shift_check(const PhaseMatrix& pm, std::size_t kmax, double tol = 1e-10);

}  // namespace phaseobs

#endif  // PHASEOBS_OBSERVABLES_HPP
