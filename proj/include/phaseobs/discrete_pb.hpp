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

#ifndef PHASEOBS_DISCRETE_PB_HPP
#define PHASEOBS_DISCRETE_PB_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "phaseobs/circle_set.hpp"
#include "phaseobs/fock.hpp"
#include "phaseobs/phase_matrix.hpp"

namespace phaseobs {

/// theta_{s,k} = 2 pi k / (s + 1).
double grid_angle(std::size_t s, std::size_t k);

/// Half-open membership of theta_{s,k} in X. Endpoints within 1e-9 grid
/// spacings of a grid point are snapped onto it, so [a, b) keeps a grid
/// point at a and drops one at b.
bool grid_point_in(std::size_t s, std::size_t k, const CircleSet& set);

/// |theta_{s,k}> = (s+1)^{-1/2} sum_{n <= s} e^{i n theta_{s,k}} |n>.
StateVector pb_state(std::size_t s, std::size_t k);

struct DiscreteReport {
    bool hermitian = false;
    bool unit_diagonal = false;
    bool psd = false;
    bool zero_pattern = false;
    double min_eigenvalue = 0.0;
    /// Index pairs (n, m) from J with A_nm != 0 although |n - m| is a
    /// positive multiple of s + 1.
    std::vector<std::pair<std::size_t, std::size_t>> pattern_violations;

    bool ok() const { return hermitian && unit_diagonal && psd && zero_pattern; }
    std::string describe() const;
};

/// Checks A (indexed by the sorted set J) for the covariant normalized
/// discrete POM conditions at grid order s.
DiscreteReport validate_A(const std::vector<std::size_t>& index_set, std::size_t s, const Matrix& a);

/// Covariant POM on the grid D_s acting on H_J:
/// E({theta_{s,l}}) = (s+1)^{-1} R(theta_{s,l}) A R(theta_{s,l})^*.
class DiscretePhasePOM {
public:
    std::size_t order() const { return s_; }
    std::size_t points() const { return s_ + 1; }
    const std::vector<std::size_t>& index_set() const { return index_set_; }
    const Matrix& a() const { return a_; }

    /// E({theta_{s,l}}) on H_J (|J| x |J|).
    Operator point_operator(std::size_t l) const;
    /// Sum of point operators over grid points in X, on H_J.
    Operator on_subspace(const CircleSet& set) const;

private:
    DiscretePhasePOM(std::size_t s, std::vector<std::size_t> index_set, Matrix a)
        : s_(s), index_set_(std::move(index_set)), a_(std::move(a)) {}

    friend DiscretePhasePOM make_discrete_pom(std::vector<std::size_t> index_set, std::size_t s,
                                              Matrix a);

    std::size_t s_;
    std::vector<std::size_t> index_set_;
    Matrix a_;
};

/// Throws std::invalid_argument naming the violated condition.
DiscretePhasePOM make_discrete_pom(std::vector<std::size_t> index_set, std::size_t s, Matrix a);

/// J = {0..s}, A = all ones: the Pegg-Barnett spectral measure.
DiscretePhasePOM pb_canonical(std::size_t s);

/// J(s) = {0..min(s, dim-1)} with A_nm = c_nm.
DiscretePhasePOM restriction_pom(const PhaseMatrix& pm, std::size_t s);

/// || R(theta_k) E({theta_l}) R(theta_k)^* - E({theta_{k+l}}) ||.
double discrete_covariance_residual(const DiscretePhasePOM& pom, std::size_t k, std::size_t l);

struct ProjectionClassification {
    bool projection_valued = false;  // all point operators idempotent
    bool rank_one_phase = false;     // A_nm = e^{i(u_n - u_m)}
    std::size_t cardinality = 0;     // #J
    bool cardinality_matches = false;  // #J == s + 1
    /// projection_valued == (rank_one_phase && cardinality_matches).
    bool consistent = false;
    double idempotence_defect = 0.0;
};

ProjectionClassification is_projection_valued(const DiscretePhasePOM& pom, double tol = 1e-10);

/// E_{J,s}(X) zero-padded into the truncated space of dimension ambient_dim.
Operator accumulate(const DiscretePhasePOM& pom, const CircleSet& set, std::size_t ambient_dim);

/// (s+1)^{-1} sum_{theta_{s,l} in X} e^{ik theta_{s,l}}.
cplx discrete_fourier_coeff(std::size_t s, const CircleSet& set, long k);

/// | <n|E_{J(s),s}(X)|m> - c_nm (1/2pi) int_X e^{i(n-m)theta} | with A^{J(s)}
/// the restriction of pm.
double convergence_error(const PhaseMatrix& pm, std::size_t s, const CircleSet& set, std::size_t n,
                         std::size_t m);

/// sup over theta in [a, b) of the circular distance to the grid D_s.
double spectral_accuracy(std::size_t s, const Interval& interval);

/// Solution set of the normalization constraint
/// sum_l R(theta_l) B R(theta_l)^* = I on H_J, found by brute force: the
/// linear map B -> sum_l R B R^* is assembled on the elementary matrices
/// and solved with a full-pivot LU.
struct NormalizationSolutions {
    Matrix particular;
    std::vector<Matrix> kernel;
    bool solvable = false;
};

NormalizationSolutions normalization_solutions(const std::vector<std::size_t>& index_set,
                                               std::size_t s);

/// Every solution B of the normalization constraint has (s+1) B with unit
/// diagonal and the required zero pattern. Returns the worst deviation.
double converse_deviation(const std::vector<std::size_t>& index_set, std::size_t s);

}  // namespace phaseobs

#endif  // PHASEOBS_DISCRETE_PB_HPP
