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

#ifndef PHASEOBS_PHASE_MATRIX_HPP
#define PHASEOBS_PHASE_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phaseobs/fock.hpp"
#include "phaseobs/quadrature.hpp"

namespace phaseobs {

/// Outcome of checking the phase-matrix conditions on a raw matrix.
struct PhaseMatrixReport {
    bool hermitian = false;
    bool unit_diagonal = false;
    bool psd = false;
    bool bounded_entries = false;

    double hermitian_violation = 0.0;  // max |c_nm - conj(c_mn)|
    double diagonal_violation = 0.0;   // max |c_nn - 1|
    double min_eigenvalue = 0.0;       // of the Hermitian part
    double max_abs_entry = 0.0;

    bool ok() const { return hermitian && unit_diagonal && psd && bounded_entries; }
    std::string describe() const;
};

/// Hermitian and unit diagonal to 1e-10, smallest eigenvalue >= -1e-10 dim,
/// |c_nm| <= 1 + 1e-10.
PhaseMatrixReport validate(const Matrix& entries);

/// Positive semidefinite, unit-diagonal matrix (c_nm) on the truncated
/// number basis. Every instance satisfies the phase-matrix conditions.
class PhaseMatrix {
public:
    /// Validates `entries`; throws std::invalid_argument listing the failed
    /// conditions. Invalid matrices are rejected, never repaired.
    static PhaseMatrix from_entries(Matrix entries, std::string family = {});

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    cplx operator()(std::size_t n, std::size_t m) const {
        return entries_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    }
    /// Construction tag such as "canonical" or "phase-space:0"; may be empty.
    const std::string& family() const { return family_; }

    /// Leading dim x dim block, itself a phase matrix.
    PhaseMatrix restrict_to(std::size_t dim) const;

private:
    PhaseMatrix(Matrix entries, std::string family)
        : entries_(std::move(entries)), family_(std::move(family)) {}

    friend PhaseMatrix canonical(std::size_t dim);
    friend PhaseMatrix trivial(std::size_t dim);
    friend PhaseMatrix diagonal_conjugate(const PhaseMatrix& pm, std::span<const double> phases);
    friend PhaseMatrix phase_space_matrix(std::size_t s, std::size_t dim,
                                          const RadialQuadrature& quad);

    Matrix entries_;
    std::string family_;
};

/// c_nm = 1.
PhaseMatrix canonical(std::size_t dim);
/// c_nm = delta_nm.
PhaseMatrix trivial(std::size_t dim);
/// c'_nm = e^{i(u_n - u_m)} c_nm.
PhaseMatrix diagonal_conjugate(const PhaseMatrix& pm, std::span<const double> phases);

/// Gram matrix c_nm = <psi_n|psi_m> of unit vectors with a common dimension.
PhaseMatrix from_vectors(std::span<const StateVector> vectors);

/// Vectors psi_n with <psi_n|psi_m> = c_nm, read off the PSD square root.
std::vector<StateVector> vector_realization(const PhaseMatrix& pm);

/// Bra vector (F| restricted to an index set J; coeffs[i] = (F|j_i>.
struct BraForm {
    std::vector<cplx> coeffs;
};

/// d_nm = sum_k conj((F_k|n>) (F_k|m>, indexed by the positions in `index_set`.
/// Throws when a form's length differs from the index set's size or the
/// per-column sums of |(F_k|n>|^2 are not finite.
Matrix from_bra_forms(std::span<const BraForm> forms, std::span<const std::size_t> index_set);

/// Bra forms (F_k| = sum_n <k|psi_n> <n| of a vector sequence.
std::vector<BraForm> bra_forms_from_vectors(std::span<const StateVector> vectors);

/// Closed-form matrix of the phase-space observable generated by |0>:
/// Gamma((n+m)/2 + 1) / sqrt(n! m!).
double vacuum_phase_space_entry(std::size_t n, std::size_t m);

struct PhaseSpaceQuadrature {
    Matrix entries;       // raw quadrature values, diagonal not renormalized
    double residual = 0;  // max entry change when the node count doubled
    double upper = 0;     // integration limit in u = r^2
    std::size_t generator_size = 0;
};

/// c^{|s>}_nm = int_0^inf <n|D(r)|s> conj(<m|D(r)|s>) d(r^2) by composite
/// Gauss-Legendre in r (weight 2r) over r^2 <= upper. Throws
/// std::runtime_error naming the achieved residual when doubling the nodes
/// moves an entry by more than quad.tolerance.
PhaseSpaceQuadrature phase_space_quadrature(std::size_t s, std::size_t dim,
                                            const RadialQuadrature& quad = {});

/// Phase matrix of the phase-space observable generated by |s>. s = 0 uses the
/// closed form; s >= 1 the radial quadrature, rescaled to an exact unit
/// diagonal after checking it is within 1e-8 of one.
PhaseMatrix phase_space_matrix(std::size_t s, std::size_t dim, const RadialQuadrature& quad = {});

/// Phases u (u_0 = 0) with c_nm = e^{i(u_n - u_m)} to `tol`, if they exist.
std::optional<std::vector<double>> rank_one_phases(const Matrix& entries, double tol = 1e-10);
inline std::optional<std::vector<double>> rank_one_phases(const PhaseMatrix& pm,
                                                          double tol = 1e-10) {
    return rank_one_phases(pm.matrix(), tol);
}

}  // namespace phaseobs

#endif  // PHASEOBS_PHASE_MATRIX_HPP
