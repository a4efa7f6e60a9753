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

#ifndef PHASEOBS_FOCK_HPP
#define PHASEOBS_FOCK_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace phaseobs {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Default absolute tolerance for Hermitian/PSD predicates.
inline constexpr double kDefaultTol = 1e-10;

/// Amplitudes on the truncated number basis |0>, ..., |dim-1>.
class StateVector {
public:
    explicit StateVector(Vector amps);

    static StateVector number_state(std::size_t n, std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector& amps() const { return amps_; }
    cplx operator[](std::size_t n) const { return amps_(static_cast<Eigen::Index>(n)); }

    double norm() const { return amps_.norm(); }
    /// True when the norm is within 1e-10 of one.
    bool is_unit() const;

private:
    Vector amps_;
};

/// Dense operator on the truncated number basis. Row index is the bra
/// number, column index the ket number.
class Operator {
public:
    explicit Operator(Matrix entries);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    cplx operator()(std::size_t n, std::size_t m) const {
        return entries_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    }

    Operator adjoint() const { return Operator(entries_.adjoint()); }
    StateVector apply(const StateVector& v) const;

    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);

private:
    Matrix entries_;
};

// Predicates. All are decidable from the entries alone.
bool is_hermitian(const Matrix& a, double tol = kDefaultTol);
/// Smallest eigenvalue >= -tol * dim. Throws std::invalid_argument when `a`
/// is not Hermitian to `tol`.
bool is_psd(const Matrix& a, double tol = kDefaultTol);
bool is_projection(const Matrix& a, double tol = kDefaultTol);
double min_eigenvalue(const Matrix& hermitian);
/// Largest singular value. Hermitian inputs take the eigenvalue route.
double operator_norm(const Matrix& a);

inline bool is_hermitian(const Operator& a, double tol = kDefaultTol) {
    return is_hermitian(a.matrix(), tol);
}
inline bool is_psd(const Operator& a, double tol = kDefaultTol) { return is_psd(a.matrix(), tol); }
inline bool is_projection(const Operator& a, double tol = kDefaultTol) {
    return is_projection(a.matrix(), tol);
}
inline double operator_norm(const Operator& a) { return operator_norm(a.matrix()); }

/// e^{-|z|^2/2} z^n / sqrt(n!) for n < dim, evaluated in log space.
StateVector coherent_vector(cplx z, std::size_t dim);

/// Smallest N with Poisson(|z|^2) mass beyond N - 1 below `tail`.
std::size_t truncation_for(cplx z, double tail);

/// diag(e^{i n theta}).
Operator phase_shifter(double theta, std::size_t dim);

/// Spectral form of the radial displacement generator r (a* - a).
///
/// a* - a is real, antisymmetric and tridiagonal. Conjugating by
/// diag(i^n) turns it into -i T with T = a + a* real symmetric, so
/// exp(r (a* - a)) = P exp(-i r T) P* with P = diag(i^n). T is
/// diagonalized once and every radius reuses the eigensystem.
class RadialDisplacement {
public:
    explicit RadialDisplacement(std::size_t size);

    std::size_t size() const { return size_; }

    /// <n|D(r)|col> for n < rows, computed on the full `size()` space.
    Vector column(double r, std::size_t col, std::size_t rows) const;
    /// Columns for a batch of radii, one per matrix column.
    Matrix columns(const Eigen::Ref<const Eigen::VectorXd>& radii, std::size_t col,
                   std::size_t rows) const;
    /// Top-left rows x cols block of D(r).
    Matrix block(double r, std::size_t rows, std::size_t cols) const;

private:
    std::size_t size_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

/// Guard band used by displacement_radial: max(32, 8 ceil(r^2)).
std::size_t displacement_guard_band(double r);

/// exp(r (a* - a)) computed on dim + guard band and cropped to dim.
Operator displacement_radial(double r, std::size_t dim);

}  // namespace phaseobs

#endif  // PHASEOBS_FOCK_HPP
