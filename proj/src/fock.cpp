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

#include "phaseobs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace phaseobs {

namespace {

using Index = Eigen::Index;

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

// i^k for integer k.
cplx i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

StateVector::StateVector(Vector amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw std::invalid_argument("StateVector: dimension must be positive");
    }
    if (!amps_.allFinite()) {
        throw std::invalid_argument("StateVector: non-finite amplitudes");
    }
}

StateVector StateVector::number_state(std::size_t n, std::size_t dim) {
    if (n >= dim) {
        throw std::invalid_argument("number_state: n must be below dim");
    }
    Vector v = Vector::Zero(static_cast<Index>(dim));
    v(static_cast<Index>(n)) = 1.0;
    return StateVector(std::move(v));
}

bool StateVector::is_unit() const { return std::abs(norm() - 1.0) <= 1e-10; }

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("Operator: entries must be a non-empty square matrix");
    }
    require_finite(entries_, "Operator");
}

Operator Operator::identity(std::size_t dim) {
    return Operator(Matrix::Identity(static_cast<Index>(dim), static_cast<Index>(dim)));
}

Operator Operator::zero(std::size_t dim) {
    return Operator(Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim)));
}

StateVector Operator::apply(const StateVector& v) const {
    if (v.dim() != dim()) {
        throw std::invalid_argument("Operator::apply: dimension mismatch");
    }
    return StateVector(entries_ * v.amps());
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Operator product: dimension mismatch");
    return Operator(a.entries_ * b.entries_);
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Operator sum: dimension mismatch");
    return Operator(a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Operator difference: dimension mismatch");
    return Operator(a.entries_ - b.entries_);
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue: eigensolver failed");
    }
    return solver.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& a, double tol) {
    if (!is_hermitian(a, tol)) {
        throw std::invalid_argument("is_psd: input is not Hermitian");
    }
    return min_eigenvalue(a) >= -tol * static_cast<double>(a.rows());
}

bool is_projection(const Matrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    return (a * a - a).cwiseAbs().maxCoeff() <= tol;
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    if (is_hermitian(a, 0.0)) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

StateVector coherent_vector(cplx z, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("coherent_vector: dim must be positive");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("coherent_vector: z must be finite");
    }
    Vector amps = Vector::Zero(static_cast<Index>(dim));
    const double radius = std::abs(z);
    if (radius == 0.0) {
        amps(0) = 1.0;
        return StateVector(std::move(amps));
    }
    const double arg = std::arg(z);
    const double log_r = std::log(radius);
    const double half_norm = -0.5 * radius * radius;
    for (std::size_t n = 0; n < dim; ++n) {
        const double nd = static_cast<double>(n);
        const double log_mag = half_norm + nd * log_r - 0.5 * std::lgamma(nd + 1.0);
        amps(static_cast<Index>(n)) = std::polar(std::exp(log_mag), nd * arg);
    }
    return StateVector(std::move(amps));
}

std::size_t truncation_for(cplx z, double tail) {
    if (!(tail > 0.0 && tail < 1.0)) {
        throw std::invalid_argument("truncation_for: tail must lie in (0, 1)");
    }
    const double mean = std::norm(z);
    if (mean == 0.0) return 1;
    const double log_mean = std::log(mean);
    auto log_pmf = [&](double n) { return -mean + n * log_mean - std::lgamma(n + 1.0); };

    // Past the mode the terms decrease at least geometrically; stop once they
    // are far below the requested tail.
    const double cutoff = std::log(tail) - 50.0;
    std::vector<double> pmf;
    for (std::size_t n = 0;; ++n) {
        const double lp = log_pmf(static_cast<double>(n));
        pmf.push_back(std::exp(lp));
        if (static_cast<double>(n) > mean + 1.0 && lp < cutoff) break;
    }
    // Backward accumulation keeps the tail free of cancellation.
    double acc = 0.0;
    std::size_t answer = pmf.size();
    for (std::size_t n = pmf.size(); n-- > 0;) {
        acc += pmf[n];
        if (acc < tail) {
            answer = n;
        } else {
            break;
        }
    }
    return std::max<std::size_t>(answer, 1);
}

Operator phase_shifter(double theta, std::size_t dim) {
    if (!std::isfinite(theta)) throw std::invalid_argument("phase_shifter: theta must be finite");
    if (dim == 0) throw std::invalid_argument("phase_shifter: dim must be positive");
    Matrix r = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    for (std::size_t n = 0; n < dim; ++n) {
        r(static_cast<Index>(n), static_cast<Index>(n)) = std::polar(1.0, static_cast<double>(n) * theta);
    }
    return Operator(std::move(r));
}

RadialDisplacement::RadialDisplacement(std::size_t size) : size_(size) {
    if (size == 0) throw std::invalid_argument("RadialDisplacement: size must be positive");
    const Index n = static_cast<Index>(size);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max<Index>(n - 1, 0));
    for (Index k = 0; k + 1 < n; ++k) sub(k) = std::sqrt(static_cast<double>(k + 1));
    if (n == 1) {
        eigenvalues_ = Eigen::VectorXd::Zero(1);
        eigenvectors_ = Eigen::MatrixXd::Identity(1, 1);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("RadialDisplacement: tridiagonal eigensolve failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Matrix RadialDisplacement::columns(const Eigen::Ref<const Eigen::VectorXd>& radii, std::size_t col,
                                   std::size_t rows) const {
    if (col >= size_ || rows > size_) {
        throw std::invalid_argument("RadialDisplacement: index outside the computed space");
    }
    const Index n = static_cast<Index>(size_);
    const Index nr = radii.size();
    Matrix weighted(n, nr);
    for (Index k = 0; k < nr; ++k) {
        if (!(radii(k) >= 0.0)) throw std::invalid_argument("RadialDisplacement: r must be >= 0");
        for (Index j = 0; j < n; ++j) {
            weighted(j, k) = eigenvectors_(static_cast<Index>(col), j) *
                             std::polar(1.0, -radii(k) * eigenvalues_(j));
        }
    }
    Matrix out = eigenvectors_.topRows(static_cast<Index>(rows)).cast<cplx>() * weighted;
    for (Index row = 0; row < static_cast<Index>(rows); ++row) {
        out.row(row) *= i_pow(static_cast<long>(row) - static_cast<long>(col));
    }
    return out;
}

Vector RadialDisplacement::column(double r, std::size_t col, std::size_t rows) const {
    Eigen::VectorXd radius(1);
    radius(0) = r;
    return columns(radius, col, rows).col(0);
}

Matrix RadialDisplacement::block(double r, std::size_t rows, std::size_t cols) const {
    if (!(r >= 0.0)) throw std::invalid_argument("RadialDisplacement: r must be >= 0");
    if (rows > size_ || cols > size_) {
        throw std::invalid_argument("RadialDisplacement: block exceeds the computed space");
    }
    const Index n = static_cast<Index>(size_);
    Eigen::VectorXcd phases(n);
    for (Index j = 0; j < n; ++j) phases(j) = std::polar(1.0, -r * eigenvalues_(j));
    const Matrix left = eigenvectors_.topRows(static_cast<Index>(rows)).cast<cplx>() * phases.asDiagonal();
    Matrix out = left * eigenvectors_.topRows(static_cast<Index>(cols)).transpose().cast<cplx>();
    for (Index a = 0; a < out.rows(); ++a) {
        for (Index b = 0; b < out.cols(); ++b) out(a, b) *= i_pow(static_cast<long>(a - b));
    }
    return out;
}

std::size_t displacement_guard_band(double r) {
    return std::max<std::size_t>(32, 8 * static_cast<std::size_t>(std::ceil(r * r)));
}

Operator displacement_radial(double r, std::size_t dim) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("displacement_radial: r must be finite and >= 0");
    }
    if (dim == 0) throw std::invalid_argument("displacement_radial: dim must be positive");
    if (r == 0.0) return Operator::identity(dim);
    const RadialDisplacement generator(dim + displacement_guard_band(r));
    return Operator(generator.block(r, dim, dim));
}

}  // namespace phaseobs
