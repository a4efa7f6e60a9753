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

#include "phaseobs/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace phaseobs {

namespace {

using Index = Eigen::Index;

// fourier_coeff(X, k) for k = -(dim-1) .. dim-1, stored at k + dim - 1.
std::vector<cplx> coefficient_table(const CircleSet& set, std::size_t dim) {
    const long span = static_cast<long>(dim) - 1;
    std::vector<cplx> table(2 * dim - 1);
    for (long k = -span; k <= span; ++k) table[static_cast<std::size_t>(k + span)] = fourier_coeff(set, k);
    return table;
}

}  // namespace

Operator evaluate(const PhaseMatrix& pm, const CircleSet& set) {
    const std::size_t dim = pm.dim();
    const auto table = coefficient_table(set, dim);
    const Index d = static_cast<Index>(dim);
    Matrix e(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            e(n, m) = pm.matrix()(n, m) * table[static_cast<std::size_t>(n - m + d - 1)];
        }
    }
    return Operator(std::move(e));
}

double covariance_residual(const Operator& e_set, const Operator& e_shifted, double theta) {
    if (e_set.dim() != e_shifted.dim()) {
        throw std::invalid_argument("covariance_residual: dimension mismatch");
    }
    const Index d = static_cast<Index>(e_set.dim());
    Matrix diff(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            diff(n, m) = std::polar(1.0, static_cast<double>(n - m) * theta) * e_set.matrix()(n, m) -
                         e_shifted.matrix()(n, m);
        }
    }
    return operator_norm(diff);
}

double covariance_residual(const PhaseMatrix& pm, const CircleSet& set, double theta) {
    return covariance_residual(evaluate(pm, set), evaluate(pm, shift(set, theta)), theta);
}

Operator counterexample_F(const CircleSet& set, std::size_t dim) {
    if (dim < 2) throw std::invalid_argument("counterexample_F: dim must be at least 2");
    const Index d = static_cast<Index>(dim);
    Matrix f = Matrix::Identity(d, d) * fourier_coeff(set, 0);
    const double off = sine_integral(set);
    f(0, 1) = off;
    f(1, 0) = off;
    return Operator(std::move(f));
}

double counterexample_covariance_residual(const CircleSet& set, double theta, std::size_t dim) {
    return covariance_residual(counterexample_F(set, dim), counterexample_F(shift(set, theta), dim),
                               theta);
}

double projection_defect(const PhaseMatrix& pm, const CircleSet& set) {
    const Operator e = evaluate(pm, set);
    return operator_norm((e * e - e).matrix());
}

Operator moment_operator(const PhaseMatrix& pm, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("moment_operator: p must be 1 or 2");
    const Index d = static_cast<Index>(pm.dim());
    Matrix e(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) e(n, m) = pm.matrix()(n, m) * moment_coeff(p, n - m);
    }
    return Operator(std::move(e));
}

Matrix phase_matrix_from_first_moment(const Operator& first_moment) {
    const Index d = static_cast<Index>(first_moment.dim());
    Matrix c(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            c(n, m) = n == m ? cplx(1.0) : first_moment.matrix()(n, m) * cplx(0.0, static_cast<double>(n - m));
        }
    }
    return c;
}

VarianceReport first_moment_variance(const PhaseMatrix& pm, std::size_t n) {
    const std::size_t dim = pm.dim();
    if (n >= dim) throw std::invalid_argument("first_moment_variance: n must be below dim");
    const Index row = static_cast<Index>(n);
    const Operator e1 = moment_operator(pm, 1);
    const cplx square = e1.matrix().row(row) * e1.matrix().col(row);
    const cplx mean = e1.matrix()(row, row);

    VarianceReport report;
    report.operator_form = (square - mean * mean).real();
    double series = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        if (m == n) continue;
        const double gap = static_cast<double>(m) - static_cast<double>(n);
        series += std::norm(pm(n, m)) / (gap * gap);
    }
    report.series_form = series;
    // sum_{m >= dim} 1/(m - n)^2 <= 1/(dim - 1 - n), using |c_nm| <= 1.
    report.tail_bound = dim > n + 1 ? 1.0 / static_cast<double>(dim - 1 - n) : 0.0;
    report.agree = std::abs(report.operator_form - report.series_form) <= 1e-6;
    return report;
}

Operator cyclic_moment(const PhaseMatrix& pm, std::size_t k) {
    if (k >= pm.dim()) throw std::invalid_argument("cyclic_moment: k must be below dim");
    const Index d = static_cast<Index>(pm.dim());
    const Index kk = static_cast<Index>(k);
    Matrix v = Matrix::Zero(d, d);
    for (Index n = 0; n + kk < d; ++n) v(n, n + kk) = pm.matrix()(n, n + kk);
    return Operator(std::move(v));
}

StrongReport is_strong(const PhaseMatrix& pm, std::size_t kmax, double tol) {
    if (kmax >= pm.dim()) throw std::invalid_argument("is_strong: kmax must be below dim");
    const Index d = static_cast<Index>(pm.dim());
    const Matrix v1 = cyclic_moment(pm, 1 % pm.dim()).matrix();
    Matrix power = Matrix::Identity(d, d);
    StrongReport report;
    report.strong = true;
    for (std::size_t k = 1; k <= kmax; ++k) {
        power = (power * v1).eval();
        const Index interior = d - static_cast<Index>(k);
        const Matrix vk = cyclic_moment(pm, k).matrix();
        const double residual =
            operator_norm((vk - power).topLeftCorner(interior, interior).eval());
        if (residual > tol) {
            report.strong = false;
            report.failing_k = k;
            report.residual = residual;
            return report;
        }
        report.residual = std::max(report.residual, residual);
    }
    return report;
}

NumberShiftReport number_shift_check(const PhaseMatrix& pm, std::size_t kmax, double tol) {
    if (kmax >= pm.dim()) throw std::invalid_argument("number_shift_check: kmax must be below dim");
    const std::size_t dim = pm.dim();
    NumberShiftReport report;
    for (std::size_t k = 1; k <= kmax; ++k) {
        for (std::size_t n = 0; n + k < dim; ++n) {
            // V^(k)|n+k> = c_{n,n+k} |n>.
            const cplx c = pm(n, n + k);
            report.modulus_defect = std::max(report.modulus_defect, std::abs(std::abs(c) - 1.0));
            report.phase_defect = std::max(report.phase_defect, std::abs(c - 1.0));
        }
    }
    report.shifts = report.modulus_defect <= tol;
    report.exact = report.phase_defect == 0.0;
    return report;
}

}  // namespace phaseobs
