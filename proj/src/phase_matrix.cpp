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

#include "phaseobs/phase_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace phaseobs {

namespace {

using Index = Eigen::Index;

constexpr double kEntryTol = 1e-10;

}  // namespace

std::string PhaseMatrixReport::describe() const {
    std::ostringstream out;
    out << "hermitian=" << hermitian << " (" << hermitian_violation << ")"
        << ", unit_diagonal=" << unit_diagonal << " (" << diagonal_violation << ")"
        << ", psd=" << psd << " (min eigenvalue " << min_eigenvalue << ")"
        << ", bounded_entries=" << bounded_entries << " (max |c| " << max_abs_entry << ")";
    return out.str();
}

PhaseMatrixReport validate(const Matrix& entries) {
    PhaseMatrixReport report;
    if (entries.rows() == 0 || entries.rows() != entries.cols() || !entries.allFinite()) {
        return report;
    }
    const double dim = static_cast<double>(entries.rows());
    report.hermitian_violation = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    report.diagonal_violation = (entries.diagonal().array() - cplx(1.0)).abs().maxCoeff();
    report.max_abs_entry = entries.cwiseAbs().maxCoeff();
    const Matrix hermitian_part = 0.5 * (entries + entries.adjoint());
    report.min_eigenvalue = min_eigenvalue(hermitian_part);

    report.hermitian = report.hermitian_violation <= kEntryTol;
    report.unit_diagonal = report.diagonal_violation <= kEntryTol;
    report.psd = report.min_eigenvalue >= -kEntryTol * dim;
    report.bounded_entries = report.max_abs_entry <= 1.0 + kEntryTol;
    return report;
}

PhaseMatrix PhaseMatrix::from_entries(Matrix entries, std::string family) {
    const PhaseMatrixReport report = validate(entries);
    if (!report.ok()) {
        throw std::invalid_argument("not a phase matrix: " + report.describe());
    }
    return PhaseMatrix(std::move(entries), std::move(family));
}

PhaseMatrix PhaseMatrix::restrict_to(std::size_t dim) const {
    if (dim == 0 || dim > this->dim()) {
        throw std::invalid_argument("PhaseMatrix::restrict_to: dim out of range");
    }
    const Index d = static_cast<Index>(dim);
    return PhaseMatrix(entries_.topLeftCorner(d, d), family_);
}

PhaseMatrix canonical(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("canonical: dim must be positive");
    const Index d = static_cast<Index>(dim);
    return PhaseMatrix(Matrix::Ones(d, d), "canonical");
}

PhaseMatrix trivial(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("trivial: dim must be positive");
    const Index d = static_cast<Index>(dim);
    return PhaseMatrix(Matrix::Identity(d, d), "trivial");
}

PhaseMatrix diagonal_conjugate(const PhaseMatrix& pm, std::span<const double> phases) {
    if (phases.size() != pm.dim()) {
        throw std::invalid_argument("diagonal_conjugate: need one phase per basis state");
    }
    if (!std::all_of(phases.begin(), phases.end(), [](double x) { return std::isfinite(x); })) {
        throw std::invalid_argument("diagonal_conjugate: phases must be finite");
    }
    Matrix out = pm.matrix();
    for (Index n = 0; n < out.rows(); ++n) {
        for (Index m = 0; m < out.cols(); ++m) {
            if (n == m) continue;
            out(n, m) *= std::polar(1.0, phases[static_cast<std::size_t>(n)] -
                                             phases[static_cast<std::size_t>(m)]);
        }
    }
    std::string family = pm.family() == "canonical" ? "rotated" : pm.family();
    return PhaseMatrix(std::move(out), std::move(family));
}

PhaseMatrix from_vectors(std::span<const StateVector> vectors) {
    if (vectors.empty()) throw std::invalid_argument("from_vectors: empty sequence");
    const std::size_t len = vectors.front().dim();
    Matrix stacked(static_cast<Index>(len), static_cast<Index>(vectors.size()));
    for (std::size_t n = 0; n < vectors.size(); ++n) {
        if (vectors[n].dim() != len) {
            throw std::invalid_argument("from_vectors: vectors must share a dimension");
        }
        if (!vectors[n].is_unit()) {
            throw std::invalid_argument("from_vectors: vector " + std::to_string(n) +
                                        " is not a unit vector");
        }
        stacked.col(static_cast<Index>(n)) = vectors[n].amps();
    }
    return PhaseMatrix::from_entries(stacked.adjoint() * stacked, "gram");
}

std::vector<StateVector> vector_realization(const PhaseMatrix& pm) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(pm.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("vector_realization: eigensolver failed");
    }
    const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    // Columns of diag(sqrt(lambda)) V^* have Gram matrix V diag(lambda) V^*.
    const Matrix factor = roots.asDiagonal() * solver.eigenvectors().adjoint();
    std::vector<StateVector> out;
    out.reserve(pm.dim());
    for (Index n = 0; n < factor.cols(); ++n) {
        Vector v = factor.col(n);
        // Clipping tiny negative eigenvalues perturbs the norm at roundoff level.
        v /= v.norm();
        out.emplace_back(std::move(v));
    }
    return out;
}

Matrix from_bra_forms(std::span<const BraForm> forms, std::span<const std::size_t> index_set) {
    const Index size = static_cast<Index>(index_set.size());
    if (size == 0) throw std::invalid_argument("from_bra_forms: empty index set");
    Matrix coeffs(static_cast<Index>(forms.size()), size);
    for (std::size_t k = 0; k < forms.size(); ++k) {
        if (forms[k].coeffs.size() != index_set.size()) {
            throw std::invalid_argument("from_bra_forms: form length differs from the index set");
        }
        for (Index n = 0; n < size; ++n) {
            coeffs(static_cast<Index>(k), n) = forms[k].coeffs[static_cast<std::size_t>(n)];
        }
    }
    if (!coeffs.allFinite() || !coeffs.colwise().squaredNorm().allFinite()) {
        throw std::invalid_argument("from_bra_forms: coefficients are not square summable");
    }
    return coeffs.adjoint() * coeffs;
}

std::vector<BraForm> bra_forms_from_vectors(std::span<const StateVector> vectors) {
    if (vectors.empty()) return {};
    const std::size_t len = vectors.front().dim();
    std::vector<BraForm> forms(len);
    for (std::size_t k = 0; k < len; ++k) {
        forms[k].coeffs.reserve(vectors.size());
        for (const auto& psi : vectors) {
            if (psi.dim() != len) {
                throw std::invalid_argument("bra_forms_from_vectors: vectors must share a dimension");
            }
            forms[k].coeffs.push_back(psi[k]);
        }
    }
    return forms;
}

double vacuum_phase_space_entry(std::size_t n, std::size_t m) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    if (n == m) return 1.0;
    return std::exp(std::lgamma(0.5 * (nd + md) + 1.0) -
                    0.5 * (std::lgamma(nd + 1.0) + std::lgamma(md + 1.0)));
}

PhaseSpaceQuadrature phase_space_quadrature(std::size_t s, std::size_t dim,
                                            const RadialQuadrature& quad) {
    if (dim == 0) throw std::invalid_argument("phase_space_quadrature: dim must be positive");
    if (quad.nodes_per_panel == 0 || !(quad.panel_width > 0.0)) {
        throw std::invalid_argument("phase_space_quadrature: invalid panel settings");
    }
    // <n|D(r)|s> is negligible once u = r^2 is far beyond max(n, s); the
    // generator is diagonalized on a space that keeps the displaced state
    // clear of the truncation boundary over the whole u range.
    const double reach = static_cast<double>(std::max(dim, s + 1));
    const double upper = quad.upper > 0.0 ? quad.upper : reach + 12.0 * std::sqrt(reach) + 40.0;
    const std::size_t size =
        std::max(dim, s + 1) + static_cast<std::size_t>(std::ceil(upper + 10.0 * std::sqrt(upper))) + 32;
    const RadialDisplacement generator(size);
    // Nodes in r with weight 2r: the integrand is a polynomial in r times a
    // Gaussian, while in u it carries sqrt(u) terms whenever |n-s| + |m-s| is odd.
    const double r_upper = std::sqrt(upper);
    const std::size_t panels = static_cast<std::size_t>(std::ceil(r_upper / quad.panel_width));
    const Index d = static_cast<Index>(dim);

    auto integrate = [&](std::size_t nodes_per_panel) {
        const QuadratureRule rule = composite_gauss_legendre(
            0.0, static_cast<double>(panels) * quad.panel_width, panels, nodes_per_panel);
        Matrix acc = Matrix::Zero(d, d);
        for (std::size_t p = 0; p < panels; ++p) {
            const Index offset = static_cast<Index>(p * nodes_per_panel);
            const Index count = static_cast<Index>(nodes_per_panel);
            Eigen::VectorXd radii(count);
            Eigen::VectorXd weights(count);
            for (Index j = 0; j < count; ++j) {
                radii(j) = rule.nodes[static_cast<std::size_t>(offset + j)];
                weights(j) = 2.0 * radii(j) * rule.weights[static_cast<std::size_t>(offset + j)];
            }
            const Matrix cols = generator.columns(radii, s, dim);
            acc.noalias() += (cols * weights.asDiagonal()) * cols.adjoint();
        }
        return acc;
    };

    const Matrix coarse = integrate(quad.nodes_per_panel);
    Matrix fine = integrate(2 * quad.nodes_per_panel);
    const double residual = (fine - coarse).cwiseAbs().maxCoeff();
    if (!(residual < quad.tolerance)) {
        std::ostringstream msg;
        msg << "phase_space_quadrature: no convergence for s=" << s << ", dim=" << dim
            << " (achieved residual " << residual << ", tolerance " << quad.tolerance << ")";
        throw std::runtime_error(msg.str());
    }
    return {std::move(fine), residual, upper, size};
}

PhaseMatrix phase_space_matrix(std::size_t s, std::size_t dim, const RadialQuadrature& quad) {
    if (dim == 0) throw std::invalid_argument("phase_space_matrix: dim must be positive");
    const std::string family = "phase-space:" + std::to_string(s);
    const Index d = static_cast<Index>(dim);
    if (s == 0) {
        Matrix c(d, d);
        for (Index n = 0; n < d; ++n) {
            for (Index m = 0; m <= n; ++m) {
                const double v = vacuum_phase_space_entry(static_cast<std::size_t>(n),
                                                          static_cast<std::size_t>(m));
                c(n, m) = v;
                c(m, n) = v;
            }
        }
        return PhaseMatrix(std::move(c), family);
    }
    PhaseSpaceQuadrature q = phase_space_quadrature(s, dim, quad);
    Eigen::VectorXd diag = q.entries.diagonal().real();
    const double worst = (diag.array() - 1.0).abs().maxCoeff();
    if (!(worst <= 1e-8)) {
        std::ostringstream msg;
        msg << "phase_space_matrix: quadrature diagonal deviates from one by " << worst;
        throw std::runtime_error(msg.str());
    }
    const Eigen::VectorXd scale = diag.cwiseSqrt().cwiseInverse();
    Matrix c = scale.asDiagonal() * q.entries * scale.asDiagonal();
    c = (0.5 * (c + c.adjoint())).eval();
    c.diagonal().setOnes();
    return PhaseMatrix(std::move(c), family);
}

std::optional<std::vector<double>> rank_one_phases(const Matrix& entries, double tol) {
    const Index d = entries.rows();
    if (d == 0 || entries.cols() != d) return std::nullopt;
    if (((entries.cwiseAbs().array() - 1.0).abs() > tol).any()) return std::nullopt;
    // c_0n = e^{-i u_n} with the gauge u_0 = 0.
    std::vector<double> phases(static_cast<std::size_t>(d), 0.0);
    for (Index n = 1; n < d; ++n) {
        double u = -std::arg(entries(0, n));
        if (u < 0.0) u += kTwoPi;
        if (u >= kTwoPi) u = 0.0;
        phases[static_cast<std::size_t>(n)] = u;
    }
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            const cplx expected = std::polar(1.0, phases[static_cast<std::size_t>(n)] -
                                                      phases[static_cast<std::size_t>(m)]);
            if (std::abs(entries(n, m) - expected) > tol) return std::nullopt;
        }
    }
    return phases;
}

}  // namespace phaseobs
