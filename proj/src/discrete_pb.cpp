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

#include "phaseobs/discrete_pb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

namespace phaseobs {

namespace {

using Index = Eigen::Index;

constexpr double kZeroEntry = 1e-12;

// e^{i k theta_{s,l}} with the exponent reduced modulo s + 1 first.
cplx grid_phase(std::size_t s, long k, std::size_t l) {
    const long period = static_cast<long>(s + 1);
    const long t = ((k % period) * static_cast<long>(l % (s + 1))) % period;
    const long reduced = (t + period) % period;
    return std::polar(1.0, kTwoPi * static_cast<double>(reduced) / static_cast<double>(period));
}

void require_index_set(const std::vector<std::size_t>& index_set) {
    if (index_set.empty()) throw std::invalid_argument("index set J must be non-empty");
    for (std::size_t i = 1; i < index_set.size(); ++i) {
        if (index_set[i] <= index_set[i - 1]) {
            throw std::invalid_argument("index set J must be strictly increasing");
        }
    }
}

bool forbidden_pair(std::size_t s, std::size_t n, std::size_t m) {
    return n != m && (n > m ? n - m : m - n) % (s + 1) == 0;
}

double snap(double x) {
    const double r = std::round(x);
    return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x)) ? r : x;
}

// Circular distance from x to the grid of spacing h.
double grid_distance(double x, double h) {
    const double f = x / h - std::floor(x / h);
    return h * std::min(f, 1.0 - f);
}

}  // namespace

double grid_angle(std::size_t s, std::size_t k) {
    return kTwoPi * static_cast<double>(k % (s + 1)) / static_cast<double>(s + 1);
}

bool grid_point_in(std::size_t s, std::size_t k, const CircleSet& set) {
    if (set.is_full()) return true;
    const double scale = static_cast<double>(s + 1) / kTwoPi;
    const double kd = static_cast<double>(k % (s + 1));
    for (const auto& iv : set.intervals()) {
        const double lo = snap(iv.a * scale);
        const double hi = snap(iv.b * scale);
        if (lo <= kd && kd < hi) return true;
    }
    return false;
}

StateVector pb_state(std::size_t s, std::size_t k) {
    if (k > s) throw std::invalid_argument("pb_state: k must not exceed s");
    const Index d = static_cast<Index>(s + 1);
    const double norm = 1.0 / std::sqrt(static_cast<double>(s + 1));
    Vector v(d);
    for (Index n = 0; n < d; ++n) v(n) = norm * grid_phase(s, n, k);
    return StateVector(std::move(v));
}

std::string DiscreteReport::describe() const {
    std::ostringstream out;
    out << "hermitian=" << hermitian << ", unit_diagonal=" << unit_diagonal << ", psd=" << psd
        << " (min eigenvalue " << min_eigenvalue << "), zero_pattern=" << zero_pattern;
    for (const auto& [n, m] : pattern_violations) out << " [" << n << "," << m << "]";
    return out.str();
}

DiscreteReport validate_A(const std::vector<std::size_t>& index_set, std::size_t s, const Matrix& a) {
    require_index_set(index_set);
    const Index size = static_cast<Index>(index_set.size());
    if (a.rows() != size || a.cols() != size) {
        throw std::invalid_argument("validate_A: A must be #J x #J");
    }
    DiscreteReport report;
    if (!a.allFinite()) return report;
    report.hermitian = (a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-10;
    report.unit_diagonal = (a.diagonal().array() - cplx(1.0)).abs().maxCoeff() <= 1e-12;
    report.min_eigenvalue = min_eigenvalue(0.5 * (a + a.adjoint()));
    report.psd = report.min_eigenvalue >= -1e-10 * static_cast<double>(size);
    for (Index i = 0; i < size; ++i) {
        for (Index j = i + 1; j < size; ++j) {
            const std::size_t n = index_set[static_cast<std::size_t>(i)];
            const std::size_t m = index_set[static_cast<std::size_t>(j)];
            if (forbidden_pair(s, n, m) &&
                std::max(std::abs(a(i, j)), std::abs(a(j, i))) > kZeroEntry) {
                report.pattern_violations.emplace_back(n, m);
            }
        }
    }
    report.zero_pattern = report.pattern_violations.empty();
    return report;
}

DiscretePhasePOM make_discrete_pom(std::vector<std::size_t> index_set, std::size_t s, Matrix a) {
    const DiscreteReport report = validate_A(index_set, s, a);
    if (!report.ok()) {
        std::string failed;
        if (!report.hermitian) failed += " hermitian";
        if (!report.unit_diagonal) failed += " unit_diagonal";
        if (!report.psd) failed += " psd";
        if (!report.zero_pattern) failed += " zero_pattern";
        throw std::invalid_argument("make_discrete_pom: violated" + failed + " (" +
                                    report.describe() + ")");
    }
    return DiscretePhasePOM(s, std::move(index_set), std::move(a));
}

Operator DiscretePhasePOM::point_operator(std::size_t l) const {
    if (l > s_) throw std::invalid_argument("point_operator: l must not exceed s");
    const Index size = static_cast<Index>(index_set_.size());
    const double weight = 1.0 / static_cast<double>(s_ + 1);
    Matrix e(size, size);
    for (Index i = 0; i < size; ++i) {
        for (Index j = 0; j < size; ++j) {
            const long gap = static_cast<long>(index_set_[static_cast<std::size_t>(i)]) -
                             static_cast<long>(index_set_[static_cast<std::size_t>(j)]);
            e(i, j) = weight * a_(i, j) * grid_phase(s_, gap, l);
        }
    }
    return Operator(std::move(e));
}

Operator DiscretePhasePOM::on_subspace(const CircleSet& set) const {
    const Index size = static_cast<Index>(index_set_.size());
    Matrix acc = Matrix::Zero(size, size);
    for (std::size_t l = 0; l <= s_; ++l) {
        if (grid_point_in(s_, l, set)) acc += point_operator(l).matrix();
    }
    return Operator(std::move(acc));
}

DiscretePhasePOM pb_canonical(std::size_t s) {
    std::vector<std::size_t> index_set(s + 1);
    for (std::size_t n = 0; n <= s; ++n) index_set[n] = n;
    const Index d = static_cast<Index>(s + 1);
    return make_discrete_pom(std::move(index_set), s, Matrix::Ones(d, d));
}

DiscretePhasePOM restriction_pom(const PhaseMatrix& pm, std::size_t s) {
    const std::size_t size = std::min(s + 1, pm.dim());
    std::vector<std::size_t> index_set(size);
    for (std::size_t n = 0; n < size; ++n) index_set[n] = n;
    const Index d = static_cast<Index>(size);
    Matrix a = pm.matrix().topLeftCorner(d, d);
    a.diagonal().setOnes();
    return make_discrete_pom(std::move(index_set), s, std::move(a));
}

double discrete_covariance_residual(const DiscretePhasePOM& pom, std::size_t k, std::size_t l) {
    const std::size_t s = pom.order();
    if (k > s || l > s) throw std::invalid_argument("discrete_covariance_residual: k, l must not exceed s");
    const Matrix point = pom.point_operator(l).matrix();
    const Matrix target = pom.point_operator((k + l) % (s + 1)).matrix();
    const auto& index_set = pom.index_set();
    Matrix diff(point.rows(), point.cols());
    for (Index i = 0; i < point.rows(); ++i) {
        for (Index j = 0; j < point.cols(); ++j) {
            const long gap = static_cast<long>(index_set[static_cast<std::size_t>(i)]) -
                             static_cast<long>(index_set[static_cast<std::size_t>(j)]);
            diff(i, j) = grid_phase(s, gap, k) * point(i, j) - target(i, j);
        }
    }
    return operator_norm(diff);
}

ProjectionClassification is_projection_valued(const DiscretePhasePOM& pom, double tol) {
    ProjectionClassification out;
    for (std::size_t l = 0; l <= pom.order(); ++l) {
        const Matrix e = pom.point_operator(l).matrix();
        out.idempotence_defect = std::max(out.idempotence_defect, (e * e - e).cwiseAbs().maxCoeff());
    }
    out.projection_valued = out.idempotence_defect <= tol;
    out.rank_one_phase = rank_one_phases(pom.a(), tol).has_value();
    out.cardinality = pom.index_set().size();
    out.cardinality_matches = out.cardinality == pom.points();
    out.consistent = out.projection_valued == (out.rank_one_phase && out.cardinality_matches);
    return out;
}

Operator accumulate(const DiscretePhasePOM& pom, const CircleSet& set, std::size_t ambient_dim) {
    const auto& index_set = pom.index_set();
    if (ambient_dim <= index_set.back()) {
        throw std::invalid_argument("accumulate: ambient_dim must exceed max(J)");
    }
    const Matrix local = pom.on_subspace(set).matrix();
    const Index d = static_cast<Index>(ambient_dim);
    Matrix out = Matrix::Zero(d, d);
    for (Index i = 0; i < local.rows(); ++i) {
        for (Index j = 0; j < local.cols(); ++j) {
            out(static_cast<Index>(index_set[static_cast<std::size_t>(i)]),
                static_cast<Index>(index_set[static_cast<std::size_t>(j)])) = local(i, j);
        }
    }
    return Operator(std::move(out));
}

cplx discrete_fourier_coeff(std::size_t s, const CircleSet& set, long k) {
    cplx acc = 0.0;
    for (std::size_t l = 0; l <= s; ++l) {
        if (grid_point_in(s, l, set)) acc += grid_phase(s, k, l);
    }
    return acc / static_cast<double>(s + 1);
}

double convergence_error(const PhaseMatrix& pm, std::size_t s, const CircleSet& set, std::size_t n,
                         std::size_t m) {
    if (n > s || m > s || n >= pm.dim() || m >= pm.dim()) {
        throw std::invalid_argument("convergence_error: (n, m) must lie in J(s) and the phase matrix");
    }
    const long gap = static_cast<long>(n) - static_cast<long>(m);
    const cplx c = pm(n, m);
    return std::abs(c * discrete_fourier_coeff(s, set, gap) - c * fourier_coeff(set, gap));
}

double spectral_accuracy(std::size_t s, const Interval& interval) {
    if (!(interval.a >= 0.0 && interval.a < interval.b && interval.b <= kTwoPi)) {
        throw std::invalid_argument("spectral_accuracy: need 0 <= a < b <= 2pi");
    }
    const double h = kTwoPi / static_cast<double>(s + 1);
    // The distance is piecewise linear with maxima h/2 at the cell midpoints
    // (j + 1/2) h; otherwise the sup sits at an endpoint.
    const double first_mid = std::ceil(interval.a / h - 0.5);
    const double mid = (first_mid + 0.5) * h;
    if (mid >= interval.a && mid < interval.b) return kPi / static_cast<double>(s + 1);
    return std::max(grid_distance(interval.a, h), grid_distance(interval.b, h));
}

NormalizationSolutions normalization_solutions(const std::vector<std::size_t>& index_set,
                                               std::size_t s) {
    require_index_set(index_set);
    const Index size = static_cast<Index>(index_set.size());
    const Index unknowns = size * size;
    Matrix system = Matrix::Zero(unknowns, unknowns);
    for (Index col = 0; col < unknowns; ++col) {
        Matrix basis = Matrix::Zero(size, size);
        basis(col / size, col % size) = 1.0;
        Matrix image = Matrix::Zero(size, size);
        for (std::size_t l = 0; l <= s; ++l) {
            Vector phases(size);
            for (Index i = 0; i < size; ++i) {
                phases(i) = grid_phase(s, static_cast<long>(index_set[static_cast<std::size_t>(i)]), l);
            }
            image += phases.asDiagonal() * basis * phases.conjugate().asDiagonal();
        }
        for (Index row = 0; row < unknowns; ++row) system(row, col) = image(row / size, row % size);
    }
    Vector rhs = Vector::Zero(unknowns);
    for (Index i = 0; i < size; ++i) rhs(i * size + i) = 1.0;

    Eigen::FullPivLU<Matrix> lu(system);
    lu.setThreshold(1e-10);
    NormalizationSolutions out;
    const Vector particular = lu.solve(rhs);
    out.solvable = (system * particular - rhs).cwiseAbs().maxCoeff() <= 1e-10;
    out.particular = Matrix::Zero(size, size);
    for (Index k = 0; k < unknowns; ++k) out.particular(k / size, k % size) = particular(k);
    const Matrix kernel = lu.kernel();
    if (lu.rank() < unknowns) {
        for (Index c = 0; c < kernel.cols(); ++c) {
            Matrix k = Matrix::Zero(size, size);
            for (Index i = 0; i < unknowns; ++i) k(i / size, i % size) = kernel(i, c);
            out.kernel.push_back(std::move(k));
        }
    }
    return out;
}

double converse_deviation(const std::vector<std::size_t>& index_set, std::size_t s) {
    const NormalizationSolutions sol = normalization_solutions(index_set, s);
    if (!sol.solvable) return std::numeric_limits<double>::infinity();
    const double points = static_cast<double>(s + 1);
    const Index size = static_cast<Index>(index_set.size());
    double worst = 0.0;
    auto check = [&](const Matrix& b, double diagonal_target, double scale) {
        for (Index i = 0; i < size; ++i) {
            worst = std::max(worst, std::abs(points * b(i, i) - diagonal_target) / scale);
            for (Index j = 0; j < size; ++j) {
                if (forbidden_pair(s, index_set[static_cast<std::size_t>(i)],
                                   index_set[static_cast<std::size_t>(j)])) {
                    worst = std::max(worst, points * std::abs(b(i, j)) / scale);
                }
            }
        }
    };
    check(sol.particular, 1.0, 1.0);
    for (const Matrix& k : sol.kernel) check(k, 0.0, std::max(k.cwiseAbs().maxCoeff(), 1e-300));
    return worst;
}

}  // namespace phaseobs
