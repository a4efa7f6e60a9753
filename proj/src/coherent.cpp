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

#include "phaseobs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "phaseobs/observables.hpp"

namespace phaseobs {

namespace {

using Index = Eigen::Index;

constexpr double kTruncationTail = 1e-12;

void require_dim(const PhaseMatrix& pm, cplx z, std::size_t dim, const char* who) {
    const std::size_t needed = truncation_for(z, kTruncationTail);
    if (dim < needed) {
        throw std::invalid_argument(std::string(who) + ": dim " + std::to_string(dim) +
                                    " is below the truncation " + std::to_string(needed) +
                                    " required for |z| = " + std::to_string(std::abs(z)));
    }
    if (dim > pm.dim()) {
        throw std::invalid_argument(std::string(who) + ": dim exceeds the phase matrix dimension");
    }
}

// e^{-2 pi i t / size} for t = 0 .. size-1.
std::vector<cplx> roots_of_unity(std::size_t size) {
    std::vector<cplx> roots(size);
    for (std::size_t t = 0; t < size; ++t) {
        roots[t] = std::polar(1.0, -kTwoPi * static_cast<double>(t) / static_cast<double>(size));
    }
    return roots;
}

// Window moments about the centre alpha, for a density normalized to mean 1:
//   first  = (1/2pi) int_{-pi}^{pi} t g(alpha + t) dt
//   second = (1/2pi) int_{-pi}^{pi} t^2 g(alpha + t) dt
// Term by term, (1/2pi) int t e^{ikt} = (-1)^k / (ik) and
// (1/2pi) int t^2 e^{ikt} = 2 (-1)^k / k^2 for k != 0.
struct WindowKernel {
    std::vector<cplx> first;   // index k + degree
    std::vector<cplx> second;
    long degree = 0;
};

WindowKernel window_kernel(const TrigPolynomial& g) {
    WindowKernel w;
    w.degree = g.degree();
    const std::size_t len = static_cast<std::size_t>(2 * w.degree + 1);
    w.first.assign(len, 0.0);
    w.second.assign(len, 0.0);
    w.second[static_cast<std::size_t>(w.degree)] = g.coefficient(0) * (kPi * kPi / 3.0);
    for (long k = -w.degree; k <= w.degree; ++k) {
        if (k == 0) continue;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double kd = static_cast<double>(k);
        const cplx gk = g.coefficient(k);
        w.first[static_cast<std::size_t>(k + w.degree)] = gk * cplx(0.0, -sign / kd);
        w.second[static_cast<std::size_t>(k + w.degree)] = gk * (2.0 * sign / (kd * kd));
    }
    return w;
}

double window_variance(const WindowKernel& w, double alpha) {
    const TrigPolynomial first(w.degree, w.first);
    const TrigPolynomial second(w.degree, w.second);
    const double m1 = first.evaluate(alpha).real();
    return second.evaluate(alpha).real() - m1 * m1;
}

}  // namespace

TrigPolynomial::TrigPolynomial(long degree, std::vector<cplx> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0 || coeffs_.size() != static_cast<std::size_t>(2 * degree + 1)) {
        throw std::invalid_argument("TrigPolynomial: need 2 * degree + 1 coefficients");
    }
}

cplx TrigPolynomial::coefficient(long k) const {
    if (k < -degree_ || k > degree_) return 0.0;
    return coeffs_[static_cast<std::size_t>(k + degree_)];
}

cplx TrigPolynomial::evaluate(double theta) const {
    const cplx step = std::polar(1.0, theta);
    cplx power = std::polar(1.0, -static_cast<double>(degree_) * theta);
    cplx acc = 0.0;
    for (const cplx& a : coeffs_) {
        acc += a * power;
        power *= step;
    }
    return acc;
}

TrigPolynomial phase_density(const PhaseMatrix& pm, const StateVector& phi) {
    if (phi.dim() > pm.dim()) {
        throw std::invalid_argument("phase_density: state dimension exceeds the phase matrix");
    }
    const long dim = static_cast<long>(phi.dim());
    const long degree = dim - 1;
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * degree + 1), 0.0);
    for (long n = 0; n < dim; ++n) {
        const cplx left = std::conj(phi[static_cast<std::size_t>(n)]);
        if (left == 0.0) continue;
        for (long m = 0; m < dim; ++m) {
            coeffs[static_cast<std::size_t>(n - m + degree)] +=
                pm(static_cast<std::size_t>(n), static_cast<std::size_t>(m)) * left *
                phi[static_cast<std::size_t>(m)];
        }
    }
    return TrigPolynomial(degree, std::move(coeffs));
}

TrigPolynomial coherent_density(const PhaseMatrix& pm, cplx z, std::size_t dim) {
    require_dim(pm, z, dim, "density");
    return phase_density(pm, coherent_vector(z, dim));
}

double density(const PhaseMatrix& pm, cplx z, double theta, std::size_t dim) {
    const cplx g = coherent_density(pm, z, dim).evaluate(theta);
    if (std::abs(g.imag()) > 1e-10 * std::max(1.0, std::abs(g.real()))) {
        throw std::runtime_error("density: imaginary residue " + std::to_string(g.imag()));
    }
    return g.real();
}

DensityGrid DensityGrid::from_values(std::vector<double> values, std::string family, cplx z) {
    if (values.empty()) throw std::invalid_argument("DensityGrid: no samples");
    DensityGrid grid;
    grid.family = std::move(family);
    grid.z = z;
    grid.thetas.resize(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        grid.thetas[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(values.size());
    }
    grid.values = std::move(values);
    return grid;
}

double DensityGrid::mean() const {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

TrigPolynomial DensityGrid::fourier() const {
    const std::size_t size = values.size();
    const long degree = static_cast<long>((size - 1) / 2);
    const auto roots = roots_of_unity(size);
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * degree + 1));
    for (long k = -degree; k <= degree; ++k) {
        const std::size_t step = static_cast<std::size_t>((k % static_cast<long>(size) +
                                                           static_cast<long>(size))) % size;
        cplx acc = 0.0;
        std::size_t t = 0;
        for (std::size_t j = 0; j < size; ++j) {
            acc += values[j] * roots[t];
            t += step;
            if (t >= size) t -= size;
        }
        coeffs[static_cast<std::size_t>(k + degree)] = acc / static_cast<double>(size);
    }
    return TrigPolynomial(degree, std::move(coeffs));
}

DensityGrid density_grid(const PhaseMatrix& pm, cplx z, std::size_t dim, std::size_t size) {
    if (size < 2) throw std::invalid_argument("density_grid: need at least two points");
    const TrigPolynomial g = coherent_density(pm, z, dim);
    std::vector<double> values(size);
    for (std::size_t j = 0; j < size; ++j) {
        values[j] = g.evaluate(kTwoPi * static_cast<double>(j) / static_cast<double>(size)).real();
    }
    return DensityGrid::from_values(std::move(values), pm.family(), z);
}

double probability(const PhaseMatrix& pm, cplx z, const CircleSet& set, std::size_t dim) {
    require_dim(pm, z, dim, "probability");
    const PhaseMatrix block = dim == pm.dim() ? pm : pm.restrict_to(dim);
    const Vector psi = coherent_vector(z, dim).amps();
    const Operator e = evaluate(block, set);
    return psi.dot(e.matrix() * psi).real();
}

double grid_probability(const DensityGrid& grid, const CircleSet& set) {
    const TrigPolynomial g = grid.fourier();
    cplx acc = 0.0;
    for (long k = -g.degree(); k <= g.degree(); ++k) acc += g.coefficient(k) * fourier_coeff(set, k);
    return acc.real();
}

double levy(const DensityGrid& grid) {
    if (grid.values.size() < 4) throw std::invalid_argument("levy: grid too small");
    if (std::abs(grid.mean() - 1.0) > 1e-6) {
        throw std::invalid_argument("levy: grid is not normalized (mean " +
                                    std::to_string(grid.mean()) + ")");
    }
    const WindowKernel kernel = window_kernel(grid.fourier());

    // Coarse scan over alpha, then golden-section search around the best cell.
    const std::size_t scan = kDefaultGridSize;
    const double cell = kTwoPi / static_cast<double>(scan);
    const auto roots = roots_of_unity(scan);
    std::vector<double> h(scan);
    {
        const long degree = kernel.degree;
        for (std::size_t j = 0; j < scan; ++j) {
            cplx m1 = 0.0;
            cplx m2 = 0.0;
            for (long k = -degree; k <= degree; ++k) {
                // e^{ik alpha_j} = conj(roots[(k j) mod scan]).
                const long idx = ((k * static_cast<long>(j)) % static_cast<long>(scan) +
                                  static_cast<long>(scan)) % static_cast<long>(scan);
                const cplx phase = std::conj(roots[static_cast<std::size_t>(idx)]);
                m1 += kernel.first[static_cast<std::size_t>(k + degree)] * phase;
                m2 += kernel.second[static_cast<std::size_t>(k + degree)] * phase;
            }
            h[j] = m2.real() - m1.real() * m1.real();
        }
    }
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(h.begin(), h.end()) - h.begin());
    double lo = (static_cast<double>(best) - 1.0) * cell;
    double hi = (static_cast<double>(best) + 1.0) * cell;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = window_variance(kernel, x1);
    double f2 = window_variance(kernel, x2);
    while (hi - lo > 1e-8) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = window_variance(kernel, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = window_variance(kernel, x2);
        }
    }
    return std::min({h[best], f1, f2});
}

double uncertainty_product(const PhaseMatrix& pm, cplx z, std::size_t dim) {
    if (!(std::abs(z) > 0.0)) throw std::invalid_argument("uncertainty_product: |z| must be positive");
    return std::sqrt(levy(density_grid(pm, z, dim))) * std::abs(z);
}

double concentration(const PhaseMatrix& pm, cplx z, double eps, std::size_t dim) {
    if (!(eps > 0.0 && eps < kPi)) throw std::invalid_argument("concentration: eps must lie in (0, pi)");
    return probability(pm, z, CircleSet::arc(std::arg(z) - eps, 2.0 * eps), dim);
}

double q_margin(const StateVector& phi, double theta, const RadialQuadrature& quad) {
    if (!phi.is_unit()) throw std::invalid_argument("q_margin: state must be a unit vector");
    const std::size_t dim = phi.dim();
    const double reach = static_cast<double>(dim);
    const double upper = quad.upper > 0.0 ? quad.upper : reach + 12.0 * std::sqrt(reach) + 40.0;
    // Nodes in r with weight 2r; in u the odd powers of r become sqrt(u) terms.
    const std::size_t panels = static_cast<std::size_t>(std::ceil(std::sqrt(upper) / quad.panel_width));
    const QuadratureRule rule = composite_gauss_legendre(
        0.0, static_cast<double>(panels) * quad.panel_width, panels, quad.nodes_per_panel);

    std::vector<double> half_log_factorial(dim);
    std::vector<cplx> rotated(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        half_log_factorial[n] = 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
        rotated[n] = std::polar(1.0, -static_cast<double>(n) * theta) * phi[n];
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double r = rule.nodes[j];
        const double u = r * r;
        const double log_r = std::log(r);
        // <w|phi> = e^{-u/2} sum_n r^n e^{-in theta} phi_n / sqrt(n!).
        cplx overlap = 0.0;
        for (std::size_t n = 0; n < dim; ++n) {
            const double log_mag = -0.5 * u + static_cast<double>(n) * log_r - half_log_factorial[n];
            overlap += std::exp(log_mag) * rotated[n];
        }
        acc += 2.0 * r * rule.weights[j] * std::norm(overlap);
    }
    return acc;
}

std::vector<double> sample(const PhaseMatrix& pm, cplx z, std::size_t count, std::uint64_t seed,
                           std::size_t dim) {
    if (count == 0) throw std::invalid_argument("sample: count must be at least 1");
    const DensityGrid grid = density_grid(pm, z, dim, kSamplingGridSize);
    const std::size_t size = grid.values.size();
    const double step = kTwoPi / static_cast<double>(size);

    std::vector<double> cdf(size + 1, 0.0);
    for (std::size_t j = 0; j < size; ++j) {
        const double left = grid.values[j];
        const double right = grid.values[(j + 1) % size];
        if (left < -1e-9) throw std::runtime_error("sample: degenerate grid (negative density)");
        cdf[j + 1] = cdf[j] + 0.5 * (std::max(left, 0.0) + std::max(right, 0.0)) * step;
    }
    const double total = cdf[size];
    if (!(total > 0.0) || !std::isfinite(total)) throw std::runtime_error("sample: degenerate grid");

    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // 53 random bits; avoids the implementation-defined distribution classes.
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t j = static_cast<std::size_t>(it - cdf.begin());
        j = std::clamp<std::size_t>(j, 1, size) - 1;
        const double width = cdf[j + 1] - cdf[j];
        const double frac = width > 0.0 ? (u - cdf[j]) / width : 0.0;
        out.push_back(wrap_angle((static_cast<double>(j) + frac) * step));
    }
    return out;
}

}  // namespace phaseobs
