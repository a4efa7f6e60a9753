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

#ifndef PHASEOBS_COHERENT_HPP
#define PHASEOBS_COHERENT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phaseobs/circle_set.hpp"
#include "phaseobs/fock.hpp"
#include "phaseobs/phase_matrix.hpp"
#include "phaseobs/quadrature.hpp"

namespace phaseobs {

inline constexpr std::size_t kDefaultGridSize = 4096;
inline constexpr std::size_t kSamplingGridSize = 8192;

/// sum_{|k| <= degree} a_k e^{ik theta}.
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    /// coeffs[k + degree] holds a_k.
    TrigPolynomial(long degree, std::vector<cplx> coeffs);

    long degree() const { return degree_; }
    cplx coefficient(long k) const;
    cplx evaluate(double theta) const;

private:
    long degree_ = 0;
    std::vector<cplx> coeffs_{cplx(0.0)};
};

/// Phase density of a vector state with respect to d theta / 2 pi,
/// g(theta) = sum_nm c_nm conj(phi_n) phi_m e^{i(n-m) theta}, folded into a
/// trigonometric polynomial so each evaluation costs O(dim).
TrigPolynomial phase_density(const PhaseMatrix& pm, const StateVector& phi);

/// Density of the coherent state |z>, including the e^{-|z|^2} factor.
/// Throws std::invalid_argument when dim < truncation_for(z, 1e-12) or
/// dim exceeds pm.dim().
double density(const PhaseMatrix& pm, cplx z, double theta, std::size_t dim);
TrigPolynomial coherent_density(const PhaseMatrix& pm, cplx z, std::size_t dim);

/// Uniform theta grid on [0, 2 pi) with density samples.
struct DensityGrid {
    std::string family;
    cplx z = 0.0;
    std::vector<double> thetas;
    std::vector<double> values;

    /// Grid theta_j = 2 pi j / size for the given values.
    static DensityGrid from_values(std::vector<double> values, std::string family = {},
                                   cplx z = 0.0);
    /// Trapezoid mean of the values, i.e. (1/2pi) int g.
    double mean() const;
    /// Fourier coefficients g_k, |k| < size/2, read off the samples.
    TrigPolynomial fourier() const;
};

DensityGrid density_grid(const PhaseMatrix& pm, cplx z, std::size_t dim,
                         std::size_t size = kDefaultGridSize);

/// <z|E(X)|z> at truncation dim.
double probability(const PhaseMatrix& pm, cplx z, const CircleSet& set, std::size_t dim);
/// (1/2pi) int_X g from the grid samples (spectral quadrature).
double grid_probability(const DensityGrid& grid, const CircleSet& set);

/// inf over alpha, beta of (1/2pi) int_{alpha-pi}^{alpha+pi} (theta - beta)^2 g.
/// Throws std::invalid_argument when the grid mean is not 1 to 1e-6.
double levy(const DensityGrid& grid);

/// sqrt(levy) * |z|. Requires |z| > 0.
double uncertainty_product(const PhaseMatrix& pm, cplx z, std::size_t dim);

/// Probability of [arg z - eps, arg z + eps).
double concentration(const PhaseMatrix& pm, cplx z, double eps, std::size_t dim);

/// Angle margin of the Husimi Q-function: int_0^inf |<r e^{i theta}|phi>|^2 d(r^2).
double q_margin(const StateVector& phi, double theta, const RadialQuadrature& quad = {});

/// Draws from p_{|z>} by inverse CDF on an 8192-point grid with linear
/// interpolation. Deterministic for a fixed seed.
std::vector<double> sample(const PhaseMatrix& pm, cplx z, std::size_t count, std::uint64_t seed,
                           std::size_t dim);

}  // namespace phaseobs

#endif  // PHASEOBS_COHERENT_HPP
