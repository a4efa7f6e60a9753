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

#ifndef PHASEOBS_QUADRATURE_HPP
#define PHASEOBS_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace phaseobs {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre rule on [lo, hi] with `panels` equal panels of
/// `nodes_per_panel` points each.
QuadratureRule composite_gauss_legendre(double lo, double hi, std::size_t panels,
                                        std::size_t nodes_per_panel);

/// Settings for the radial integrals.
struct RadialQuadrature {
    /// Upper limit of u = r^2. Zero picks a limit from the truncation.
    double upper = 0.0;
    /// Panel width in r. Integrals over d(r^2) use nodes in r with weight 2r.
    double panel_width = 1.0;
    std::size_t nodes_per_panel = 64;
    /// Entries must move less than this when the node count doubles.
    double tolerance = 1e-9;
};

}  // namespace phaseobs

#endif  // PHASEOBS_QUADRATURE_HPP
