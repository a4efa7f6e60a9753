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

#include "phaseobs/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "phaseobs/fock.hpp"

namespace phaseobs {

QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                const double jd = static_cast<double>(j);
                p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
            }
            dp = nd * (x * p0 - p1) / (x * x - 1.0);
            const double step = p0 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double lo, double hi, std::size_t panels,
                                        std::size_t nodes_per_panel) {
    if (!(hi > lo) || panels == 0) {
        throw std::invalid_argument("composite_gauss_legendre: need hi > lo and panels > 0");
    }
    const QuadratureRule base = gauss_legendre(nodes_per_panel);
    QuadratureRule rule;
    rule.nodes.reserve(panels * nodes_per_panel);
    rule.weights.reserve(panels * nodes_per_panel);
    const double width = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double left = lo + width * static_cast<double>(p);
        for (std::size_t j = 0; j < nodes_per_panel; ++j) {
            rule.nodes.push_back(left + 0.5 * width * (base.nodes[j] + 1.0));
            rule.weights.push_back(0.5 * width * base.weights[j]);
        }
    }
    return rule;
}

}  // namespace phaseobs
