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

#include "phaseobs/random.hpp"

#include <cmath>
#include <map>

namespace phaseobs {

namespace {
using Index = Eigen::Index;
}  // namespace

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

StateVector random_unit_vector(std::size_t dim, Rng& rng) {
    Vector v(static_cast<Index>(dim));
    for (Index i = 0; i < v.size(); ++i) v(i) = cplx(standard_normal(rng), standard_normal(rng));
    v /= v.norm();
    return StateVector(std::move(v));
}

PhaseMatrix random_phase_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
    if (rank == 0) rank = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(dim));
    std::vector<StateVector> vectors;
    vectors.reserve(dim);
    for (std::size_t n = 0; n < dim; ++n) vectors.push_back(random_unit_vector(rank, rng));
    return from_vectors(vectors);
}

CircleSet random_circle_set(Rng& rng) {
    const int pieces = 1 + static_cast<int>(uniform01(rng) * 4.0);
    CircleSet set;
    for (int i = 0; i < pieces; ++i) {
        set = set.unite(CircleSet::arc(kTwoPi * uniform01(rng), kPi * uniform01(rng)));
    }
    return set;
}

std::vector<double> random_phases(std::size_t count, Rng& rng) {
    std::vector<double> out(count);
    for (auto& x : out) x = kTwoPi * uniform01(rng);
    return out;
}

Matrix random_discrete_A(const std::vector<std::size_t>& index_set, std::size_t s, Rng& rng) {
    const Index size = static_cast<Index>(index_set.size());
    Matrix vectors(size, size);
    std::map<std::size_t, std::vector<Index>> classes;
    for (Index i = 0; i < size; ++i) {
        Vector v(size);
        for (Index k = 0; k < size; ++k) v(k) = cplx(standard_normal(rng), standard_normal(rng));
        // Orthogonal to earlier members of the same residue class.
        auto& members = classes[index_set[static_cast<std::size_t>(i)] % (s + 1)];
        for (Index j : members) v -= vectors.col(j).dot(v) * vectors.col(j);
        v /= v.norm();
        vectors.col(i) = v;
        members.push_back(i);
    }
    Matrix a = vectors.adjoint() * vectors;
    // Exact zeros and ones where the conditions require them.
    for (Index i = 0; i < size; ++i) {
        a(i, i) = 1.0;
        for (Index j = 0; j < size; ++j) {
            if (i != j && index_set[static_cast<std::size_t>(i)] % (s + 1) ==
                              index_set[static_cast<std::size_t>(j)] % (s + 1)) {
                a(i, j) = 0.0;
            }
        }
    }
    return a;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace phaseobs
