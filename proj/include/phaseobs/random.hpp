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

#ifndef PHASEOBS_RANDOM_HPP
#define PHASEOBS_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "phaseobs/circle_set.hpp"
#include "phaseobs/fock.hpp"
#include "phaseobs/phase_matrix.hpp"

namespace phaseobs {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from 53 generator bits.
double uniform01(Rng& rng);
/// Standard normal by Box-Muller (portable across standard libraries).
double standard_normal(Rng& rng);

StateVector random_unit_vector(std::size_t dim, Rng& rng);
/// Gram matrix of `dim` random unit vectors in C^rank (rank 0 picks 1..dim).
PhaseMatrix random_phase_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);
/// Union of 1..4 random arcs.
CircleSet random_circle_set(Rng& rng);
/// Random phases in [0, 2 pi).
std::vector<double> random_phases(std::size_t count, Rng& rng);

/// Random A on H_J meeting the discrete POM conditions at order s: a Gram
/// matrix whose vectors are orthogonal within each residue class mod s+1.
Matrix random_discrete_A(const std::vector<std::size_t>& index_set, std::size_t s, Rng& rng);

/// splitmix64 step; derives independent per-suite seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace phaseobs

#endif  // PHASEOBS_RANDOM_HPP
