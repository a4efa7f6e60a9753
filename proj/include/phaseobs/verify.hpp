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

#ifndef PHASEOBS_VERIFY_HPP
#define PHASEOBS_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseobs/io.hpp"
#include "phaseobs/phase_matrix.hpp"

namespace phaseobs {

struct SuiteResult {
    std::string suite;
    bool pass = false;
    Json metrics = Json::object();
    std::uint64_t seed = 0;
    long long elapsed_ms = 0;
};

struct VerifyConfig {
    /// Suite names; "all" expands to every suite.
    std::vector<std::string> suites{"all"};
    std::size_t dim = 64;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    /// When set, the matrix-level suites (covariance, normalization,
    /// uniformity, variance-bound, strongness, number-shift) check it instead
    /// of their built-in families.
    std::optional<PhaseMatrix> matrix;
};

/// covariance, normalization, uniformity, variance-bound, strongness,
/// number-shift, counterexample-F, theorem2-roundtrip, theorem3-forward,
/// theorem3-converse, theorem3-projection, pb-convergence, q-margin, levy,
/// uncertainty, classical-limit, spectral-accuracy.
const std::vector<std::string>& suite_names();

/// Runs the requested suites on a pool of config.jobs workers. Suite i gets
/// the seed derive_seed(config.seed, i) where i is its position in
/// suite_names(), so results do not depend on scheduling. Results come back
/// in request order. Throws std::invalid_argument for unknown suite names.
std::vector<SuiteResult> verify_suite(const VerifyConfig& config);

/// {"suite", "pass", "metrics", "seed", "elapsed_ms"}.
Json to_json(const SuiteResult& result);

/// Least-squares slope of log(error) against log(s), negated.
double rate_exponent(const std::vector<double>& orders, const std::vector<double>& errors);

}  // namespace phaseobs

#endif  // PHASEOBS_VERIFY_HPP
