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

#include "phaseobs/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "phaseobs/coherent.hpp"
#include "phaseobs/discrete_pb.hpp"
#include "phaseobs/io.hpp"
#include "phaseobs/observables.hpp"
#include "phaseobs/random.hpp"

namespace phaseobs {

namespace {

using Index = Eigen::Index;

struct SuiteContext {
    std::size_t dim;
    std::uint64_t seed;
    const std::optional<PhaseMatrix>& matrix;
};

struct Outcome {
    bool pass = false;
    Json metrics = Json::object();
};

using SuiteFn = std::function<Outcome(const SuiteContext&)>;

// Matrices a matrix-level suite runs on: the supplied one, or random ones.
std::vector<PhaseMatrix> subject_matrices(const SuiteContext& ctx, Rng& rng, std::size_t count) {
    if (ctx.matrix) return {*ctx.matrix};
    std::vector<PhaseMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_phase_matrix(ctx.dim, rng));
    return out;
}

Outcome suite_covariance(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    const auto matrices = subject_matrices(ctx, rng, 100);
    const std::size_t dim = matrices.front().dim();
    const std::size_t cases = 100;
    double worst = 0.0;
    for (std::size_t i = 0; i < cases; ++i) {
        const PhaseMatrix& pm = matrices[i % matrices.size()];
        const CircleSet set = random_circle_set(rng);
        const double theta = kTwoPi * uniform01(rng);
        worst = std::max(worst, covariance_residual(pm, set, theta));
    }
    const double bound = 1e-11 * static_cast<double>(dim);
    return {worst <= bound, {{"cases", cases}, {"max_residual", worst}, {"bound", bound}}};
}

Outcome suite_normalization(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    const auto matrices = subject_matrices(ctx, rng, 50);
    double worst = 0.0;
    for (const auto& pm : matrices) {
        const Operator e = evaluate(pm, CircleSet::full());
        worst = std::max(worst, (e.matrix() - Matrix::Identity(e.matrix().rows(), e.matrix().cols()))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return {worst <= 1e-12, {{"matrices", matrices.size()}, {"max_deviation", worst}, {"bound", 1e-12}}};
}

Outcome suite_uniformity(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    const auto matrices = subject_matrices(ctx, rng, 50);
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const PhaseMatrix& pm = matrices[i % matrices.size()];
        const CircleSet set = random_circle_set(rng);
        const Operator e = evaluate(pm, set);
        const double expected = set.measure() / kTwoPi;
        worst = std::max(worst, (e.matrix().diagonal().array() - cplx(expected)).abs().maxCoeff());
    }
    return {worst <= 1e-13, {{"cases", 50}, {"max_deviation", worst}, {"bound", 1e-13}}};
}

Outcome suite_variance_bound(const SuiteContext& ctx) {
    const double bound = kPi * kPi / 3.0;
    Json metrics = Json::object();
    bool pass = true;
    std::vector<PhaseMatrix> subjects;
    if (ctx.matrix) {
        subjects.push_back(*ctx.matrix);
    } else {
        const VarianceReport basel = first_moment_variance(canonical(2000), 0);
        const double basel_error = std::abs(basel.operator_form - kPi * kPi / 6.0);
        metrics["canonical_n0_dim2000"] = basel.operator_form;
        metrics["basel_error"] = basel_error;
        pass = pass && basel_error <= 1e-3 && basel.agree;
        const std::size_t dim = std::max<std::size_t>(ctx.dim, 64);
        subjects = {canonical(dim), trivial(dim), phase_space_matrix(0, dim)};
    }
    double largest = 0.0;
    for (const auto& pm : subjects) {
        for (std::size_t n : {0, 5, 50}) {
            if (n >= pm.dim()) continue;
            const VarianceReport v = first_moment_variance(pm, n);
            largest = std::max(largest, v.operator_form);
            pass = pass && v.agree && v.operator_form < bound;
        }
    }
    metrics["max_variance"] = largest;
    metrics["bound"] = bound;
    return {pass, metrics};
}

Outcome suite_strongness(const SuiteContext& ctx) {
    if (ctx.matrix) {
        const std::size_t kmax = std::max<std::size_t>(ctx.matrix->dim() / 4, 1) % ctx.matrix->dim();
        const StrongReport r = is_strong(*ctx.matrix, kmax);
        return {r.strong, {{"strong", r.strong}, {"failing_k", r.failing_k}, {"residual", r.residual}, {"kmax", kmax}}};
    }
    const std::size_t dim = std::max<std::size_t>(ctx.dim, 8);
    const std::size_t kmax = dim / 4;
    const StrongReport can = is_strong(canonical(dim), kmax);
    const StrongReport vac = is_strong(phase_space_matrix(0, dim), kmax);
    const StrongReport triv = is_strong(trivial(dim), kmax);
    const double witness = std::abs(vacuum_phase_space_entry(0, 1) * vacuum_phase_space_entry(1, 2) -
                                    vacuum_phase_space_entry(0, 2));
    const bool pass = can.strong && triv.strong && !vac.strong && vac.failing_k == 2 &&
                      std::abs(vac.residual - witness) <= 1e-6;
    return {pass,
            {{"canonical_strong", can.strong},
             {"trivial_strong", triv.strong},
             {"phase_space0_failing_k", vac.failing_k},
             {"phase_space0_residual", vac.residual},
             {"expected_witness", witness}}};
}

Outcome suite_number_shift(const SuiteContext& ctx) {
    if (ctx.matrix) {
        const std::size_t kmax = std::max<std::size_t>(ctx.matrix->dim() / 4, 1) % ctx.matrix->dim();
        const NumberShiftReport r = number_shift_check(*ctx.matrix, kmax);
        return {r.shifts, {{"shifts", r.shifts}, {"exact", r.exact}, {"modulus_defect", r.modulus_defect}}};
    }
    Rng rng(ctx.seed);
    const std::size_t dim = std::max<std::size_t>(ctx.dim, 8);
    const std::size_t kmax = dim / 4;
    const NumberShiftReport can = number_shift_check(canonical(dim), kmax);
    const NumberShiftReport vac = number_shift_check(phase_space_matrix(0, dim), kmax);
    const auto phases = random_phases(dim, rng);
    const NumberShiftReport rot = number_shift_check(diagonal_conjugate(canonical(dim), phases), kmax);
    const bool pass = can.shifts && can.exact && !vac.shifts && rot.shifts;
    return {pass,
            {{"canonical_exact", can.exact},
             {"phase_space0_modulus_defect", vac.modulus_defect},
             {"rotated_modulus_defect", rot.modulus_defect}}};
}

Outcome suite_counterexample_f(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    const std::size_t dim = std::max<std::size_t>(ctx.dim, 2);
    double uniformity = 0.0;
    for (int i = 0; i < 50; ++i) {
        const CircleSet set = random_circle_set(rng);
        const Operator f = counterexample_F(set, dim);
        uniformity = std::max(uniformity,
                              (f.matrix().diagonal().array() - cplx(set.measure() / kTwoPi)).abs().maxCoeff());
    }
    const CircleSet upper = CircleSet::from_intervals({{0.0, kPi}});
    const double residual = counterexample_covariance_residual(upper, kPi / 2.0, dim);
    const bool pass = uniformity <= 1e-13 && std::abs(residual - 1.0 / kPi) <= 1e-10;
    return {pass, {{"uniformity_deviation", uniformity}, {"covariance_residual", residual}, {"expected", 1.0 / kPi}}};
}

Outcome suite_theorem2(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    double worst_vectors = 0.0;
    double worst_forms = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t dim = 1 + static_cast<std::size_t>(uniform01(rng) * 32.0);
        const PhaseMatrix pm = random_phase_matrix(dim, rng);
        const auto vectors = vector_realization(pm);
        const PhaseMatrix back = from_vectors(vectors);
        worst_vectors = std::max(worst_vectors, (back.matrix() - pm.matrix()).cwiseAbs().maxCoeff());
        std::vector<std::size_t> index_set(dim);
        for (std::size_t n = 0; n < dim; ++n) index_set[n] = n;
        const Matrix via_forms = from_bra_forms(bra_forms_from_vectors(vectors), index_set);
        worst_forms = std::max(worst_forms, (via_forms - pm.matrix()).cwiseAbs().maxCoeff());
    }
    const bool pass = worst_vectors <= 1e-8 && worst_forms <= 1e-8;
    return {pass, {{"cases", 20}, {"vector_error", worst_vectors}, {"bra_form_error", worst_forms}}};
}

std::vector<std::size_t> random_index_set(Rng& rng, std::size_t size, std::size_t universe) {
    std::vector<std::size_t> pool(universe);
    for (std::size_t i = 0; i < universe; ++i) pool[i] = i;
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(universe - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<long>(size));
    std::sort(out.begin(), out.end());
    return out;
}

Outcome suite_theorem3_forward(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    double normalization = 0.0;
    double covariance = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t s = static_cast<std::size_t>(uniform01(rng) * 9.0);
        const std::size_t size = 1 + static_cast<std::size_t>(uniform01(rng) * 9.0);
        auto index_set = random_index_set(rng, size, 24);
        Matrix a = random_discrete_A(index_set, s, rng);
        const DiscretePhasePOM pom = make_discrete_pom(index_set, s, std::move(a));
        const Matrix total = pom.on_subspace(CircleSet::full()).matrix();
        normalization = std::max(
            normalization, (total - Matrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff());
        for (std::size_t k = 0; k <= s; ++k) {
            for (std::size_t l = 0; l <= s; ++l) {
                covariance = std::max(covariance, discrete_covariance_residual(pom, k, l));
            }
        }
    }
    const bool pass = normalization <= 1e-12 && covariance <= 1e-12;
    return {pass, {{"cases", 50}, {"normalization_error", normalization}, {"max_covariance_residual", covariance}}};
}

Outcome suite_theorem3_converse(const SuiteContext&) {
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t s = 0; s <= 3; ++s) {
        for (unsigned mask = 1; mask < 64; ++mask) {
            std::vector<std::size_t> index_set;
            for (std::size_t n = 0; n < 6; ++n) {
                if (mask & (1u << n)) index_set.push_back(n);
            }
            worst = std::max(worst, converse_deviation(index_set, s));
            ++cases;
        }
    }
    return {worst <= 1e-10, {{"cases", cases}, {"max_deviation", worst}}};
}

// All-ones, identity, random rank-one-phase and random valid A over s <= 3,
// J subsets of {0..5} with #J <= 4.
struct ClassificationTally {
    std::size_t cases = 0;
    std::size_t projection_valued = 0;
    std::size_t misclassified = 0;
    std::vector<std::size_t> misclassified_by_order = std::vector<std::size_t>(4, 0);
    Json first_misclassified = nullptr;
};

ClassificationTally classify_small_cases(Rng& rng) {
    ClassificationTally tally;
    for (std::size_t s = 0; s <= 3; ++s) {
        for (unsigned mask = 1; mask < 64; ++mask) {
            std::vector<std::size_t> index_set;
            for (std::size_t n = 0; n < 6; ++n) {
                if (mask & (1u << n)) index_set.push_back(n);
            }
            if (index_set.size() > 4) continue;
            const Index size = static_cast<Index>(index_set.size());
            std::vector<Matrix> candidates{Matrix::Ones(size, size), Matrix::Identity(size, size)};
            const auto phases = random_phases(index_set.size(), rng);
            Matrix rotated(size, size);
            for (Index i = 0; i < size; ++i) {
                for (Index j = 0; j < size; ++j) {
                    rotated(i, j) = i == j ? cplx(1.0)
                                           : std::polar(1.0, phases[static_cast<std::size_t>(i)] -
                                                                 phases[static_cast<std::size_t>(j)]);
                }
            }
            candidates.push_back(std::move(rotated));
            candidates.push_back(random_discrete_A(index_set, s, rng));
            for (auto& a : candidates) {
                if (!validate_A(index_set, s, a).ok()) continue;
                const DiscretePhasePOM pom = make_discrete_pom(index_set, s, a);
                const ProjectionClassification c = is_projection_valued(pom);
                ++tally.cases;
                if (c.projection_valued) ++tally.projection_valued;
                if (!c.consistent) {
                    ++tally.misclassified;
                    ++tally.misclassified_by_order[s];
                    if (tally.first_misclassified.is_null()) {
                        tally.first_misclassified = to_json(pom);
                        tally.first_misclassified["projection_valued"] = c.projection_valued;
                    }
                }
            }
        }
    }
    return tally;
}

Outcome suite_theorem3_projection(const SuiteContext& ctx) {
    Rng rng(ctx.seed);
    const ClassificationTally t = classify_small_cases(rng);
    const bool pass = t.misclassified == 0 && t.projection_valued > 0 && t.projection_valued < t.cases;
    return {pass,
            {{"cases", t.cases},
             {"projection_valued", t.projection_valued},
             {"misclassified", t.misclassified},
             {"misclassified_by_order", t.misclassified_by_order},
             {"first_misclassified", t.first_misclassified}}};
}

Outcome suite_pb_convergence(const SuiteContext&) {
    const CircleSet upper = CircleSet::from_intervals({{0.0, kPi}});
    const std::vector<std::size_t> orders{64, 128, 256, 512, 1024};
    Json metrics = Json::object();
    bool pass = true;
    for (const auto& pm : {canonical(9), phase_space_matrix(0, 9)}) {
        std::vector<double> errors;
        for (std::size_t s : orders) {
            double e = 0.0;
            for (std::size_t n = 0; n <= 8; ++n) {
                for (std::size_t m = 0; m <= 8; ++m) e = std::max(e, convergence_error(pm, s, upper, n, m));
            }
            errors.push_back(e);
        }
        double far = 0.0;
        for (std::size_t n = 0; n <= 8; ++n) {
            for (std::size_t m = 0; m <= 8; ++m) far = std::max(far, convergence_error(pm, 4096, upper, n, m));
        }
        std::vector<double> xs(orders.begin(), orders.end());
        const double rate = rate_exponent(xs, errors);
        pass = pass && rate >= 0.8 && rate <= 1.2 && far < 1e-3;
        metrics[pm.family()] = {{"errors", errors}, {"rate_exponent", rate}, {"error_s4096", far}};
    }
    return {pass, metrics};
}

Outcome suite_q_margin(const SuiteContext&) {
    const cplx z(1.0, 1.0);
    const std::size_t coherent_dim = truncation_for(z, 1e-12);
    std::vector<StateVector> states;
    states.push_back(StateVector::number_state(0, 3));
    states.push_back(StateVector::number_state(1, 3));
    states.push_back(coherent_vector(z, coherent_dim));
    Vector mix = Vector::Zero(3);
    mix(0) = mix(2) = 1.0 / std::sqrt(2.0);
    states.emplace_back(mix);
    double worst = 0.0;
    for (const auto& phi : states) {
        const PhaseMatrix vac = phase_space_matrix(0, phi.dim());
        const TrigPolynomial g = phase_density(vac, phi);
        for (int j = 0; j < 256; ++j) {
            const double theta = kTwoPi * j / 256.0;
            worst = std::max(worst, std::abs(q_margin(phi, theta) - g.evaluate(theta).real()));
        }
    }
    return {worst <= 1e-6, {{"states", states.size()}, {"grid", 256}, {"max_deviation", worst}}};
}

Outcome suite_levy(const SuiteContext&) {
    const DensityGrid uniform = DensityGrid::from_values(std::vector<double>(kDefaultGridSize, 1.0));
    const double flat = levy(uniform);
    // Wrapped normal, sigma = 0.1, centred at 1.
    const double sigma = 0.1;
    std::vector<double> bump(kDefaultGridSize);
    for (std::size_t j = 0; j < bump.size(); ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(bump.size());
        double acc = 0.0;
        for (int w = -3; w <= 3; ++w) {
            const double d = theta - 1.0 + kTwoPi * w;
            acc += std::exp(-0.5 * d * d / (sigma * sigma));
        }
        bump[j] = acc * kTwoPi / (sigma * std::sqrt(kTwoPi));
    }
    const double narrow = levy(DensityGrid::from_values(std::move(bump)));
    const bool pass = std::abs(flat - kPi * kPi / 3.0) <= 1e-6 && std::abs(narrow - sigma * sigma) <= 0.05 * sigma * sigma;
    return {pass, {{"uniform", flat}, {"expected_uniform", kPi * kPi / 3.0}, {"wrapped_normal", narrow}}};
}

Outcome suite_uncertainty(const SuiteContext&) {
    const cplx z(5.0, 0.0);
    const std::size_t dim = truncation_for(z, 1e-12);
    const double can = uncertainty_product(canonical(dim), z, dim);
    const double vac = uncertainty_product(phase_space_matrix(0, dim), z, dim);
    const double one = uncertainty_product(phase_space_matrix(1, dim), z, dim);
    auto near = [](double value, double target) { return std::abs(value - target) <= 0.15 * target; };
    const bool pass = near(can, 0.5) && near(vac, std::sqrt(0.5)) && near(one, 1.0) && can <= vac;
    return {pass, {{"dim", dim}, {"canonical", can}, {"phase_space0", vac}, {"phase_space1", one}}};
}

Outcome suite_classical_limit(const SuiteContext&) {
    const double eps = 0.1;
    std::vector<double> values;
    bool increasing = true;
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
        const std::size_t dim = truncation_for(r, 1e-12);
        values.push_back(concentration(canonical(dim), r, eps, dim));
        if (values.size() > 1 && !(values.back() > values[values.size() - 2])) increasing = false;
    }
    const std::size_t far_dim = truncation_for(32.0, 1e-12);
    const double far = concentration(canonical(far_dim), 32.0, eps, far_dim);
    return {increasing && far > 0.99, {{"sweep", values}, {"at_32", far}, {"dim_32", far_dim}}};
}

Outcome suite_spectral_accuracy(const SuiteContext&) {
    bool pass = true;
    std::vector<double> values;
    for (std::size_t s : {7, 15, 31, 63, 127}) {
        const double full = spectral_accuracy(s, {0.0, kTwoPi});
        pass = pass && full == kPi / static_cast<double>(s + 1);
        values.push_back(spectral_accuracy(s, {0.3, 2.0}));
        if (values.size() > 1 && values.back() > values[values.size() - 2]) pass = false;
    }
    return {pass && values.back() < 0.05, {{"interval_0.3_2.0", values}}};
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"covariance", suite_covariance},
        {"normalization", suite_normalization},
        {"uniformity", suite_uniformity},
        {"variance-bound", suite_variance_bound},
        {"strongness", suite_strongness},
        {"number-shift", suite_number_shift},
        {"counterexample-F", suite_counterexample_f},
        {"theorem2-roundtrip", suite_theorem2},
        {"theorem3-forward", suite_theorem3_forward},
        {"theorem3-converse", suite_theorem3_converse},
        {"theorem3-projection", suite_theorem3_projection},
        {"pb-convergence", suite_pb_convergence},
        {"q-margin", suite_q_margin},
        {"levy", suite_levy},
        {"uncertainty", suite_uncertainty},
        {"classical-limit", suite_classical_limit},
        {"spectral-accuracy", suite_spectral_accuracy},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

double rate_exponent(const std::vector<double>& orders, const std::vector<double>& errors) {
    if (orders.size() != errors.size() || orders.size() < 2) {
        throw std::invalid_argument("rate_exponent: need matching samples, at least two");
    }
    const double count = static_cast<double>(orders.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const double x = std::log(orders[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return -(count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::vector<SuiteResult> verify_suite(const VerifyConfig& config) {
    const auto& suites = registry();
    std::vector<std::size_t> selected;
    for (const auto& name : config.suites) {
        if (name == "all") {
            for (std::size_t i = 0; i < suites.size(); ++i) selected.push_back(i);
            continue;
        }
        const auto it = std::find_if(suites.begin(), suites.end(),
                                     [&](const auto& entry) { return entry.first == name; });
        if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
        selected.push_back(static_cast<std::size_t>(it - suites.begin()));
    }

    std::vector<SuiteResult> results(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t slot = next++; slot < selected.size(); slot = next++) {
            const std::size_t index = selected[slot];
            SuiteResult& r = results[slot];
            r.suite = suites[index].first;
            r.seed = derive_seed(config.seed, index);
            const SuiteContext ctx{config.dim, r.seed, config.matrix};
            const auto start = std::chrono::steady_clock::now();
            try {
                Outcome outcome = suites[index].second(ctx);
                r.pass = outcome.pass;
                r.metrics = std::move(outcome.metrics);
            } catch (const std::exception& e) {
                r.pass = false;
                r.metrics = {{"error", e.what()}};
            }
            r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(selected.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

Json to_json(const SuiteResult& result) {
    return {{"suite", result.suite},
            {"pass", result.pass},
            {"metrics", result.metrics},
            {"seed", result.seed},
            {"elapsed_ms", result.elapsed_ms}};
}

}  // namespace phaseobs
