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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "phaseobs/coherent.hpp"
#include "phaseobs/discrete_pb.hpp"
#include "phaseobs/observables.hpp"
#include "phaseobs/random.hpp"
#include "phaseobs/verify.hpp"

namespace {

using namespace phaseobs;
using Index = Eigen::Index;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix rotation(double theta, const std::vector<std::size_t>& levels) {
    Vector d(static_cast<Index>(levels.size()));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        d(static_cast<Index>(i)) = std::polar(1.0, theta * static_cast<double>(levels[i]));
    }
    return d.asDiagonal();
}

std::vector<std::size_t> range(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

double spectral_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

Verdict normalization_uniformity() {
    Rng rng(101);
    double norm_err = 0.0;
    double diag_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const PhaseMatrix pm = random_phase_matrix(64, rng);
        const CircleSet set = random_circle_set(rng);
        norm_err = std::max(norm_err, max_abs(evaluate(pm, CircleSet::full()).matrix() - Matrix::Identity(64, 64)));
        const Matrix e = evaluate(pm, set).matrix();
        double len = 0.0;
        for (const auto& iv : set.intervals()) len += iv.b - iv.a;
        for (Index n = 0; n < 64; ++n) diag_err = std::max(diag_err, std::abs(e(n, n) - len / kTwoPi));
    }
    return {norm_err <= 1e-12 && diag_err <= 1e-13,
            fmt("max|E(full)-I| = %.2e, max diag deviation = %.2e", norm_err, diag_err)};
}

Verdict covariance() {
    Rng rng(102);
    const auto levels = range(64);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const PhaseMatrix pm = random_phase_matrix(64, rng);
        const CircleSet set = random_circle_set(rng);
        const double theta = kTwoPi * uniform01(rng);
        const Matrix r = rotation(theta, levels);
        const Matrix lhs = r * evaluate(pm, set).matrix() * r.adjoint();
        worst = std::max(worst, spectral_norm(lhs - evaluate(pm, shift(set, theta)).matrix()));
    }
    return {worst <= 1e-11 * 64, fmt("max residual = %.2e (limit %.2e)", worst, 1e-11 * 64)};
}

Verdict counterexample() {
    Rng rng(103);
    const std::size_t dim = 32;
    double diag_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const CircleSet set = random_circle_set(rng);
        const Matrix f = counterexample_F(set, dim).matrix();
        for (Index n = 0; n < f.rows(); ++n) diag_err = std::max(diag_err, std::abs(f(n, n) - set.measure() / kTwoPi));
    }
    const CircleSet upper = CircleSet::from_intervals({{0.0, kPi}});
    const Matrix r = rotation(kPi / 2, range(dim));
    const Matrix lhs = r * counterexample_F(upper, dim).matrix() * r.adjoint();
    const double residual = spectral_norm(lhs - counterexample_F(shift(upper, kPi / 2), dim).matrix());
    const double library = counterexample_covariance_residual(upper, kPi / 2, dim);
    const bool pass = diag_err <= 1e-13 && std::abs(residual - 1.0 / kPi) <= 1e-10 &&
                      std::abs(library - residual) <= 1e-12;
    return {pass, fmt("uniformity deviation = %.2e, covariance residual = %.12f (1/pi = %.12f)", diag_err,
                      residual, 1.0 / kPi)};
}

Verdict variance_bound() {
    const std::size_t dim = 2000;
    const VarianceReport canon = first_moment_variance(canonical(dim), 0);
    const double basel = kPi * kPi / 6.0;
    bool pass = std::abs(canon.operator_form - basel) <= 1e-3 &&
                std::abs(canon.operator_form - oracle::basel_partial(dim - 1)) <= 1e-9;
    double largest = 0.0;
    for (const auto& pm : {canonical(dim), trivial(dim), phase_space_matrix(0, dim)}) {
        for (std::size_t n : {0, 5, 50}) {
            const double v = first_moment_variance(pm, n).operator_form;
            largest = std::max(largest, v);
            pass = pass && v < kPi * kPi / 3.0;
        }
    }
    return {pass, fmt("canonical variance at n=0 = %.6f (pi^2/6 = %.6f), largest = %.6f < %.6f",
                      canon.operator_form, basel, largest, kPi * kPi / 3.0)};
}

Verdict first_moment() {
    Rng rng(105);
    double worst = 0.0;
    for (const auto& pm : {random_phase_matrix(64, rng), canonical(64), phase_space_matrix(0, 64)}) {
        const Matrix e1 = moment_operator(pm, 1).matrix();
        Matrix rebuilt(64, 64);
        for (Index n = 0; n < 64; ++n) {
            for (Index m = 0; m < 64; ++m) {
                rebuilt(n, m) = n == m ? cplx(1.0) : e1(n, m) * cplx(0.0, static_cast<double>(n - m));
            }
        }
        worst = std::max(worst, max_abs(rebuilt - pm.matrix()));
        worst = std::max(worst, max_abs(phase_matrix_from_first_moment(Operator(e1)) - pm.matrix()));
    }
    return {worst <= 1e-13, fmt("max reconstruction error = %.2e (round-off)", worst)};
}

Verdict strongness() {
    const PhaseMatrix canon = canonical(128);
    const StrongReport strong = is_strong(canon, 16, 1e-10);
    const NumberShiftReport shifts = number_shift_check(canon, 16);
    bool exact = true;
    for (std::size_t k = 1; k <= 16; ++k) {
        const Operator v = cyclic_moment(canon, k);
        for (std::size_t n = 0; n + k < 128; ++n) {
            const Vector out = v.apply(StateVector::number_state(n + k, 128)).amps();
            exact = exact && out == StateVector::number_state(n, 128).amps();
        }
    }
    const PhaseMatrix vac = phase_space_matrix(0, 128);
    const StrongReport weak = is_strong(vac, 16, 1e-10);
    const double witness = std::abs(vac(0, 1) * vac(1, 2) - vac(0, 2));
    const double oracle_witness =
        std::abs(oracle::vacuum_entry(0, 1) * oracle::vacuum_entry(1, 2) - oracle::vacuum_entry(0, 2));
    const bool pass = strong.strong && shifts.shifts && shifts.exact && exact && !weak.strong &&
                      std::abs(witness - oracle_witness) <= 1e-6 && std::abs(witness - 0.126) <= 5e-4;
    return {pass, fmt("canonical strong=%d shifts exact=%d; phase-space(0) strong=%d witness=%.7f (oracle %.7f)",
                      strong.strong, exact && shifts.exact, weak.strong, witness, oracle_witness)};
}

Verdict theorem2() {
    Rng rng(107);
    double vec_err = 0.0;
    double bra_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t dim = 1 + static_cast<std::size_t>(uniform01(rng) * 32);
        const PhaseMatrix pm = random_phase_matrix(dim, rng, 1 + i % dim);
        if (!oracle::pivoted_cholesky_psd(pm.matrix(), 1e-10)) return {false, "random matrix not PSD per oracle"};
        const auto vectors = vector_realization(pm);
        vec_err = std::max(vec_err, max_abs(from_vectors(vectors).matrix() - pm.matrix()));
        const auto forms = bra_forms_from_vectors(vectors);
        const auto index = range(dim);
        bra_err = std::max(bra_err, max_abs(from_bra_forms(forms, index) - pm.matrix()));
    }
    return {vec_err <= 1e-8 && bra_err <= 1e-8, fmt("vector path %.2e, bra-form path %.2e", vec_err, bra_err)};
}

Verdict husimi_margin() {
    const cplx z(1.0, 1.0);
    const std::size_t dim = truncation_for(z, 1e-14);
    const PhaseMatrix vac = phase_space_matrix(0, dim);
    Vector sup = Vector::Zero(static_cast<Index>(dim));
    sup(0) = sup(2) = 1.0 / std::sqrt(2.0);
    const std::vector<StateVector> states{StateVector::number_state(0, dim), StateVector::number_state(1, dim),
                                          coherent_vector(z, dim), StateVector(sup)};
    double worst = 0.0;
    for (const auto& phi : states) {
        const TrigPolynomial g = phase_density(vac, phi);
        for (int j = 0; j < 256; ++j) {
            const double theta = kTwoPi * j / 256.0;
            worst = std::max(worst, std::abs(q_margin(phi, theta) - g.evaluate(theta).real()));
        }
    }
    return {worst <= 1e-6, fmt("max |q_margin - density| = %.2e over 4 states x 256 angles", worst)};
}

Verdict levy_uncertainty() {
    const double uniform = levy(DensityGrid::from_values(std::vector<double>(kDefaultGridSize, 1.0)));
    const cplx z(5.0, 0.0);
    const std::size_t dim = truncation_for(z, 1e-12);
    const double canon = uncertainty_product(canonical(dim), z, dim);
    const double vac = uncertainty_product(phase_space_matrix(0, dim), z, dim);
    const double one = uncertainty_product(phase_space_matrix(1, dim), z, dim);
    const bool pass = std::abs(uniform - kPi * kPi / 3.0) <= 1e-6 && std::abs(canon - 0.5) <= 0.15 * 0.5 &&
                      std::abs(vac - std::sqrt(0.5)) <= 0.15 * std::sqrt(0.5) && std::abs(one - 1.0) <= 0.15;
    return {pass, fmt("levy(uniform) = %.10f; products %.4f, %.4f, %.4f", uniform, canon, vac, one)};
}

Verdict classical_limit() {
    std::vector<double> values;
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
        const std::size_t dim = truncation_for(cplx(r, 0.0), 1e-12);
        values.push_back(concentration(canonical(dim), cplx(r, 0.0), 0.1, dim));
    }
    bool pass = true;
    for (std::size_t i = 1; i < values.size(); ++i) pass = pass && values[i] > values[i - 1];
    const std::size_t dim = truncation_for(cplx(32.0, 0.0), 1e-12);
    const double far = concentration(canonical(dim), cplx(32.0, 0.0), 0.1, dim);
    pass = pass && far > 0.99;
    return {pass, fmt("%.4f < %.4f < %.4f < %.4f; |z|=32 (dim %zu): %.10f", values[0], values[1], values[2],
                      values[3], dim, far)};
}

Verdict theorem3() {
    Rng rng(111);
    double norm_err = 0.0;
    double cov_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t s = static_cast<std::size_t>(uniform01(rng) * 9);
        const std::size_t count = 1 + static_cast<std::size_t>(uniform01(rng) * 9);
        std::vector<std::size_t> pool = range(20);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::size_t> index_set(pool.begin(), pool.begin() + static_cast<long>(count));
        std::sort(index_set.begin(), index_set.end());
        const DiscretePhasePOM pom = make_discrete_pom(index_set, s, random_discrete_A(index_set, s, rng));
        Matrix total = Matrix::Zero(static_cast<Index>(count), static_cast<Index>(count));
        for (std::size_t l = 0; l <= s; ++l) total += pom.point_operator(l).matrix();
        norm_err = std::max(norm_err, max_abs(total - Matrix::Identity(total.rows(), total.cols())));
        for (std::size_t k = 0; k <= s; ++k) {
            const Matrix r = rotation(grid_angle(s, k), index_set);
            for (std::size_t l = 0; l <= s; ++l) {
                const Matrix lhs = r * pom.point_operator(l).matrix() * r.adjoint();
                cov_err = std::max(cov_err, max_abs(lhs - pom.point_operator((k + l) % (s + 1)).matrix()));
            }
        }
    }
    double converse = 0.0;
    for (std::size_t s = 0; s <= 3; ++s) {
        for (unsigned mask = 1; mask < 64; ++mask) {
            std::vector<std::size_t> index_set;
            for (std::size_t n = 0; n < 6; ++n) {
                if (mask & (1u << n)) index_set.push_back(n);
            }
            converse = std::max(converse, converse_deviation(index_set, s));
        }
    }
    return {norm_err <= 1e-12 && cov_err <= 1e-12 && converse <= 1e-10,
            fmt("normalization %.2e, covariance %.2e, converse deviation %.2e", norm_err, cov_err, converse)};
}

// Rank-one-phase test on the matrix entries alone: A_nm = A_n0 conj(A_m0), all unimodular.
bool rank_one_phase(const Matrix& a) {
    for (Index n = 0; n < a.rows(); ++n) {
        for (Index m = 0; m < a.cols(); ++m) {
            if (std::abs(a(n, m) - a(n, 0) * std::conj(a(m, 0))) > 1e-10) return false;
        }
    }
    return true;
}

Verdict projection_classification() {
    Rng rng(112);
    std::size_t cases = 0;
    std::size_t projection = 0;
    std::size_t wrong = 0;
    std::vector<std::size_t> wrong_by_order(4, 0);
    for (std::size_t s = 0; s <= 3; ++s) {
        for (unsigned mask = 1; mask < 64; ++mask) {
            std::vector<std::size_t> index_set;
            for (std::size_t n = 0; n < 6; ++n) {
                if (mask & (1u << n)) index_set.push_back(n);
            }
            if (index_set.size() > 4) continue;
            const Index size = static_cast<Index>(index_set.size());
            const auto phases = random_phases(index_set.size(), rng);
            Vector u(size);
            for (Index i = 0; i < size; ++i) u(i) = std::polar(1.0, phases[static_cast<std::size_t>(i)]);
            const Matrix rotated = u * u.adjoint();
            for (const Matrix& a : {Matrix(Matrix::Ones(size, size)), Matrix(Matrix::Identity(size, size)), rotated,
                                    random_discrete_A(index_set, s, rng)}) {
                if (!validate_A(index_set, s, a).ok()) continue;
                const DiscretePhasePOM pom = make_discrete_pom(index_set, s, a);
                bool idempotent = true;
                for (std::size_t l = 0; l <= s; ++l) {
                    const Matrix p = pom.point_operator(l).matrix();
                    idempotent = idempotent && max_abs(p * p - p) <= 1e-10;
                }
                const bool claimed = index_set.size() == s + 1 && rank_one_phase(a);
                ++cases;
                if (idempotent) ++projection;
                if (idempotent != claimed) {
                    ++wrong;
                    ++wrong_by_order[s];
                }
                if (is_projection_valued(pom).projection_valued != idempotent) {
                    return {false, "library idempotence disagrees with direct check"};
                }
            }
        }
    }
    return {wrong == 0, fmt("%zu cases, %zu projection valued, %zu misclassified (by s: %zu %zu %zu %zu)", cases,
                            projection, wrong, wrong_by_order[0], wrong_by_order[1], wrong_by_order[2],
                            wrong_by_order[3])};
}

Verdict pb_limit() {
    const CircleSet upper = CircleSet::from_intervals({{0.0, kPi}});
    const std::vector<std::size_t> orders{64, 128, 256, 512, 1024};
    std::string detail;
    bool pass = true;
    for (const auto& pm : {canonical(9), phase_space_matrix(0, 9)}) {
        auto error_at = [&](std::size_t s) {
            double worst = 0.0;
            for (std::size_t n = 0; n <= 8; ++n) {
                for (std::size_t m = 0; m <= 8; ++m) {
                    // Direct Riemann sum over grid points in [0, pi).
                    cplx sum = 0.0;
                    for (std::size_t k = 0; k <= s; ++k) {
                        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(s + 1);
                        if (theta < kPi) sum += std::polar(1.0, (static_cast<double>(n) - m) * theta);
                    }
                    const cplx exact = oracle::set_fourier({{0.0, kPi}}, static_cast<long>(n) - static_cast<long>(m));
                    const double direct = std::abs(pm(n, m) * (sum / static_cast<double>(s + 1) - exact));
                    const double library = convergence_error(pm, s, upper, n, m);
                    if (std::abs(direct - library) > 1e-9) return -1.0;
                    worst = std::max(worst, library);
                }
            }
            return worst;
        };
        std::vector<double> xs;
        std::vector<double> errs;
        bool decreasing = true;
        for (std::size_t s : orders) {
            const double e = error_at(s);
            if (e < 0) return {false, "library convergence error disagrees with direct sum"};
            if (!errs.empty() && e >= errs.back()) decreasing = false;
            xs.push_back(static_cast<double>(s));
            errs.push_back(e);
        }
        const double rate = rate_exponent(xs, errs);
        const double last = error_at(4096);
        pass = pass && decreasing && rate >= 0.8 && rate <= 1.2 && last >= 0 && last < 1e-3;
        detail += fmt("%s rate %.3f, error(4096) %.2e; ", pm.family().c_str(), rate, last);
    }
    return {pass, detail};
}

Verdict spectral() {
    bool pass = true;
    double prev_full = 1e9;
    double prev_part = 1e9;
    std::string detail;
    for (std::size_t s : {7, 15, 31, 63, 127}) {
        const double full = spectral_accuracy(s, {0.0, kTwoPi});
        const double part = spectral_accuracy(s, {1.0, 2.5});
        const double bound = kPi / static_cast<double>(s + 1);
        pass = pass && full == bound && part <= bound && full < prev_full && part < prev_part;
        prev_full = full;
        prev_part = part;
        detail = fmt("s=127: full %.6e (pi/128 = %.6e), [1,2.5) %.6e", full, bound, part);
    }
    return {pass, detail};
}

Verdict sampling() {
    const cplx z(1.0, 0.5);
    const std::size_t dim = truncation_for(z, 1e-12);
    const auto samples = sample(trivial(dim), z, 100000, 15, dim);
    const double ks = oracle::ks_uniform(samples);
    const double critical = oracle::ks_critical_1pct(samples.size());
    const bool same = samples == sample(trivial(dim), z, 100000, 15, dim);
    auto cli_run = [] {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run({"phaseobs", "sample", "--family", "trivial", "--z", "1,0.5", "--count", "2000",
                                   "--seed", "15", "--out", "csv"},
                                  out, err);
        return code == 0 ? out.str() : std::string();
    };
    const std::string a = cli_run();
    const bool bytes = !a.empty() && a == cli_run();
    return {ks < critical && same && bytes,
            fmt("KS %.5f < %.5f, library repeat identical=%d, CLI bytes identical=%d", ks, critical, same, bytes)};
}

struct Criterion {
    int number;
    const char* name;
    std::function<Verdict()> check;
    double limit_s;  // 0 when no runtime bound is stated
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "normalization and uniformity", normalization_uniformity, 10},
        {2, "covariance", covariance, 30},
        {3, "counterexample F", counterexample, 0},
        {4, "variance bound", variance_bound, 0},
        {5, "first-moment determination", first_moment, 0},
        {6, "strongness and number shifts", strongness, 0},
        {7, "vector realization round-trip", theorem2, 0},
        {8, "Husimi angle margin", husimi_margin, 60},
        {9, "Levy measure and uncertainty", levy_uncertainty, 0},
        {10, "classical limit", classical_limit, 120},
        {11, "discrete observables forward and converse", theorem3, 0},
        {12, "projection classification", projection_classification, 0},
        {13, "discrete weak limit", pb_limit, 0},
        {14, "spectral accuracy", spectral, 0},
        {15, "sampling", sampling, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && elapsed >= c.limit_s) {
            v.pass = false;
            v.detail += fmt(" [runtime %.1f s exceeds %.0f s]", elapsed, c.limit_s);
        }
        if (!v.pass) ++failures;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", c.number, c.name,
                    v.detail.c_str(), elapsed);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
