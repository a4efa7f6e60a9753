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


#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "phaseobs/circle_set.hpp"
#include "phaseobs/coherent.hpp"
#include "phaseobs/discrete_pb.hpp"
#include "phaseobs/io.hpp"
#include "phaseobs/observables.hpp"
#include "phaseobs/phase_matrix.hpp"
#include "phaseobs/random.hpp"
#include "phaseobs/verify.hpp"

namespace phaseobs::cli {

namespace {

// Bad command-line content: unknown family, interval syntax, unreadable file.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family = "canonical";
    std::optional<std::size_t> dim;
    std::string matrix_path;
    std::string set = "[0,pi)";
    std::string z = "0";
    std::string out;
    std::size_t s = 8;
    std::string s_list = "64,128,256,512,1024";
    std::string entry = "0,1";
    std::uint64_t seed = 0;
    std::size_t count = 1000;
    std::size_t jobs = 1;
    std::size_t grid = kDefaultGridSize;
    std::vector<std::string> suites;
    std::string state_path;
    bool set_given = false;
};

std::size_t default_dim() {
    if (const char* env = std::getenv("PHASEOBS_DEFAULT_DIM")) {
        try {
            const long long value = std::stoll(env);
            if (value > 0) return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("PHASEOBS_DEFAULT_DIM must be a positive integer, got '") + env + "'");
    }
    return 64;
}

PhaseMatrix family_matrix(const std::string& family, std::size_t dim, std::uint64_t seed) {
    if (family == "canonical") return canonical(dim);
    if (family == "trivial") return trivial(dim);
    if (family == "rotated") {
        Rng rng(seed);
        return diagonal_conjugate(canonical(dim), random_phases(dim, rng));
    }
    const std::string prefix = "phase-space:";
    if (family.rfind(prefix, 0) == 0) {
        const std::string rest = family.substr(prefix.size());
        std::size_t used = 0;
        unsigned long s = 0;
        try {
            s = std::stoul(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == rest.size() && !rest.empty() && rest.front() != '-') return phase_space_matrix(s, dim);
    }
    throw UsageError("unknown family '" + family + "' (canonical, trivial, rotated, phase-space:<s>)");
}

Json read_file(const std::string& path) {
    try {
        return read_json_file(path);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

// The phase matrix named by --matrix or --family, at least `min_dim` wide.
PhaseMatrix subject(const Options& o, std::size_t min_dim = 1) {
    if (!o.matrix_path.empty()) {
        const Json doc = read_file(o.matrix_path);
        PhaseMatrix pm = phase_matrix_from_json(doc);
        if (o.dim && *o.dim < pm.dim()) pm = pm.restrict_to(*o.dim);
        return pm;
    }
    return family_matrix(o.family, std::max(o.dim.value_or(default_dim()), min_dim), o.seed);
}

CircleSet parse_set(const std::string& text) {
    try {
        return parse_circle_set(text);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

cplx parse_z(const std::string& text) {
    try {
        return parse_complex(text);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(piece, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != piece.size() || piece.front() == '-') {
            throw UsageError(std::string("invalid ") + what + " '" + text + "'");
        }
        out.push_back(value);
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what);
    return out;
}

// Truncation for coherent-state work: the larger of the requested dimension
// and the 1e-12 Poisson tail.
std::size_t coherent_dim(const Options& o, cplx z) {
    const std::size_t needed = truncation_for(z, 1e-12);
    if (o.dim && *o.dim < needed) {
        throw std::invalid_argument("--dim " + std::to_string(*o.dim) + " is below the truncation " +
                                    std::to_string(needed) + " needed for |z| = " + format_double(std::abs(z)));
    }
    return o.dim.value_or(std::max(default_dim(), needed));
}

class Emitter {
public:
    Emitter(const std::string& out, std::ostream& stdout_stream, bool csv_default)
        : csv_(csv_default), stream_(&stdout_stream) {
        if (out == "csv") {
            csv_ = true;
        } else if (out == "json") {
            csv_ = false;
        } else if (!out.empty()) {
            file_.open(out, std::ios::binary);
            if (!file_) throw UsageError("cannot write '" + out + "'");
            stream_ = &file_;
            const auto dot = out.rfind('.');
            if (dot != std::string::npos) {
                const std::string ext = out.substr(dot);
                if (ext == ".csv") csv_ = true;
                if (ext == ".json") csv_ = false;
            }
        }
    }

    bool csv() const { return csv_; }
    std::ostream& stream() { return *stream_; }

    void json(const Json& doc) { *stream_ << doc.dump(2) << '\n'; }

    void table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
        if (csv_) {
            write_row(header);
            for (const auto& row : rows) {
                std::vector<std::string> cells;
                for (double x : row) cells.push_back(format_double(x == 0.0 ? 0.0 : x));
                write_row(cells);
            }
            return;
        }
        Json doc = Json::array();
        for (const auto& row : rows) {
            Json record = Json::object();
            for (std::size_t i = 0; i < header.size(); ++i) record[header[i]] = row[i];
            doc.push_back(std::move(record));
        }
        json(doc);
    }

private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) *stream_ << (i ? "," : "") << cells[i];
        *stream_ << "\r\n";
    }

    bool csv_;
    std::ostream* stream_;
    std::ofstream file_;
};

Json complex_json(cplx c) { return Json::array({c.real(), c.imag()}); }

int cmd_build(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, false);
    const PhaseMatrix pm = subject(o);
    if (emit.csv()) {
        std::vector<std::vector<double>> rows;
        for (Eigen::Index n = 0; n < pm.matrix().rows(); ++n) {
            for (Eigen::Index m = 0; m < pm.matrix().cols(); ++m) {
                rows.push_back({double(n), double(m), pm.matrix()(n, m).real(), pm.matrix()(n, m).imag()});
            }
        }
        emit.table({"n", "m", "re", "im"}, rows);
    } else {
        emit.json(to_json(pm));
    }
    return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, false);
    const PhaseMatrix pm = subject(o);
    const CircleSet set = parse_set(o.set);
    const Operator e = evaluate(pm, set);
    if (emit.csv()) {
        std::vector<std::vector<double>> rows;
        for (Eigen::Index n = 0; n < e.matrix().rows(); ++n) {
            for (Eigen::Index m = 0; m < e.matrix().cols(); ++m) {
                rows.push_back({double(n), double(m), e.matrix()(n, m).real(), e.matrix()(n, m).imag()});
            }
        }
        emit.table({"n", "m", "re", "im"}, rows);
    } else {
        Json doc = to_json(e);
        doc["set"] = to_json(set);
        doc["family"] = pm.family();
        emit.json(doc);
    }
    return kExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, true);
    const cplx z = parse_z(o.z);
    const std::size_t dim = coherent_dim(o, z);
    const DensityGrid grid = density_grid(subject(o, dim), z, dim, o.grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < grid.thetas.size(); ++j) rows.push_back({grid.thetas[j], grid.values[j]});
    emit.table({"theta", "g"}, rows);
    return kExitOk;
}

int cmd_levy(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, false);
    const cplx z = parse_z(o.z);
    const std::size_t dim = coherent_dim(o, z);
    const PhaseMatrix pm = subject(o, dim);
    const double value = levy(density_grid(pm, z, dim, o.grid));
    if (emit.csv()) {
        emit.table({"levy"}, {{value}});
    } else {
        emit.json({{"family", pm.family()}, {"z", complex_json(z)}, {"dim", dim}, {"levy", value}});
    }
    return kExitOk;
}

int cmd_uncertainty(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, false);
    const cplx z = parse_z(o.z);
    if (std::abs(z) == 0.0) throw UsageError("uncertainty needs a nonzero --z");
    const std::size_t dim = coherent_dim(o, z);
    const PhaseMatrix pm = subject(o, dim);
    const double value = uncertainty_product(pm, z, dim);
    if (emit.csv()) {
        emit.table({"uncertainty_product"}, {{value}});
    } else {
        emit.json({{"family", pm.family()}, {"z", complex_json(z)}, {"dim", dim}, {"uncertainty_product", value}});
    }
    return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, true);
    const cplx z = parse_z(o.z);
    const std::size_t dim = coherent_dim(o, z);
    const auto values = sample(subject(o, dim), z, o.count, o.seed, dim);
    if (emit.csv()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(values.size());
        for (double x : values) rows.push_back({x});
        emit.table({"theta"}, rows);
    } else {
        emit.json({{"seed", o.seed}, {"count", o.count}, {"samples", values}});
    }
    return kExitOk;
}

int cmd_discretize(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, false);
    const bool from_family = !o.matrix_path.empty() || o.family != "canonical" || o.dim.has_value();
    const DiscretePhasePOM pom = from_family ? restriction_pom(subject(o), o.s) : pb_canonical(o.s);
    if (o.set_given) {
        // E_{J,s}(X) zero-padded to the span of |0>..|max J>.
        const Operator e = accumulate(pom, parse_set(o.set), pom.index_set().back() + 1);
        Json doc = to_json(e);
        doc["s"] = o.s;
        doc["set"] = to_json(parse_set(o.set));
        emit.json(doc);
        return kExitOk;
    }
    Json doc = to_json(pom);
    const ProjectionClassification c = is_projection_valued(pom);
    doc["projection_valued"] = c.projection_valued;
    doc["points"] = Json::array();
    for (std::size_t k = 0; k <= o.s; ++k) doc["points"].push_back(grid_angle(o.s, k));
    emit.json(doc);
    return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, true);
    const auto orders = parse_list(o.s_list, "--s-list");
    const auto entry = parse_list(o.entry, "--entry");
    if (entry.size() != 2) throw UsageError("--entry takes n,m");
    const std::size_t needed = std::max(entry[0], entry[1]) + 1;
    const PhaseMatrix pm = subject(o, needed);
    if (pm.dim() < needed) throw std::invalid_argument("--entry lies outside the matrix");
    const CircleSet set = parse_set(o.set);
    std::vector<double> xs;
    std::vector<double> errors;
    std::vector<std::vector<double>> rows;
    for (std::size_t s : orders) {
        const double e = convergence_error(pm, s, set, entry[0], entry[1]);
        xs.push_back(double(s));
        errors.push_back(e);
        rows.push_back({double(s), e});
    }
    if (emit.csv()) {
        emit.table({"s", "error"}, rows);
    } else {
        Json doc = {{"family", pm.family()}, {"entry", entry}, {"s", orders}, {"errors", errors}};
        const bool fit = orders.size() >= 2 && std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0; });
        doc["rate_exponent"] = fit ? Json(rate_exponent(xs, errors)) : Json(nullptr);
        emit.json(doc);
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    Emitter emit(o.out, out, false);
    VerifyConfig config;
    if (!o.suites.empty()) config.suites = o.suites;
    config.dim = o.dim.value_or(default_dim());
    config.seed = o.seed;
    config.jobs = std::max<std::size_t>(o.jobs, 1);
    if (!o.matrix_path.empty()) config.matrix = phase_matrix_from_json(read_file(o.matrix_path));
    for (const auto& name : config.suites) {
        if (name != "all" && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw UsageError("unknown suite '" + name + "'");
        }
    }
    const auto results = verify_suite(config);
    bool all_pass = true;
    Json doc = Json::array();
    std::vector<std::vector<double>> rows;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        doc.push_back(to_json(r));
        if (!r.pass) err << "suite " << r.suite << " failed: " << r.metrics.dump() << '\n';
    }
    if (emit.csv()) {
        emit.stream() << "suite,pass,seed,elapsed_ms\r\n";
        for (const auto& r : results) {
            emit.stream() << r.suite << ',' << (r.pass ? "true" : "false") << ',' << r.seed << ',' << r.elapsed_ms
                          << "\r\n";
        }
    } else {
        emit.json(doc);
    }
    return all_pass ? kExitOk : kExitValidation;
}

int cmd_qmargin(const Options& o, std::ostream& out) {
    Emitter emit(o.out, out, true);
    StateVector phi = StateVector::number_state(0, 1);
    if (!o.state_path.empty()) {
        phi = state_from_json(read_file(o.state_path));
    } else {
        const cplx z = parse_z(o.z);
        phi = coherent_vector(z, coherent_dim(o, z));
        phi = StateVector(phi.amps() / phi.norm());
    }
    if (!phi.is_unit()) throw std::invalid_argument("state vector must have unit norm");
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < o.grid; ++j) {
        const double theta = kTwoPi * double(j) / double(o.grid);
        rows.push_back({theta, q_margin(phi, theta)});
    }
    emit.table({"theta", "q_margin"}, rows);
    return kExitOk;
}

void add_family(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.family, "canonical, trivial, rotated or phase-space:<s>");
    cmd->add_option("--dim", o.dim, "Truncation dimension (default $PHASEOBS_DEFAULT_DIM or 64)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--matrix", o.matrix_path, "Phase matrix JSON file, overrides --family");
    cmd->add_option("--seed", o.seed, "Seed (phases of the rotated family, sampling)");
}

void add_out(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "csv, json, or an output file path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covariant phase observables in truncated Fock space"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build", "Emit a phase matrix");
    add_family(build, o);
    add_out(build, o);

    auto* eval = app.add_subcommand("eval", "Evaluate E(X) for a set X");
    add_family(eval, o);
    add_out(eval, o);
    eval->add_option("--set", o.set, "Semicolon-separated [a,b) intervals in radians");

    auto* density = app.add_subcommand("density", "Coherent-state phase density on a grid");
    auto* levy_cmd = app.add_subcommand("levy", "Levy measure of the coherent-state phase density");
    auto* uncertainty = app.add_subcommand("uncertainty", "Number-phase uncertainty product");
    auto* sample_cmd = app.add_subcommand("sample", "Draw phase samples for a coherent state");
    for (auto* cmd : {density, levy_cmd, uncertainty, sample_cmd}) {
        add_family(cmd, o);
        add_out(cmd, o);
        cmd->add_option("--z", o.z, "Coherent amplitude re,im");
    }
    for (auto* cmd : {density, levy_cmd}) cmd->add_option("--grid", o.grid, "Grid size")->check(CLI::Range(8, 1 << 22));
    sample_cmd->add_option("--count", o.count, "Number of samples");

    auto* discretize = app.add_subcommand("discretize", "Discrete phase observable at order s");
    add_family(discretize, o);
    add_out(discretize, o);
    discretize->add_option("--s", o.s, "Discretization order");
    auto* discretize_set = discretize->add_option("--set", o.set, "Emit E_{J,s}(X) for these intervals");

    auto* converge = app.add_subcommand("converge", "Discretization error for one matrix entry");
    add_family(converge, o);
    add_out(converge, o);
    converge->add_option("--set", o.set, "Semicolon-separated [a,b) intervals in radians");
    converge->add_option("--s-list", o.s_list, "Comma-separated orders");
    converge->add_option("--entry", o.entry, "Matrix entry n,m");

    auto* verify = app.add_subcommand("verify", "Run property suites and report");
    verify->add_option("suites", o.suites, "Suite names or 'all'");
    verify->add_option("--suite", o.suites, "Suite name (repeatable)");
    verify->add_option("--dim", o.dim, "Dimension for matrix-level suites")->check(CLI::PositiveNumber);
    verify->add_option("--seed", o.seed, "Master seed");
    verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--matrix", o.matrix_path, "Check this phase matrix instead of the built-in families");
    add_out(verify, o);

    auto* qmargin = app.add_subcommand("qmargin", "Angle margin of the Husimi function");
    add_out(qmargin, o);
    qmargin->add_option("--z", o.z, "Coherent amplitude re,im");
    qmargin->add_option("--state", o.state_path, "State vector JSON file, overrides --z");
    qmargin->add_option("--dim", o.dim, "Truncation for the coherent state")->check(CLI::PositiveNumber);
    qmargin->add_option("--grid", o.grid, "Number of angles")->check(CLI::Range(1, 1 << 20));
    o.grid = kDefaultGridSize;

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (qmargin->parsed() && qmargin->count("--grid") == 0) o.grid = 256;
    o.set_given = discretize_set->count() > 0;

    try {
        if (build->parsed()) return cmd_build(o, out);
        if (eval->parsed()) return cmd_eval(o, out);
        if (density->parsed()) return cmd_density(o, out);
        if (levy_cmd->parsed()) return cmd_levy(o, out);
        if (uncertainty->parsed()) return cmd_uncertainty(o, out);
        if (sample_cmd->parsed()) return cmd_sample(o, out);
        if (discretize->parsed()) return cmd_discretize(o, out);
        if (converge->parsed()) return cmd_converge(o, out);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (qmargin->parsed()) return cmd_qmargin(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace phaseobs::cli
