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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "phaseobs/io.hpp"
#include "phaseobs/observables.hpp"
#include "phaseobs/random.hpp"
#include "phaseobs/verify.hpp"

namespace phaseobs {
namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "phaseobs");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("phaseobs_test_" + name);
}

TEST(Json, PhaseMatrixRoundTrip) {
    Rng rng(51);
    const PhaseMatrix pm = random_phase_matrix(9, rng);
    const Json doc = to_json(pm);
    const PhaseMatrix back = phase_matrix_from_json(Json::parse(doc.dump()));
    EXPECT_LE((back.matrix() - pm.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(to_json(back).dump(), doc.dump());
    EXPECT_TRUE(doc["entries"][1].is_array());
    EXPECT_EQ(doc["entries"][1].size(), 2u);
}

TEST(Json, OtherArtifactsRoundTrip) {
    const Operator e = evaluate(phase_space_matrix(0, 5), CircleSet::from_intervals({{0.3, 2.2}}));
    EXPECT_LE((operator_from_json(Json::parse(to_json(e).dump())).matrix() - e.matrix()).cwiseAbs().maxCoeff(), 1e-15);

    const StateVector v = coherent_vector(cplx(0.4, -1.2), 12);
    EXPECT_LE((state_from_json(Json::parse(to_json(v).dump())).amps() - v.amps()).cwiseAbs().maxCoeff(), 1e-15);

    const CircleSet set = CircleSet::from_intervals({{0.1, 0.2}, {3.0, 6.0}});
    EXPECT_EQ(circle_set_from_json(Json::parse(to_json(set).dump())), set);

    Rng rng(52);
    const std::vector<std::size_t> index_set{0, 2, 3, 7};
    const DiscretePhasePOM pom = make_discrete_pom(index_set, 2, random_discrete_A(index_set, 2, rng));
    const DiscretePhasePOM back = discrete_pom_from_json(Json::parse(to_json(pom).dump()));
    EXPECT_EQ(back.order(), 2u);
    EXPECT_EQ(back.index_set(), index_set);
    EXPECT_LE((back.a() - pom.a()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Json, MalformedDocuments) {
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1,0]]})")), ParseError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim": 1, "entries": ["1"]})")), ParseError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"entries": []})")), ParseError);
    EXPECT_THROW(circle_set_from_json(Json::parse(R"({"intervals": [[1]]})")), ParseError);
    EXPECT_THROW(phase_matrix_from_json(Json::parse(R"({"dim": 1, "entries": [[2,0]]})")), std::invalid_argument);
}

TEST(Parse, Angles) {
    EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
    EXPECT_DOUBLE_EQ(parse_angle("2pi"), kTwoPi);
    EXPECT_DOUBLE_EQ(parse_angle(" 3*pi/4 "), 0.75 * kPi);
    EXPECT_DOUBLE_EQ(parse_angle("-(1+pi)"), -(1.0 + kPi));
    EXPECT_DOUBLE_EQ(parse_angle("1.5e-1"), 0.15);
    EXPECT_THROW(parse_angle("pie"), ParseError);
    EXPECT_THROW(parse_angle(""), ParseError);
    EXPECT_THROW(parse_angle("(1"), ParseError);
}

TEST(Parse, CircleSets) {
    const CircleSet set = parse_circle_set("[0,pi/2);[pi, 3pi/2)");
    ASSERT_EQ(set.intervals().size(), 2u);
    EXPECT_DOUBLE_EQ(set.measure(), kPi);
    EXPECT_TRUE(parse_circle_set("[0,2pi)").is_full());
    for (const char* bad : {"[0,1]", "(0,1)", "[1,0)", "[0,7)", "[0;1)", "[0,1,2)", "0,1"}) {
        EXPECT_THROW(parse_circle_set(bad), ParseError) << bad;
    }
    EXPECT_EQ(parse_complex("1.5,-2"), cplx(1.5, -2.0));
    EXPECT_EQ(parse_complex("3"), cplx(3.0, 0.0));
}

TEST(Format, ShortestRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Cli, BuildCanonical) {
    const CliResult r = run_cli({"build", "--family", "canonical", "--dim", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["dim"], 8);
    ASSERT_EQ(doc["entries"].size(), 64u);
    for (const auto& e : doc["entries"]) EXPECT_EQ(e, Json::array({1.0, 0.0}));
    EXPECT_EQ(doc["family"], "canonical");
}

TEST(Cli, EvalTrivialHalfCircle) {
    const CliResult r = run_cli({"eval", "--family", "trivial", "--dim", "4", "--set", "[0,3.14159)"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Matrix e = matrix_from_json(Json::parse(r.out));
    EXPECT_LT((e - 0.5 * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Cli, MatrixFileInputAndOutputFile) {
    const auto in = temp_file("pm.json");
    const auto out = temp_file("eval.json");
    std::ofstream(in) << to_json(phase_space_matrix(0, 3)).dump();
    const CliResult r = run_cli({"eval", "--matrix", in.string(), "--set", "[0,pi)", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const Matrix e = matrix_from_json(read_json_file(out.string()));
    EXPECT_LT((e - evaluate(phase_space_matrix(0, 3), CircleSet::from_intervals({{0.0, kPi}})).matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
    std::filesystem::remove(in);
    std::filesystem::remove(out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--family", "bogus"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--family", "phase-space:x"}).code, 2);
    EXPECT_EQ(run_cli({"eval", "--set", "[0,1]"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--dim", "0"}).code, 2);
    EXPECT_EQ(run_cli({"eval", "--matrix", "/nonexistent/file.json"}).code, 2);

    const auto garbled = temp_file("garbled.json");
    std::ofstream(garbled) << "{\"dim\": 2, ";
    EXPECT_EQ(run_cli({"build", "--matrix", garbled.string()}).code, 2);
    const auto invalid = temp_file("invalid.json");
    std::ofstream(invalid) << R"({"dim": 2, "entries": [[1,0],[3,0],[3,0],[1,0]]})";
    const CliResult rejected = run_cli({"build", "--matrix", invalid.string()});
    EXPECT_EQ(rejected.code, 1);
    EXPECT_NE(rejected.err.find("psd"), std::string::npos) << rejected.err;
    std::filesystem::remove(garbled);
    std::filesystem::remove(invalid);

    EXPECT_EQ(run_cli({"density", "--z", "3,0", "--dim", "4"}).code, 1);
    EXPECT_EQ(run_cli({"verify", "no-such-suite"}).code, 2);
}

TEST(Cli, DefaultDimFromEnvironment) {
    ::setenv("PHASEOBS_DEFAULT_DIM", "3", 1);
    const CliResult r = run_cli({"build"});
    ::unsetenv("PHASEOBS_DEFAULT_DIM");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["dim"], 3);
    EXPECT_EQ(Json::parse(run_cli({"build"}).out)["dim"], 64);
}

TEST(Cli, CsvIsByteDeterministic) {
    const std::vector<std::string> args{"sample", "--family", "phase-space:0", "--z", "1,1", "--count", "500", "--seed", "9"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("theta\r\n", 0), 0u);
    const CliResult density = run_cli({"density", "--z", "1,0", "--grid", "16"});
    ASSERT_EQ(density.code, 0) << density.err;
    EXPECT_EQ(density.out.rfind("theta,g\r\n", 0), 0u);
    EXPECT_EQ(density.out, run_cli({"density", "--z", "1,0", "--grid", "16"}).out);
}

TEST(Cli, AnalysisCommands) {
    const CliResult levy = run_cli({"levy", "--family", "trivial", "--z", "1,0"});
    ASSERT_EQ(levy.code, 0) << levy.err;
    EXPECT_NEAR(Json::parse(levy.out)["levy"].get<double>(), kPi * kPi / 3.0, 1e-6);

    const CliResult unc = run_cli({"uncertainty", "--family", "canonical", "--z", "5,0"});
    ASSERT_EQ(unc.code, 0) << unc.err;
    EXPECT_NEAR(Json::parse(unc.out)["uncertainty_product"].get<double>(), 0.5, 0.075);

    const CliResult pom = run_cli({"discretize", "--s", "3"});
    ASSERT_EQ(pom.code, 0) << pom.err;
    const DiscretePhasePOM parsed = discrete_pom_from_json(Json::parse(pom.out));
    EXPECT_EQ(parsed.a(), Matrix::Ones(4, 4));
    EXPECT_TRUE(Json::parse(pom.out)["projection_valued"].get<bool>());

    const CliResult conv = run_cli({"converge", "--family", "canonical", "--dim", "9", "--set", "[0,pi)",
                                    "--s-list", "64,128,256,512", "--entry", "0,1", "--out", "json"});
    ASSERT_EQ(conv.code, 0) << conv.err;
    const double rate = Json::parse(conv.out)["rate_exponent"].get<double>();
    EXPECT_GE(rate, 0.8);
    EXPECT_LE(rate, 1.2);

    const CliResult q = run_cli({"qmargin", "--z", "0", "--grid", "4"});
    ASSERT_EQ(q.code, 0) << q.err;
    std::istringstream rows(q.out);
    std::string line;
    std::getline(rows, line);
    EXPECT_EQ(line, "theta,q_margin\r");
    int count = 0;
    while (std::getline(rows, line)) {
        ASSERT_EQ(line.back(), '\r');
        EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), 1.0, 1e-12) << line;
        ++count;
    }
    EXPECT_EQ(count, 4);
}

TEST(Cli, VerifyReportSchema) {
    const CliResult r = run_cli({"verify", "counterexample-F", "spectral-accuracy", "--seed", "7", "--jobs", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json report = Json::parse(r.out);
    ASSERT_EQ(report.size(), 2u);
    EXPECT_EQ(report[0]["suite"], "counterexample-F");
    EXPECT_EQ(report[1]["suite"], "spectral-accuracy");
    for (const auto& entry : report) {
        EXPECT_TRUE(entry["pass"].get<bool>());
        EXPECT_TRUE(entry["metrics"].is_object());
        EXPECT_TRUE(entry["seed"].is_number_unsigned());
        EXPECT_TRUE(entry["elapsed_ms"].is_number_integer());
    }
    EXPECT_NEAR(report[0]["metrics"]["covariance_residual"].get<double>(), 1.0 / kPi, 1e-10);
}

TEST(Verify, DeterministicUnderSeed) {
    VerifyConfig config;
    config.suites = {"covariance", "theorem3-forward", "normalization"};
    config.seed = 7;
    config.jobs = 3;
    const auto a = verify_suite(config);
    config.jobs = 1;
    const auto b = verify_suite(config);
    ASSERT_EQ(a.size(), 3u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].suite, config.suites[i]);
        EXPECT_EQ(a[i].seed, b[i].seed);
        EXPECT_EQ(a[i].metrics.dump(), b[i].metrics.dump());
        EXPECT_TRUE(a[i].pass);
    }
    config.suites = {"bogus"};
    EXPECT_THROW(verify_suite(config), std::invalid_argument);
}

TEST(Verify, SuppliedMatrix) {
    VerifyConfig config;
    config.suites = {"covariance", "strongness", "number-shift"};
    config.matrix = canonical(32);
    const auto results = verify_suite(config);
    for (const auto& r : results) EXPECT_TRUE(r.pass) << r.suite << " " << r.metrics.dump();
    config.matrix = phase_space_matrix(0, 32);
    EXPECT_FALSE(verify_suite(config)[1].pass);
}

TEST(Verify, RateExponent) {
    EXPECT_NEAR(rate_exponent({1, 2, 4, 8}, {1.0, 0.5, 0.25, 0.125}), 1.0, 1e-12);
    EXPECT_NEAR(rate_exponent({10, 100}, {1.0, 0.01}), 2.0, 1e-12);
    EXPECT_THROW(rate_exponent({1}, {1}), std::invalid_argument);
}

}  // namespace
}  // namespace phaseobs
