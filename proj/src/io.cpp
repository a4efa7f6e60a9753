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

#include "phaseobs/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace phaseobs {

namespace {

using Index = Eigen::Index;

Json complex_pair(cplx c) { return Json::array({c.real(), c.imag()}); }

cplx complex_from(const Json& pair) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ParseError("complex entries must be [re, im] number pairs");
    }
    return {pair[0].get<double>(), pair[1].get<double>()};
}

Json matrix_json(const Matrix& m) {
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) entries.push_back(complex_pair(m(r, c)));
    }
    return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

// Recursive-descent evaluator for angle expressions.
class AngleParser {
public:
    explicit AngleParser(std::string_view text) : text_(text) {}

    double parse() {
        const double value = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return value;
    }

private:
    double expression() {
        double value = term();
        for (;;) {
            skip_space();
            if (consume('+')) {
                value += term();
            } else if (consume('-')) {
                value -= term();
            } else {
                return value;
            }
        }
    }

    double term() {
        double value = factor();
        for (;;) {
            skip_space();
            if (consume('*')) {
                value *= factor();
            } else if (consume('/')) {
                value /= factor();
            } else if (peek_pi()) {
                value *= factor();  // implicit product, as in "2pi"
            } else {
                return value;
            }
        }
    }

    double factor() {
        skip_space();
        if (consume('-')) return -factor();
        if (consume('+')) return factor();
        if (consume('(')) {
            const double value = expression();
            skip_space();
            if (!consume(')')) fail("missing ')'");
            return value;
        }
        if (peek_pi()) {
            pos_ += 2;
            return kPi;
        }
        return number();
    }

    double number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    bool peek_pi() {
        skip_space();
        return text_.substr(pos_, 2) == "pi";
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const char* what) const {
        throw ParseError("invalid angle '" + std::string(text_) + "': " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Json to_json(const Operator& op) { return matrix_json(op.matrix()); }

Json to_json(const StateVector& v) {
    Json entries = Json::array();
    for (Index n = 0; n < v.amps().size(); ++n) entries.push_back(complex_pair(v.amps()(n)));
    return {{"dim", v.dim()}, {"entries", std::move(entries)}};
}

Json to_json(const PhaseMatrix& pm) {
    Json doc = matrix_json(pm.matrix());
    if (!pm.family().empty()) doc["family"] = pm.family();
    return doc;
}

Json to_json(const CircleSet& set) {
    Json intervals = Json::array();
    for (const auto& iv : set.intervals()) intervals.push_back(Json::array({iv.a, iv.b}));
    return {{"intervals", std::move(intervals)}};
}

Json to_json(const DiscretePhasePOM& pom) {
    return {{"s", pom.order()}, {"J", pom.index_set()}, {"A", matrix_json(pom.a())}};
}

Matrix matrix_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
        throw ParseError("matrix document needs \"dim\" and \"entries\"");
    }
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0) {
        throw ParseError("\"dim\" must be a positive integer");
    }
    const Index dim = static_cast<Index>(doc["dim"].get<long long>());
    const Json& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw ParseError("\"entries\" must hold dim * dim [re, im] pairs");
    }
    Matrix m(dim, dim);
    for (Index k = 0; k < dim * dim; ++k) m(k / dim, k % dim) = complex_from(entries[static_cast<std::size_t>(k)]);
    return m;
}

Operator operator_from_json(const Json& doc) { return Operator(matrix_from_json(doc)); }

StateVector state_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
        throw ParseError("state document needs \"dim\" and \"entries\"");
    }
    const Json& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != doc["dim"].get<std::size_t>()) {
        throw ParseError("state \"entries\" must hold dim [re, im] pairs");
    }
    Vector v(static_cast<Index>(entries.size()));
    for (std::size_t k = 0; k < entries.size(); ++k) v(static_cast<Index>(k)) = complex_from(entries[k]);
    return StateVector(std::move(v));
}

PhaseMatrix phase_matrix_from_json(const Json& doc) {
    std::string family;
    if (doc.is_object() && doc.contains("family")) {
        if (!doc["family"].is_string()) throw ParseError("\"family\" must be a string");
        family = doc["family"].get<std::string>();
    }
    return PhaseMatrix::from_entries(matrix_from_json(doc), std::move(family));
}

CircleSet circle_set_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("intervals") || !doc["intervals"].is_array()) {
        throw ParseError("circle set document needs an \"intervals\" array");
    }
    std::vector<Interval> intervals;
    for (const auto& pair : doc["intervals"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ParseError("intervals must be [a, b] number pairs");
        }
        intervals.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return CircleSet::from_intervals(std::move(intervals));
}

DiscretePhasePOM discrete_pom_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("s") || !doc.contains("J") || !doc.contains("A")) {
        throw ParseError("discrete POM document needs \"s\", \"J\" and \"A\"");
    }
    return make_discrete_pom(doc["J"].get<std::vector<std::size_t>>(), doc["s"].get<std::size_t>(),
                             matrix_from_json(doc["A"]));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

double parse_angle(std::string_view text) { return AngleParser(trim(text)).parse(); }

CircleSet parse_circle_set(std::string_view text) {
    std::vector<Interval> intervals;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t stop = std::min(text.find(';', start), text.size());
        const std::string_view piece = trim(text.substr(start, stop - start));
        start = stop + 1;
        if (piece.empty()) continue;
        if (piece.front() != '[' || piece.back() != ')') {
            throw ParseError("interval '" + std::string(piece) + "' must have the form [a,b)");
        }
        const std::string_view body = piece.substr(1, piece.size() - 2);
        const std::size_t comma = body.find(',');
        if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("interval '" + std::string(piece) + "' needs exactly one comma");
        }
        const double a = parse_angle(body.substr(0, comma));
        const double b = parse_angle(body.substr(comma + 1));
        if (!(a >= 0.0 && a < b && b <= kTwoPi)) {
            throw ParseError("interval '" + std::string(piece) + "' must satisfy 0 <= a < b <= 2pi");
        }
        intervals.push_back({a, b});
    }
    return CircleSet::from_intervals(std::move(intervals));
}

cplx parse_complex(std::string_view text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string_view::npos) return {parse_angle(text), 0.0};
    return {parse_angle(text.substr(0, comma)), parse_angle(text.substr(comma + 1))};
}

std::string format_double(double x) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return std::to_string(x);
    return std::string(buf, ptr);
}

}  // namespace phaseobs
