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

#ifndef PHASEOBS_IO_HPP
#define PHASEOBS_IO_HPP

#include <string>
#include <string_view>

#include "json.hpp"

#include "phaseobs/circle_set.hpp"
#include "phaseobs/discrete_pb.hpp"
#include "phaseobs/fock.hpp"
#include "phaseobs/phase_matrix.hpp"

namespace phaseobs {

using Json = nlohmann::json;

/// Thrown for malformed documents and CLI arguments.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Complex numbers are always [re, im] pairs; matrices are row major.
// {"dim": N, "entries": [[re, im], ...]}
Json to_json(const Operator& op);
Json to_json(const StateVector& v);
// {"dim": N, "entries": [...], "family": tag}
Json to_json(const PhaseMatrix& pm);
// {"intervals": [[a, b], ...]}
Json to_json(const CircleSet& set);
// {"s": s, "J": [...], "A": {"dim": #J, "entries": [...]}}
Json to_json(const DiscretePhasePOM& pom);

Matrix matrix_from_json(const Json& doc);
Operator operator_from_json(const Json& doc);
StateVector state_from_json(const Json& doc);
/// Validates; invalid matrices raise std::invalid_argument.
PhaseMatrix phase_matrix_from_json(const Json& doc);
CircleSet circle_set_from_json(const Json& doc);
DiscretePhasePOM discrete_pom_from_json(const Json& doc);

Json read_json_file(const std::string& path);

/// Angle expressions: numbers, "pi", + - * / and parentheses ("3*pi/2", "2pi").
double parse_angle(std::string_view text);
/// Semicolon-separated half-open intervals, e.g. "[0,pi);[3*pi/2,2*pi)".
CircleSet parse_circle_set(std::string_view text);
/// "re,im" or a single real.
cplx parse_complex(std::string_view text);

/// Shortest text that round-trips the double.
std::string format_double(double x);

}  // namespace phaseobs

#endif  // PHASEOBS_IO_HPP
