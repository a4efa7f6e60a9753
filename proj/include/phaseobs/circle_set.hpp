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

#ifndef PHASEOBS_CIRCLE_SET_HPP
#define PHASEOBS_CIRCLE_SET_HPP

#include <complex>
#include <utility>
#include <vector>

namespace phaseobs {

/// Half-open arc [a, b) with 0 <= a < b <= 2 pi.
struct Interval {
    double a = 0.0;
    double b = 0.0;

    double length() const { return b - a; }
    bool contains(double x) const { return a <= x && x < b; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals in [0, 2 pi), kept in canonical form:
/// sorted, pairwise disjoint, non-adjacent, no empty pieces.
class CircleSet {
public:
    CircleSet() = default;

    /// Normalizes `intervals`. Each must satisfy 0 <= a <= b <= 2 pi.
    static CircleSet from_intervals(std::vector<Interval> intervals);
    static CircleSet full();
    static CircleSet empty() { return {}; }
    /// The arc starting at `start` (any real) of the given length, wrapped
    /// into [0, 2 pi). Lengths >= 2 pi give the full circle.
    static CircleSet arc(double start, double length);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool is_empty() const { return intervals_.empty(); }
    bool is_full() const;
    double measure() const;
    /// Membership of a point already reduced to [0, 2 pi).
    bool contains(double x) const;

    CircleSet unite(const CircleSet& other) const;

    friend bool operator==(const CircleSet&, const CircleSet&) = default;

private:
    explicit CircleSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

    std::vector<Interval> intervals_;
};

/// Reduces x into [0, 2 pi).
double wrap_angle(double x);

/// {x : (x - theta) mod 2 pi in X}.
CircleSet shift(const CircleSet& set, double theta);

/// Lebesgue measure of the symmetric difference.
double symmetric_difference_measure(const CircleSet& x, const CircleSet& y);

/// (1/2 pi) int_X e^{i k theta} d theta, in closed form.
std::complex<double> fourier_coeff(const CircleSet& set, long k);

/// (1/2 pi) int_X sin theta d theta.
double sine_integral(const CircleSet& set);

/// (1/2 pi) int_0^{2 pi} theta^p e^{i k theta} d theta for p in {1, 2}.
std::complex<double> moment_coeff(int p, long k);

}  // namespace phaseobs

#endif  // PHASEOBS_CIRCLE_SET_HPP
