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

#include "phaseobs/circle_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phaseobs/fock.hpp"

namespace phaseobs {

CircleSet CircleSet::from_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!std::isfinite(iv.a) || !std::isfinite(iv.b) || iv.a < 0.0 || iv.b > kTwoPi ||
            iv.a > iv.b) {
            throw std::invalid_argument("CircleSet: intervals must satisfy 0 <= a <= b <= 2pi");
        }
    }
    std::erase_if(intervals, [](const Interval& iv) { return !(iv.b > iv.a); });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.a <= merged.back().b) {
            merged.back().b = std::max(merged.back().b, iv.b);
        } else {
            merged.push_back(iv);
        }
    }
    return CircleSet(std::move(merged));
}

CircleSet CircleSet::full() { return CircleSet({{0.0, kTwoPi}}); }

CircleSet CircleSet::arc(double start, double length) {
    if (!std::isfinite(start) || !std::isfinite(length) || length < 0.0) {
        throw std::invalid_argument("CircleSet::arc: finite start and non-negative length required");
    }
    if (length >= kTwoPi) return full();
    const double a = wrap_angle(start);
    const double b = a + length;
    if (b <= kTwoPi) return from_intervals({{a, b}});
    return from_intervals({{a, kTwoPi}, {0.0, b - kTwoPi}});
}

bool CircleSet::is_full() const {
    return intervals_.size() == 1 && intervals_[0].a == 0.0 && intervals_[0].b == kTwoPi;
}

double CircleSet::measure() const {
    double total = 0.0;
    for (const auto& iv : intervals_) total += iv.length();
    return total;
}

bool CircleSet::contains(double x) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [x](const Interval& iv) { return iv.contains(x); });
}

CircleSet CircleSet::unite(const CircleSet& other) const {
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return from_intervals(std::move(all));
}

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

CircleSet shift(const CircleSet& set, double theta) {
    if (set.is_full() || set.is_empty()) return set;
    std::vector<Interval> pieces;
    for (const auto& iv : set.intervals()) {
        const double a = wrap_angle(iv.a + theta);
        const double b = a + iv.length();
        if (b <= kTwoPi) {
            pieces.push_back({a, b});
        } else {
            pieces.push_back({a, kTwoPi});
            pieces.push_back({0.0, std::min(b - kTwoPi, kTwoPi)});
        }
    }
    return CircleSet::from_intervals(std::move(pieces));
}

double symmetric_difference_measure(const CircleSet& x, const CircleSet& y) {
    std::vector<double> cuts{0.0, kTwoPi};
    for (const auto* s : {&x, &y}) {
        for (const auto& iv : s->intervals()) {
            cuts.push_back(iv.a);
            cuts.push_back(iv.b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (x.contains(mid) != y.contains(mid)) total += cuts[i + 1] - cuts[i];
    }
    return total;
}

std::complex<double> fourier_coeff(const CircleSet& set, long k) {
    if (set.is_full()) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return set.measure() / kTwoPi;
    // (e^{ikb} - e^{ika}) / (2 pi i k) = e^{ik(a+b)/2} sin(k(b-a)/2) / (pi k),
    // which avoids cancellation on short intervals.
    const double kd = static_cast<double>(k);
    std::complex<double> acc = 0.0;
    for (const auto& iv : set.intervals()) {
        const double mid = 0.5 * (iv.a + iv.b);
        acc += std::polar(std::sin(0.5 * kd * iv.length()) / (kPi * kd), kd * mid);
    }
    return acc;
}

double sine_integral(const CircleSet& set) {
    if (set.is_full()) return 0.0;
    double acc = 0.0;
    for (const auto& iv : set.intervals()) acc += std::cos(iv.a) - std::cos(iv.b);
    return acc / kTwoPi;
}

std::complex<double> moment_coeff(int p, long k) {
    const double kd = static_cast<double>(k);
    switch (p) {
        case 1:
            if (k == 0) return kPi;
            return {0.0, -1.0 / kd};
        case 2:
            if (k == 0) return 4.0 * kPi * kPi / 3.0;
            return {2.0 / (kd * kd), -kTwoPi / kd};
        default:
            throw std::invalid_argument("moment_coeff: p must be 1 or 2");
    }
}

}  // namespace phaseobs
