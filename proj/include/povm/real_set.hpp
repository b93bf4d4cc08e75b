#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "povm/circle_set.hpp"
#include "povm/errors.hpp"

namespace povm {

/// Finite union of half-open intervals [lo, hi) on the real line, kept
/// sorted and disjoint. Outcome sets for position-type observables.
class RealSet {
public:
    struct Interval {
        double lo;
        double hi;
    };

    RealSet() = default;

    static RealSet from_intervals(const std::vector<std::pair<double, double>>& raw) {
        std::vector<Interval> flat;
        flat.reserve(raw.size());
        for (const auto& [a, b] : raw) {
            if (!std::isfinite(a) || !std::isfinite(b))
                throw RangeError("real interval endpoint is not finite");
            if (b > a) flat.push_back({a, b});
        }
        std::sort(flat.begin(), flat.end(), [](const auto& x, const auto& y) {
            if (x.lo != y.lo) return x.lo < y.lo;
            return x.hi < y.hi;
        });
        RealSet out;
        for (const auto& iv : flat) {
            if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
                out.parts_.back().hi = std::max(out.parts_.back().hi, iv.hi);
            } else {
                out.parts_.push_back(iv);
            }
        }
        return out;
    }

    const std::vector<Interval>& intervals() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    double measure() const {
        double m = 0.0;
        for (const auto& iv : parts_) m += iv.hi - iv.lo;
        return m;
    }

    bool contains(double x) const {
        for (const auto& iv : parts_) {
            if (x >= iv.lo && x < iv.hi) return true;
        }
        return false;
    }

private:
    std::vector<Interval> parts_;
};

inline RealSet intersect(const RealSet& a, const RealSet& b) {
    std::vector<std::pair<double, double>> raw;
    for (const auto& x : a.intervals()) {
        for (const auto& y : b.intervals()) {
            double lo = std::max(x.lo, y.lo);
            double hi = std::min(x.hi, y.hi);
            if (hi > lo) raw.emplace_back(lo, hi);
        }
    }
    return RealSet::from_intervals(raw);
}

inline RealSet unite(const RealSet& a, const RealSet& b) {
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : a.intervals()) raw.emplace_back(iv.lo, iv.hi);
    for (const auto& iv : b.intervals()) raw.emplace_back(iv.lo, iv.hi);
    return RealSet::from_intervals(raw);
}

inline RealSet shift_by(const RealSet& a, double x) {
    if (!std::isfinite(x)) throw RangeError("shift amount is not finite");
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : a.intervals()) raw.emplace_back(iv.lo + x, iv.hi + x);
    return RealSet::from_intervals(raw);
}

/// Reads a circle set as a subset of [0, 2*pi) on the line.
inline RealSet to_real(const CircleSet& x) {
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : x.intervals()) raw.emplace_back(iv.lo, iv.hi);
    return RealSet::from_intervals(raw);
}

}  // namespace povm
