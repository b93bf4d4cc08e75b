#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "povm/errors.hpp"

namespace povm {

using Complex = std::complex<double>;

inline constexpr double k_two_pi = 6.283185307179586476925286766559;
inline constexpr double k_pi = 3.14159265358979323846264338328;

/// Finite union of half-open arcs [lo, hi) on the circle [0, 2*pi).
/// Canonical form: sorted, pairwise disjoint, non-adjacent intervals.
/// Instances are only produced by normalize(), complement(), shift() and
/// unite(), so the invariant holds by construction.
class CircleSet {
public:
    struct Interval {
        double lo;
        double hi;
    };

    CircleSet() = default;

    static CircleSet full() {
        CircleSet s;
        s.parts_.push_back({0.0, k_two_pi});
        return s;
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

    CircleSet complement() const {
        CircleSet out;
        double cursor = 0.0;
        for (const auto& iv : parts_) {
            if (iv.lo > cursor) out.parts_.push_back({cursor, iv.lo});
            cursor = iv.hi;
        }
        if (cursor < k_two_pi) out.parts_.push_back({cursor, k_two_pi});
        return out;
    }

    static CircleSet from_sorted_disjoint(std::vector<Interval> parts) {
        CircleSet s;
        s.parts_ = std::move(parts);
        return s;
    }

private:
    std::vector<Interval> parts_;
};

namespace detail {

// Endpoints within this slack of 0 or 2*pi are clamped; values further out
// are rejected rather than silently wrapped.
inline constexpr double k_boundary_slack = 1e-9;
inline constexpr double k_merge_tol = 1e-14;

inline double clamp_endpoint(double x) {
    if (!std::isfinite(x)) throw RangeError("interval endpoint is not finite");
    if (x < 0.0) {
        if (x >= -k_boundary_slack) return 0.0;
        throw RangeError("interval endpoint below 0");
    }
    if (x > k_two_pi) {
        if (x <= k_two_pi + k_boundary_slack) return k_two_pi;
        throw RangeError("interval endpoint above 2*pi");
    }
    return x;
}

}  // namespace detail

/// Builds the canonical form from raw endpoint pairs. Pairs with lo > hi are
/// wrap-around shorthand and are split at 0; overlapping or touching pieces
/// (within 1e-14) merge; zero-length pieces vanish. Input order is irrelevant.
inline CircleSet normalize(const std::vector<std::pair<double, double>>& raw) {
    std::vector<CircleSet::Interval> flat;
    flat.reserve(raw.size() + 2);
    for (const auto& [a0, b0] : raw) {
        double a = detail::clamp_endpoint(a0);
        double b = detail::clamp_endpoint(b0);
        if (a > b) {
            // wrap-around: [a, 2*pi) then [0, b)
            if (a < k_two_pi) flat.push_back({a, k_two_pi});
            if (b > 0.0) flat.push_back({0.0, b});
        } else {
            flat.push_back({a, b});
        }
    }
    std::sort(flat.begin(), flat.end(), [](const auto& x, const auto& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.hi < y.hi;
    });
    std::vector<CircleSet::Interval> merged;
    for (const auto& iv : flat) {
        if (iv.hi - iv.lo <= detail::k_merge_tol) continue;
        if (!merged.empty() && iv.lo <= merged.back().hi + detail::k_merge_tol) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    return CircleSet::from_sorted_disjoint(std::move(merged));
}

inline double measure(const CircleSet& x) { return x.measure(); }

/// Rotates the set by x (any real; reduced mod 2*pi). Measure is preserved
/// up to roundoff in the endpoint arithmetic.
inline CircleSet shift(const CircleSet& set, double x) {
    if (!std::isfinite(x)) throw RangeError("shift amount is not finite");
    double s = std::fmod(x, k_two_pi);
    if (s < 0.0) s += k_two_pi;
    std::vector<std::pair<double, double>> raw;
    raw.reserve(set.intervals().size() + 1);
    for (const auto& iv : set.intervals()) {
        double lo = iv.lo + s;
        double hi = iv.hi + s;
        if (hi <= k_two_pi) {
            raw.emplace_back(lo, hi);
        } else if (lo >= k_two_pi) {
            raw.emplace_back(lo - k_two_pi, hi - k_two_pi);
        } else {
            raw.emplace_back(lo, k_two_pi);
            raw.emplace_back(0.0, hi - k_two_pi);
        }
    }
    return normalize(raw);
}

inline CircleSet unite(const CircleSet& a, const CircleSet& b) {
    std::vector<std::pair<double, double>> raw;
    raw.reserve(a.intervals().size() + b.intervals().size());
    for (const auto& iv : a.intervals()) raw.emplace_back(iv.lo, iv.hi);
    for (const auto& iv : b.intervals()) raw.emplace_back(iv.lo, iv.hi);
    return normalize(raw);
}

/// c_X(d) = (1/2*pi) * integral over X of exp(i d x) dx, in closed form.
/// c_X(0) is the normalized measure; c_X(-d) == conj(c_X(d)) bit for bit.
inline Complex fourier_coefficient(const CircleSet& x, long d) {
    if (d == 0) return Complex(x.measure() / k_two_pi, 0.0);
    if (d < 0) return std::conj(fourier_coefficient(x, -d));
    Complex sum(0.0, 0.0);
    for (const auto& iv : x.intervals()) {
        const double dh = static_cast<double>(d) * iv.hi;
        const double dl = static_cast<double>(d) * iv.lo;
        sum += Complex(std::cos(dh), std::sin(dh)) - Complex(std::cos(dl), std::sin(dl));
    }
    return sum / Complex(0.0, k_two_pi * static_cast<double>(d));
}

}  // namespace povm
