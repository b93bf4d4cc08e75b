#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "povm/errors.hpp"

namespace povm {

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;  // |last interval-doubling correction|
    int panels = 0;               // panel count of the accepted level
    bool converged = false;
};

namespace detail {

/// 16-point Gauss-Legendre rule on [-1, 1], derived at first use: nodes by
/// Newton iteration on P_16 from Chebyshev starting points, weights from
/// the standard derivative formula. Everything in long double, so the rule
/// itself carries no table-truncation error worth caring about.
struct GaussRule {
    static constexpr int n = 16;
    std::array<long double, n> x{};
    std::array<long double, n> w{};

    GaussRule() {
        const long double pi = 3.14159265358979323846264338327950288L;
        for (int i = 0; i < n; ++i) {
            long double xi = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                                      (static_cast<long double>(n) + 0.5L));
            for (int it = 0; it < 64; ++it) {
                // Legendre recurrence for P_n and P_n' at xi.
                long double p0 = 1.0L, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const long double pk = ((2.0L * k - 1.0L) * xi * p1 -
                                            (k - 1.0L) * p0) / static_cast<long double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                const long double dp = static_cast<long double>(n) * (xi * p1 - p0) /
                                       (xi * xi - 1.0L);
                const long double step = p1 / dp;
                xi -= step;
                if (std::abs(step) < 1e-19L) break;
            }
            long double p0 = 1.0L, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const long double pk = ((2.0L * k - 1.0L) * xi * p1 - (k - 1.0L) * p0) /
                                       static_cast<long double>(k);
                p0 = p1;
                p1 = pk;
            }
            const long double dp = static_cast<long double>(n) * (xi * p1 - p0) /
                                   (xi * xi - 1.0L);
            x[i] = xi;
            w[i] = 2.0L / ((1.0L - xi * xi) * dp * dp);
        }
    }

    static const GaussRule& get() {
        static const GaussRule rule;
        return rule;
    }
};

template <class F>
inline void composite(const F& f, long double a, long double b, int panels,
                      std::complex<long double>& value, long double& resabs) {
    const GaussRule& rule = GaussRule::get();
    value = std::complex<long double>(0.0L, 0.0L);
    resabs = 0.0L;
    const long double h = (b - a) / static_cast<long double>(panels);
    for (int p = 0; p < panels; ++p) {
        const long double lo = a + h * static_cast<long double>(p);
        const long double mid = lo + 0.5L * h;
        const long double half = 0.5L * h;
        for (int i = 0; i < GaussRule::n; ++i) {
            const std::complex<long double> fv = f(mid + half * rule.x[i]);
            value += (rule.w[i] * half) * fv;
            resabs += rule.w[i] * half * std::abs(fv);
        }
    }
}

}  // namespace detail

/// Integrates a complex-valued integrand f(long double) over [a, b] by a
/// composite 16-point Gauss rule, doubling the panel count until two
/// successive levels agree within abs_tol (or within the roundoff floor of
/// the absolute-value integral). Start with roughly one panel per
/// oscillation so the first estimate already resolves the phase.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                    int initial_panels = 4, int max_panels = 1 << 16) {
    if (!(b > a)) throw RangeError("integration interval is empty or reversed");
    if (initial_panels < 1) initial_panels = 1;

    QuadratureResult res;
    std::complex<long double> prev(0.0L, 0.0L);
    long double resabs = 0.0L;
    bool have_prev = false;
    for (int panels = initial_panels; panels <= max_panels; panels *= 2) {
        std::complex<long double> cur;
        detail::composite(f, a, b, panels, cur, resabs);
        res.panels = panels;
        if (have_prev) {
            const long double diff = std::abs(cur - prev);
            const long double floor = 100.0L * 1.1e-19L * resabs;
            res.error_estimate = static_cast<double>(diff);
            if (diff <= abs_tol || diff <= floor) {
                res.value = std::complex<double>(static_cast<double>(cur.real()),
                                                 static_cast<double>(cur.imag()));
                res.converged = true;
                return res;
            }
        }
        prev = cur;
        have_prev = true;
    }
    res.value = std::complex<double>(static_cast<double>(prev.real()),
                                     static_cast<double>(prev.imag()));
    res.converged = false;
    return res;
}

}  // namespace povm
