#pragma once

#include <cmath>
#include <complex>

#include "povm/circle_set.hpp"
#include "povm/errors.hpp"
#include "povm/quadrature.hpp"

namespace povm {

/// Independent evaluation of the moment coefficient
/// (1/2*pi) * integral over [0, 2*pi) of x^k e^{i d x} dx by adaptive
/// quadrature in extended precision. Shares no code with the closed forms
/// it audits: the integrand is assembled from bare powers and cos/sin.
inline Complex oracle_moment_coefficient(int k, long d, double abs_tol = 1e-14) {
    if (k < 0) throw RangeError("moment order must be nonnegative");
    const long double two_pi = 6.28318530717958647692528676655900577L;
    const auto f = [k, d](long double x) {
        long double p = 1.0L;
        for (int j = 0; j < k; ++j) p *= x;
        const long double phase = static_cast<long double>(d) * x;
        return std::complex<long double>(p * std::cos(phase), p * std::sin(phase));
    };
    const int panels = static_cast<int>(std::labs(d)) + 4;
    const QuadratureResult r =
        integrate_adaptive(f, 0.0, static_cast<double>(two_pi), abs_tol, panels);
    if (!r.converged) throw PreconditionError("oracle quadrature did not converge");
    return r.value / k_two_pi;
}

/// Same audit for the set coefficient c_X(d), one integral per interval.
inline Complex oracle_circle_coefficient(const CircleSet& x, long d, double abs_tol = 1e-14) {
    Complex total(0.0, 0.0);
    for (const auto& iv : x.intervals()) {
        const auto f = [d](long double t) {
            const long double phase = static_cast<long double>(d) * t;
            return std::complex<long double>(std::cos(phase), std::sin(phase));
        };
        const double span = iv.hi - iv.lo;
        const int panels =
            static_cast<int>(std::ceil(std::labs(d) * span / k_two_pi)) + 2;
        const QuadratureResult r = integrate_adaptive(f, iv.lo, iv.hi, abs_tol, panels);
        if (!r.converged) throw PreconditionError("oracle quadrature did not converge");
        total += r.value;
    }
    return total / k_two_pi;
}

}  // namespace povm
