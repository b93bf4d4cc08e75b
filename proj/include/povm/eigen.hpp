#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "povm/errors.hpp"
#include "povm/hermitian.hpp"
#include "povm/matrix.hpp"

namespace povm {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // unitary; column j pairs with values[j]
};

namespace detail {

inline double offdiagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace detail

/// Cyclic Jacobi for complex Hermitian matrices. Pivots are visited in a
/// fixed row-major order and each rotation is the classical inner rotation
/// (|angle| <= pi/4) with the pivot phase folded in, so runs are
/// bit-reproducible for identical input. Throws EigenError if the
/// off-diagonal norm has not collapsed after max_sweeps.
inline EigenSystem eigen_hermitian(const HermitianOperator& input, int max_sweeps = 100) {
    const std::size_t n = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius_norm();
    const double stop = scale * 5e-16 * static_cast<double>(n == 0 ? 1 : n);

    if (n > 1 && scale > 0.0) {
        int sweep = 0;
        for (;; ++sweep) {
            const double off = detail::offdiagonal_norm(a);
            if (off <= stop) break;
            if (sweep >= max_sweeps)
                throw EigenError("jacobi sweep limit reached", off);
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const Complex apq = a(p, q);
                    const double r = std::abs(apq);
                    if (r == 0.0) continue;
                    const Complex alpha = apq / r;  // unit modulus
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double theta = (aqq - app) / (2.0 * r);
                    double t;
                    if (std::abs(theta) > 1e15) {
                        t = 1.0 / (2.0 * theta);
                    } else {
                        t = ((theta >= 0.0) ? 1.0 : -1.0) /
                            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    }
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const Complex ca = std::conj(alpha);

                    for (std::size_t k = 0; k < n; ++k) {
                        if (k == p || k == q) continue;
                        const Complex akp = a(k, p);
                        const Complex akq = a(k, q);
                        const Complex nkp = c * akp - s * ca * akq;
                        const Complex nkq = s * akp + c * ca * akq;
                        a(k, p) = nkp;
                        a(p, k) = std::conj(nkp);
                        a(k, q) = nkq;
                        a(q, k) = std::conj(nkq);
                    }
                    a(p, p) = Complex(app - t * r, 0.0);
                    a(q, q) = Complex(aqq + t * r, 0.0);
                    a(p, q) = Complex(0.0, 0.0);
                    a(q, p) = Complex(0.0, 0.0);

                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * ca * vkq;
                        v(k, q) = s * vkp + c * ca * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        sys.values[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) sys.vectors(k, j) = v(k, order[j]);
    }
    return sys;
}

/// Spectral norm (largest |eigenvalue|) of a Hermitian operator.
inline double operator_norm(const HermitianOperator& a) {
    if (a.dim() == 0) return 0.0;
    const EigenSystem sys = eigen_hermitian(a);
    return std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));
}

/// Spectral norm of a general square matrix via the largest eigenvalue of
/// M^dagger M.
inline double spectral_norm(const ComplexMatrix& m) {
    if (m.dim() == 0) return 0.0;
    const ComplexMatrix g = m.adjoint() * m;
    // Gram product is Hermitian in exact arithmetic; symmetrize the dust away.
    const EigenSystem sys = eigen_hermitian(HermitianOperator(g, 1e-6 * (1.0 + g.max_abs())));
    const double top = std::max(0.0, sys.values.back());
    return std::sqrt(top);
}

/// Eigenvalues grouped into clusters of width cluster_tol, with one
/// orthogonal projection per cluster. Projections sum to the identity and
/// reassemble the operator to solver precision.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;            // ascending cluster representatives
    std::vector<HermitianOperator> projections; // same length
};

inline SpectralDecomposition eigendecompose(const HermitianOperator& a, double cluster_tol = -1.0) {
    const EigenSystem sys = eigen_hermitian(a);
    const std::size_t n = a.dim();
    double norm = 0.0;
    for (double lam : sys.values) norm = std::max(norm, std::abs(lam));
    if (cluster_tol < 0.0) cluster_tol = 1e-8 * norm;

    SpectralDecomposition dec;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && sys.values[stop] - sys.values[stop - 1] <= cluster_tol) ++stop;
        double mean = 0.0;
        for (std::size_t j = start; j < stop; ++j) mean += sys.values[j];
        mean /= static_cast<double>(stop - start);

        ComplexMatrix proj(n);
        for (std::size_t j = start; j < stop; ++j) {
            for (std::size_t r = 0; r < n; ++r) {
                const Complex vr = sys.vectors(r, j);
                proj(r, r) += vr * std::conj(vr);
                for (std::size_t c = r + 1; c < n; ++c) {
                    const Complex val = vr * std::conj(sys.vectors(c, j));
                    proj(r, c) += val;
                    proj(c, r) += std::conj(val);
                }
            }
        }
        dec.eigenvalues.push_back(mean);
        dec.projections.emplace_back(proj);
        start = stop;
    }
    return dec;
}

struct PsdCertificate {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
};

/// Positive semidefiniteness up to tol: min eigenvalue >= -tol.
inline PsdCertificate psd_certify(const HermitianOperator& a, double tol = 1e-10) {
    PsdCertificate cert;
    if (a.dim() == 0) {
        cert.is_psd = true;
        return cert;
    }
    const EigenSystem sys = eigen_hermitian(a);
    cert.min_eigenvalue = sys.values.front();
    cert.is_psd = cert.min_eigenvalue >= -tol;
    return cert;
}

}  // namespace povm
