#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "povm/eigen.hpp"
#include "povm/errors.hpp"
#include "povm/gram.hpp"
#include "povm/hermitian.hpp"
#include "povm/phase_povm.hpp"

namespace povm {

/// c_k(d) = (1/2*pi) * integral over [0, 2*pi) of x^k e^{i d x} dx.
/// Closed form: (2*pi)^k/(k+1) at d = 0; otherwise the integration-by-parts
/// recursion c_k = (2*pi)^{k-1}/(i d) - (k/(i d)) c_{k-1} starting from
/// c_0 = 0. Negative d by conjugation, exactly.
inline Complex moment_coefficient(int k, long d) {
    if (k < 0) throw RangeError("moment order must be nonnegative");
    if (d == 0) {
        double p = 1.0;
        for (int j = 0; j < k; ++j) p *= k_two_pi;
        return Complex(p / static_cast<double>(k + 1), 0.0);
    }
    if (d < 0) return std::conj(moment_coefficient(k, -d));
    const Complex inv_id = Complex(0.0, -1.0 / static_cast<double>(d));  // 1/(i d)
    Complex c(0.0, 0.0);
    double power = 1.0;  // (2*pi)^{j-1}
    for (int j = 1; j <= k; ++j) {
        c = inv_id * (power - static_cast<double>(j) * c);
        power *= k_two_pi;
    }
    return c;
}

/// Precomputed c_k(d) for 0 <= k <= max_k and |d| <= max_abs_d.
class MomentCoefficientTable {
public:
    MomentCoefficientTable(int max_k, int max_abs_d)
        : max_k_(max_k), max_d_(max_abs_d), c_(static_cast<std::size_t>(max_k + 1) *
                                              static_cast<std::size_t>(max_abs_d + 1)) {
        if (max_k < 0 || max_abs_d < 0) throw RangeError("table bounds must be nonnegative");
        for (int k = 0; k <= max_k_; ++k)
            for (int d = 0; d <= max_d_; ++d) c_[slot(k, d)] = moment_coefficient(k, d);
    }

    int max_k() const { return max_k_; }
    int max_abs_d() const { return max_d_; }

    Complex coefficient(int k, long d) const {
        if (k < 0 || k > max_k_ || std::abs(d) > max_d_)
            throw RangeError("moment coefficient outside table bounds");
        if (d < 0) return std::conj(c_[slot(k, -d)]);
        return c_[slot(k, d)];
    }

private:
    std::size_t slot(int k, long d) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(max_d_ + 1) +
               static_cast<std::size_t>(d);
    }

    int max_k_;
    int max_d_;
    std::vector<Complex> c_;
};

/// k-th moment operator F[k], entries G_nm * c_k(n - m). F[0] = I and
/// F[1] = pi I + sum over n != m of G_nm / (i (n - m)) |n><m|.
inline HermitianOperator moment_operator(const PhasePovm& p, int k) {
    const std::size_t n = p.dim();
    ComplexMatrix f(n);
    std::vector<Complex> c(n);
    for (std::size_t d = 0; d < n; ++d) c[d] = moment_coefficient(k, static_cast<long>(d));
    for (std::size_t i = 0; i < n; ++i) {
        f(i, i) = p.gram().entry(i, i) * c[0];
        for (std::size_t j = i + 1; j < n; ++j) {
            f(i, j) = p.gram().entry(i, j) * std::conj(c[j - i]);
            f(j, i) = p.gram().entry(j, i) * c[j - i];
        }
    }
    return HermitianOperator(f);
}

/// Noise operator F[2] - F[1]^2: the excess of the observable's second
/// moment over the square of its first. Positive semidefinite on the
/// truncation because it is a compression of the full-space noise plus a
/// positive tail term.
inline HermitianOperator noise_operator(const PhasePovm& p) {
    const ComplexMatrix f1 = moment_operator(p, 1).matrix();
    const ComplexMatrix f2 = moment_operator(p, 2).matrix();
    return HermitianOperator(f2 - f1 * f1);
}

/// Diagnostics from testing whether a Hermitian operator is the first
/// moment of some covariant phase observable on the given index scheme.
struct FirstMomentCertificate {
    bool ok = false;
    double diagonal_defect = 0.0;  // max |F_nn - pi|
    double modulus_excess = 0.0;   // max over n != m of |G_nm| - 1, clamped at 0
    double min_gram_eigenvalue = 0.0;
    std::string failure;  // empty when ok
};

class RecoveryError : public Error {
public:
    RecoveryError(const std::string& msg, FirstMomentCertificate cert)
        : Error(msg), certificate_(std::move(cert)) {}
    const FirstMomentCertificate& certificate() const { return certificate_; }

private:
    FirstMomentCertificate certificate_;
};

namespace detail {

inline ComplexMatrix candidate_gram(const HermitianOperator& f1) {
    const std::size_t n = f1.dim();
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = Complex(1.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = static_cast<double>(i) - static_cast<double>(j);
            g(i, j) = f1.entry(i, j) * Complex(0.0, d);  // F_nm * i (n - m)
        }
    }
    return g;
}

}  // namespace detail

/// Checks the three recoverability conditions at tolerance tol: diagonal
/// pinned at pi, candidate gram entries within the unit modulus bound, and
/// candidate gram positive semidefinite.
inline FirstMomentCertificate certify_first_moment(const HermitianOperator& f1,
                                                   const Indexing& indexing,
                                                   double tol = 1e-8) {
    FirstMomentCertificate cert;
    if (f1.dim() != indexing.dim())
        throw DimensionError("operator size does not match indexing");
    const std::size_t n = f1.dim();
    for (std::size_t i = 0; i < n; ++i)
        cert.diagonal_defect =
            std::max(cert.diagonal_defect, std::abs(f1.entry(i, i) - Complex(k_pi, 0.0)));
    const ComplexMatrix g = detail::candidate_gram(f1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                cert.modulus_excess = std::max(cert.modulus_excess, std::abs(g(i, j)) - 1.0);
    cert.modulus_excess = std::max(cert.modulus_excess, 0.0);
    const PsdCertificate psd = psd_certify(HermitianOperator(g, 1e-9), tol);
    cert.min_gram_eigenvalue = psd.min_eigenvalue;

    if (cert.diagonal_defect > tol)
        cert.failure = "diagonal is not pinned at pi";
    else if (cert.modulus_excess > tol)
        cert.failure = "candidate gram entry exceeds unit modulus";
    else if (!psd.is_psd)
        cert.failure = "candidate gram is not positive semidefinite";
    cert.ok = cert.failure.empty();
    return cert;
}

/// Inverts the first-moment map: rebuilds the gram matrix whose observable
/// has first moment f1. Throws RecoveryError carrying the certificate when
/// f1 is not a valid first moment at tolerance tol.
inline GramMatrix recover_gram(const HermitianOperator& f1, const Indexing& indexing,
                               double tol = 1e-8) {
    const FirstMomentCertificate cert = certify_first_moment(f1, indexing, tol);
    if (!cert.ok) throw RecoveryError("not a first moment: " + cert.failure, cert);
    return GramMatrix(indexing, HermitianOperator(detail::candidate_gram(f1), 1e-9),
                      tol, tol, tol);
}

/// Concrete generator sequence realizing a gram matrix: vector n is
/// sqrt(lambda_j) times the conjugated eigenvector components, one slot per
/// eigenvalue above the rank cutoff, largest first.
inline std::vector<std::vector<Complex>> extract_generators(const GramMatrix& g) {
    const EigenSystem sys = eigen_hermitian(g.matrix());
    const std::size_t n = g.dim();
    const double cutoff = 1e-10 * static_cast<double>(n);
    std::vector<std::size_t> keep;
    for (std::size_t j = n; j > 0; --j)
        if (sys.values[j - 1] > cutoff) keep.push_back(j - 1);
    std::vector<std::vector<Complex>> vecs(n, std::vector<Complex>(keep.size()));
    for (std::size_t s = 0; s < keep.size(); ++s) {
        const double w = std::sqrt(sys.values[keep[s]]);
        for (std::size_t row = 0; row < n; ++row)
            vecs[row][s] = w * std::conj(sys.vectors(row, keep[s]));
    }
    return vecs;
}

}  // namespace povm
