#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "povm/circle_set.hpp"
#include "povm/eigen.hpp"
#include "povm/gram.hpp"
#include "povm/hermitian.hpp"
#include "povm/matrix.hpp"

namespace povm {

/// Covariant phase observable on a truncated space, determined entirely by
/// its Gram matrix: the effect of an arc set X has entries
/// G_nm * c_X(n - m) with c_X the normalized Fourier coefficient of X.
class PhasePovm {
public:
    explicit PhasePovm(GramMatrix gram) : gram_(std::move(gram)) {}

    const GramMatrix& gram() const { return gram_; }
    const Indexing& indexing() const { return gram_.indexing(); }
    std::size_t dim() const { return gram_.dim(); }

private:
    GramMatrix gram_;
};

namespace detail {

// Fourier coefficients of X for row differences 0..n-1; negative differences
// come from conjugation, which keeps the result Hermitian bit for bit.
inline std::vector<Complex> coefficient_table(const CircleSet& x, std::size_t n) {
    std::vector<Complex> c(n);
    for (std::size_t d = 0; d < n; ++d) c[d] = fourier_coefficient(x, static_cast<long>(d));
    return c;
}

}  // namespace detail

/// Effect operator F(X). PSD with F(empty) = 0 and F(full circle) = I.
inline HermitianOperator povm_value(const PhasePovm& p, const CircleSet& x) {
    const std::size_t n = p.dim();
    const std::vector<Complex> c = detail::coefficient_table(x, n);
    ComplexMatrix f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f(i, i) = p.gram().entry(i, i) * c[0];
        for (std::size_t j = i + 1; j < n; ++j) {
            f(i, j) = p.gram().entry(i, j) * std::conj(c[j - i]);
            f(j, i) = p.gram().entry(j, i) * c[j - i];
        }
    }
    return HermitianOperator(f);
}

/// Norm of e^{ixN} F(X) e^{-ixN} - F(X + x). Zero in exact arithmetic for
/// every gram matrix; the computed value is pure numerical noise.
inline double covariance_defect(const PhasePovm& p, const CircleSet& x, double shift_by) {
    const std::size_t n = p.dim();
    const HermitianOperator fx = povm_value(p, x);
    const HermitianOperator fshift = povm_value(p, shift(x, shift_by));
    std::vector<Complex> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = static_cast<double>(p.indexing().label(i)) * shift_by;
        phase[i] = Complex(std::cos(arg), std::sin(arg));
    }
    ComplexMatrix diff(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            diff(i, j) = phase[i] * fx.entry(i, j) * std::conj(phase[j]) - fshift.entry(i, j);
    return spectral_norm(diff);
}

/// || [F(X), F(Y)] ||. Vanishes identically only for the orthogonal
/// (spectral) gram; any off-diagonal correlation leaves a nonzero value for
/// generic pairs of sets.
inline double commutator_norm(const PhasePovm& p, const CircleSet& x, const CircleSet& y) {
    const ComplexMatrix fx = povm_value(p, x).matrix();
    const ComplexMatrix fy = povm_value(p, y).matrix();
    return spectral_norm(fx * fy - fy * fx);
}

namespace detail {

// k = 1 moment coefficient: pi at difference zero, 1/(i d) otherwise.
inline Complex first_moment_coefficient(long d) {
    if (d == 0) return Complex(k_pi, 0.0);
    return Complex(0.0, -1.0 / static_cast<double>(d));
}

inline ComplexMatrix first_moment_matrix(const PhasePovm& p) {
    const std::size_t n = p.dim();
    ComplexMatrix f(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            f(i, j) = p.gram().entry(i, j) *
                      first_moment_coefficient(static_cast<long>(i) - static_cast<long>(j));
    return f;
}

}  // namespace detail

/// Commutator [F[1], Z] of the first moment with the number operator,
/// defined on the two-sided index scheme only. For the canonical gram every
/// off-diagonal entry equals i, a bounded stand-in for a conjugate pair.
inline ComplexMatrix schrodinger_commutator(const PhasePovm& p) {
    if (p.indexing().kind() != Indexing::Kind::integer)
        throw UnsupportedIndexingError("schrodinger commutator needs the two-sided scheme");
    const std::size_t n = p.dim();
    const ComplexMatrix f1 = detail::first_moment_matrix(p);
    std::vector<double> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<double>(p.indexing().label(i));
    const ComplexMatrix z = ComplexMatrix::diagonal(labels);
    return f1 * z - z * f1;
}

}  // namespace povm
