#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "povm/errors.hpp"
#include "povm/matrix.hpp"

namespace povm {

/// max |a_ij - conj(a_ji)| over all pairs.
inline double hermiticity_defect(const ComplexMatrix& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

/// A matrix that is Hermitian by construction: the input is checked against
/// a defect tolerance, then symmetrized, so stored entries satisfy
/// a_ij == conj(a_ji) exactly and the diagonal is real.
class HermitianOperator {
public:
    HermitianOperator() = default;

    explicit HermitianOperator(const ComplexMatrix& m, double tol = 1e-12) : m_(m.dim()) {
        const double defect = hermiticity_defect(m);
        if (defect > tol)
            throw ValidationError("hermiticity defect " + std::to_string(defect) +
                                  " exceeds tolerance");
        for (std::size_t i = 0; i < m.dim(); ++i) {
            m_(i, i) = Complex(m(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < m.dim(); ++j) {
                const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m_(i, j) = v;
                m_(j, i) = std::conj(v);
            }
        }
    }

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& entry(std::size_t i, std::size_t j) const { return m_(i, j); }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
        return t;
    }

private:
    ComplexMatrix m_;
};

inline HermitianOperator hadamard(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(entrywise_product(a.matrix(), b.matrix()));
}

/// Unit vector in C^n. Normalized at construction; rejects the zero vector.
class StateVector {
public:
    explicit StateVector(std::vector<Complex> amp) : amp_(std::move(amp)) {
        if (amp_.empty()) throw ValidationError("state vector is empty");
        double n2 = 0.0;
        for (const auto& c : amp_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw ValidationError("state vector has non-finite component");
            n2 += std::norm(c);
        }
        if (n2 <= 0.0) throw ValidationError("state vector is zero");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : amp_) c *= inv;
    }

    std::size_t dim() const { return amp_.size(); }
    const Complex& amplitude(std::size_t i) const { return amp_[i]; }
    const std::vector<Complex>& amplitudes() const { return amp_; }

private:
    std::vector<Complex> amp_;
};

/// <phi| A |phi>. Real for Hermitian A up to roundoff; the real part is
/// returned and the imaginary dust discarded.
inline double expectation(const HermitianOperator& a, const StateVector& phi) {
    if (a.dim() != phi.dim()) throw DimensionError("operator/state dimension mismatch");
    const std::vector<Complex> y = a.matrix().apply(phi.amplitudes());
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) acc += std::conj(phi.amplitude(i)) * y[i];
    return acc.real();
}

}  // namespace povm
