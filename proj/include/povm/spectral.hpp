#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "povm/circle_set.hpp"
#include "povm/eigen.hpp"
#include "povm/errors.hpp"
#include "povm/hermitian.hpp"
#include "povm/moments.hpp"
#include "povm/phase_povm.hpp"
#include "povm/real_set.hpp"

namespace povm {

/// Projection-valued measure of a Hermitian operator, concentrated on its
/// eigenvalue clusters. value(X) sums the projections of clusters falling
/// in X; it is idempotent and multiplicative by construction.
class BinnedSpectralMeasure {
public:
    explicit BinnedSpectralMeasure(const HermitianOperator& source, double cluster_tol = -1.0)
        : source_(source), dec_(eigendecompose(source, cluster_tol)) {
        // Reassembly check: sum lambda_j P_j must return the source.
        ComplexMatrix acc(source.dim());
        for (std::size_t j = 0; j < dec_.eigenvalues.size(); ++j) {
            ComplexMatrix term = dec_.projections[j].matrix();
            term *= Complex(dec_.eigenvalues[j], 0.0);
            acc += term;
        }
        acc -= source.matrix();
        const double defect = acc.max_abs();
        if (defect > 1e-9 * std::max(1.0, source.matrix().max_abs()))
            throw EigenError("spectral reassembly defect " + std::to_string(defect), defect);
    }

    const HermitianOperator& source() const { return source_; }
    std::size_t dim() const { return source_.dim(); }
    const std::vector<double>& eigenvalues() const { return dec_.eigenvalues; }
    const std::vector<HermitianOperator>& projections() const { return dec_.projections; }
    double spectrum_min() const { return dec_.eigenvalues.front(); }
    double spectrum_max() const { return dec_.eigenvalues.back(); }

    HermitianOperator value(const RealSet& x) const {
        ComplexMatrix acc(dim());
        for (std::size_t j = 0; j < dec_.eigenvalues.size(); ++j)
            if (x.contains(dec_.eigenvalues[j])) acc += dec_.projections[j].matrix();
        return HermitianOperator(acc);
    }

private:
    HermitianOperator source_;
    SpectralDecomposition dec_;
};

inline BinnedSpectralMeasure spectral_measure(const HermitianOperator& a,
                                              double cluster_tol = -1.0) {
    return BinnedSpectralMeasure(a, cluster_tol);
}

/// || E(X) E(Y) - E(X intersect Y) ||. Zero up to solver noise for any
/// spectral measure; the analogous quantity for a non-orthogonal observable
/// is order one.
inline double multiplicativity_defect(const BinnedSpectralMeasure& e, const RealSet& x,
                                      const RealSet& y) {
    const ComplexMatrix ex = e.value(x).matrix();
    const ComplexMatrix ey = e.value(y).matrix();
    const ComplexMatrix exy = e.value(intersect(x, y)).matrix();
    return spectral_norm(ex * ey - exy);
}

/// Outcome probabilities of a phase observable over a partition of the
/// circle. The cells must tile the full circle up to measure 1e-9.
inline std::vector<double> distribution(const PhasePovm& p, const StateVector& phi,
                                        const std::vector<CircleSet>& partition) {
    if (phi.dim() != p.dim()) throw DimensionError("state dimension mismatch");
    CircleSet whole;
    double total = 0.0;
    for (const auto& cell : partition) {
        whole = unite(whole, cell);
        total += cell.measure();
    }
    if (std::abs(total - k_two_pi) > 1e-9 || std::abs(whole.measure() - k_two_pi) > 1e-9)
        throw PreconditionError("cells do not partition the circle");
    std::vector<double> probs;
    probs.reserve(partition.size());
    for (const auto& cell : partition) probs.push_back(expectation(povm_value(p, cell), phi));
    return probs;
}

/// Outcome probabilities of a binned spectral measure over a partition of
/// the line. Cells must be pairwise disjoint and jointly cover every
/// eigenvalue exactly once.
inline std::vector<double> distribution(const BinnedSpectralMeasure& e, const StateVector& phi,
                                        const std::vector<RealSet>& partition) {
    if (phi.dim() != e.dim()) throw DimensionError("state dimension mismatch");
    for (std::size_t i = 0; i < partition.size(); ++i)
        for (std::size_t j = i + 1; j < partition.size(); ++j)
            if (intersect(partition[i], partition[j]).measure() > 0.0)
                throw PreconditionError("partition cells overlap");
    for (double lam : e.eigenvalues()) {
        int hits = 0;
        for (const auto& cell : partition) hits += cell.contains(lam) ? 1 : 0;
        if (hits != 1)
            throw PreconditionError("partition does not cover eigenvalue " +
                                    std::to_string(lam));
    }
    std::vector<double> probs;
    probs.reserve(partition.size());
    for (const auto& cell : partition) probs.push_back(expectation(e.value(cell), phi));
    return probs;
}

/// First and second moment statistics of a phase observable in a state,
/// alongside the sharp variance of its first-moment operator. The noise
/// term is evaluated through the noise operator, a distinct route from
/// var_povm - var_spectral, so the additivity residual is informative.
struct VarianceReport {
    double mean = 0.0;          // <phi| F[1] |phi>
    double var_povm = 0.0;      // <phi| F[2] |phi> - mean^2
    double var_spectral = 0.0;  // <phi| F[1]^2 |phi> - mean^2
    double noise = 0.0;         // <phi| F[2] - F[1]^2 |phi>
};

inline VarianceReport variance_report(const PhasePovm& p, const StateVector& phi) {
    if (phi.dim() != p.dim()) throw DimensionError("state dimension mismatch");
    const HermitianOperator f1 = moment_operator(p, 1);
    const HermitianOperator f2 = moment_operator(p, 2);
    VarianceReport rep;
    rep.mean = expectation(f1, phi);
    rep.var_povm = expectation(f2, phi) - rep.mean * rep.mean;
    const std::vector<Complex> w = f1.matrix().apply(phi.amplitudes());
    double second_sharp = 0.0;
    for (const auto& c : w) second_sharp += std::norm(c);
    rep.var_spectral = second_sharp - rep.mean * rep.mean;
    rep.noise = expectation(noise_operator(p), phi);
    return rep;
}

/// Mean of the binned spectral measure: sum of lambda_j <phi| P_j |phi>.
/// Agrees with <phi| A |phi> up to solver noise.
inline double spectral_mean(const BinnedSpectralMeasure& e, const StateVector& phi) {
    double m = 0.0;
    for (std::size_t j = 0; j < e.eigenvalues().size(); ++j)
        m += e.eigenvalues()[j] * expectation(e.projections()[j], phi);
    return m;
}

/// Spectrum of the first-moment operator against the outcome range of the
/// observable itself, which always occupies the full circle.
struct SupportComparison {
    double spectrum_min = 0.0;
    double spectrum_max = 0.0;
    double support_min = 0.0;   // outcome support of the phase observable
    double support_max = k_two_pi;
    bool inclusion_ok = false;  // spectrum inside [0, 2*pi] up to 1e-9
};

inline SupportComparison support_compare(const PhasePovm& p) {
    const EigenSystem sys = eigen_hermitian(moment_operator(p, 1));
    SupportComparison cmp;
    cmp.spectrum_min = sys.values.front();
    cmp.spectrum_max = sys.values.back();
    cmp.inclusion_ok = cmp.spectrum_min >= -1e-9 && cmp.spectrum_max <= k_two_pi + 1e-9;
    return cmp;
}

/// || F(X)^2 - F(X) || restricted to the central window rows and columns.
/// Zero only for projection-valued effects; on the one-sided truncation the
/// canonical observable keeps a defect of order one even far from the
/// truncation edge, while the two-sided one loses it as the order grows.
inline double idempotence_defect(const PhasePovm& p, const CircleSet& x, std::size_t window) {
    const std::size_t n = p.dim();
    if (window < 1 || window > n) throw RangeError("window must lie in 1..dim");
    const ComplexMatrix f = povm_value(p, x).matrix();
    const ComplexMatrix m = f * f - f;
    const std::size_t start = (n - window) / 2;
    ComplexMatrix sub(window);
    for (std::size_t i = 0; i < window; ++i)
        for (std::size_t j = 0; j < window; ++j) sub(i, j) = m(start + i, start + j);
    return spectral_norm(sub);
}

/// Covariance defect of the spectral measure of F[1], transported to the
/// circle: || e^{ixN} E(X) e^{-ixN} - E(X + x) ||. Unlike the observable's
/// own defect this is generically order one: the spectral measure of the
/// first moment is not covariant.
inline double spectral_covariance_defect(const PhasePovm& p, const CircleSet& x,
                                         double shift_by) {
    const std::size_t n = p.dim();
    const BinnedSpectralMeasure e(moment_operator(p, 1));
    const HermitianOperator ex = e.value(to_real(x));
    const HermitianOperator eshift = e.value(to_real(shift(x, shift_by)));
    std::vector<Complex> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = static_cast<double>(p.indexing().label(i)) * shift_by;
        phase[i] = Complex(std::cos(arg), std::sin(arg));
    }
    ComplexMatrix diff(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            diff(i, j) = phase[i] * ex.entry(i, j) * std::conj(phase[j]) - eshift.entry(i, j);
    return spectral_norm(diff);
}

}  // namespace povm
