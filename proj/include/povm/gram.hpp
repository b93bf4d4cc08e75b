#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "povm/eigen.hpp"
#include "povm/errors.hpp"
#include "povm/hermitian.hpp"
#include "povm/indexing.hpp"
#include "povm/matrix.hpp"
#include "povm/rng.hpp"

namespace povm {

/// Gram matrix of a generator sequence: the complete invariant of a
/// covariant phase observable. Unit diagonal, positive semidefinite,
/// entries bounded by 1 in modulus; all three are validated at
/// construction against explicit tolerances.
class GramMatrix {
public:
    GramMatrix(Indexing indexing, const HermitianOperator& g,
               double diag_tol = 1e-12, double psd_tol = 1e-10, double bound_tol = 1e-12)
        : indexing_(indexing), g_(g) {
        if (g_.dim() != indexing_.dim())
            throw DimensionError("gram matrix size does not match indexing");
        for (std::size_t i = 0; i < g_.dim(); ++i) {
            if (std::abs(g_.entry(i, i) - Complex(1.0, 0.0)) > diag_tol)
                throw ValidationError("gram diagonal entry " + std::to_string(i) +
                                      " is not 1");
            for (std::size_t j = i + 1; j < g_.dim(); ++j) {
                if (std::abs(g_.entry(i, j)) > 1.0 + bound_tol)
                    throw ValidationError("gram entry exceeds unit modulus bound");
            }
        }
        const PsdCertificate cert = psd_certify(g_, psd_tol);
        if (!cert.is_psd)
            throw ValidationError("gram matrix is not positive semidefinite: min eigenvalue " +
                                  std::to_string(cert.min_eigenvalue));
    }

    const Indexing& indexing() const { return indexing_; }
    const HermitianOperator& matrix() const { return g_; }
    std::size_t dim() const { return g_.dim(); }
    const Complex& entry(std::size_t i, std::size_t j) const { return g_.entry(i, j); }

private:
    Indexing indexing_;
    HermitianOperator g_;
};

// Generator recipes. "constant" is the canonical observable (all inner
// products 1), "orthogonal" the spectral one (Kronecker delta); the others
// supply data or draw it reproducibly from a seed.
struct ConstantGenerators {};
struct OrthogonalGenerators {};
struct ExplicitGram {
    ComplexMatrix matrix;
};
struct ExplicitVectors {
    std::vector<std::vector<Complex>> vectors;  // unit vectors, common ambient length
};
struct RandomSeeded {
    std::uint64_t seed = 0;
    double blend = 1.0;  // 0 = orthogonal, 1 = full random correlation
};

using GeneratorSpec =
    std::variant<ConstantGenerators, OrthogonalGenerators, ExplicitGram, ExplicitVectors,
                 RandomSeeded>;

namespace detail {

inline HermitianOperator random_correlation(std::size_t n, std::uint64_t seed, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("blend parameter must lie in [0, 1]");
    Rng rng(seed);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.uniform_pm1();
            const double im = rng.uniform_pm1();
            m(i, j) = Complex(re, im);
        }
    ComplexMatrix h = m * m.adjoint();
    for (std::size_t i = 0; i < n; ++i) h(i, i) += Complex(1e-6, 0.0);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = h(i, i).real();
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = Complex(1.0, 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex r = h(i, j) / std::sqrt(d[i] * d[j]);
            const Complex blended = t * r;  // identity part is zero off the diagonal
            g(i, j) = blended;
            g(j, i) = std::conj(blended);
        }
    }
    return HermitianOperator(g);
}

}  // namespace detail

inline GramMatrix build_gram(const GeneratorSpec& spec, const Indexing& indexing) {
    const std::size_t n = indexing.dim();
    return std::visit(
        [&](const auto& s) -> GramMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantGenerators>) {
                return GramMatrix(indexing, HermitianOperator(ComplexMatrix::ones(n)));
            } else if constexpr (std::is_same_v<T, OrthogonalGenerators>) {
                return GramMatrix(indexing, HermitianOperator(ComplexMatrix::identity(n)));
            } else if constexpr (std::is_same_v<T, ExplicitGram>) {
                return GramMatrix(indexing, HermitianOperator(s.matrix));
            } else if constexpr (std::is_same_v<T, ExplicitVectors>) {
                if (s.vectors.size() != n)
                    throw DimensionError("generator count does not match indexing");
                const std::size_t amb = s.vectors.empty() ? 0 : s.vectors.front().size();
                for (const auto& v : s.vectors) {
                    if (v.size() != amb)
                        throw DimensionError("generator vectors have mixed lengths");
                    double n2 = 0.0;
                    for (const auto& c : v) n2 += std::norm(c);
                    if (std::abs(n2 - 1.0) > 1e-12)
                        throw ValidationError("generator vector is not unit norm");
                }
                ComplexMatrix g(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        Complex acc(0.0, 0.0);
                        for (std::size_t k = 0; k < amb; ++k)
                            acc += std::conj(s.vectors[i][k]) * s.vectors[j][k];
                        g(i, j) = acc;
                    }
                return GramMatrix(indexing, HermitianOperator(g, 1e-10));
            } else {
                static_assert(std::is_same_v<T, RandomSeeded>);
                return GramMatrix(indexing, detail::random_correlation(n, s.seed, s.blend));
            }
        },
        spec);
}

}  // namespace povm
