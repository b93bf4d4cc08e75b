#pragma once

#include <string>
#include <utility>
#include <vector>

#include "povm/povm.hpp"

namespace povm::testsupport {

inline StateVector random_state(std::size_t dim, Rng& rng) {
    std::vector<Complex> amp(dim);
    for (auto& c : amp) {
        const double re = rng.uniform_pm1();
        const double im = rng.uniform_pm1();
        c = Complex(re, im);
    }
    return StateVector(std::move(amp));
}

/// 1 to 3 raw endpoint pairs anywhere on the circle; reversed pairs
/// exercise the wrap-around path.
inline CircleSet random_circle_set(Rng& rng) {
    const int pieces = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<std::pair<double, double>> raw;
    for (int i = 0; i < pieces; ++i)
        raw.emplace_back(rng.uniform() * k_two_pi, rng.uniform() * k_two_pi);
    return normalize(raw);
}

struct GramCase {
    std::string name;
    GramMatrix gram;
};

/// The three generator presets on each index scheme at small, medium, and
/// large size. Two-sided orders 1/4/16 give dimensions 3/9/33, the closest
/// odd matches to the one-sided 2/8/32.
inline std::vector<GramCase> preset_grams() {
    std::vector<GramCase> cases;
    for (long d : {2L, 8L, 32L}) {
        const Indexing idx = Indexing::nat_truncated(d);
        cases.push_back({"constant nat " + std::to_string(d),
                         build_gram(ConstantGenerators{}, idx)});
        cases.push_back({"orthogonal nat " + std::to_string(d),
                         build_gram(OrthogonalGenerators{}, idx)});
    }
    for (long order : {1L, 4L, 16L}) {
        const Indexing idx = Indexing::int_truncated(order);
        cases.push_back({"constant int " + std::to_string(order),
                         build_gram(ConstantGenerators{}, idx)});
    }
    return cases;
}

/// count seeded random grams cycling through both index schemes, the three
/// sizes, and blend values spanning [0, 1] (including both endpoints, so
/// the family contains exactly orthogonal members and fully correlated
/// ones).
inline std::vector<GramCase> random_gram_family(std::size_t count) {
    const double blends[5] = {0.0, 0.3, 0.6, 0.9, 1.0};
    const long nat_dims[3] = {2, 8, 32};
    const long int_orders[3] = {1, 4, 16};
    std::vector<GramCase> cases;
    for (std::size_t i = 0; i < count; ++i) {
        const Indexing idx = (i % 2 == 0)
                                 ? Indexing::nat_truncated(nat_dims[(i / 2) % 3])
                                 : Indexing::int_truncated(int_orders[(i / 2) % 3]);
        RandomSeeded spec{static_cast<std::uint64_t>(i + 1), blends[i % 5]};
        cases.push_back({"random seed " + std::to_string(i + 1) + " blend " +
                             std::to_string(blends[i % 5]) + " " + idx.describe(),
                         build_gram(spec, idx)});
    }
    return cases;
}

}  // namespace povm::testsupport
