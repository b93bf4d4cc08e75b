#include <catch2/catch_amalgamated.hpp>

#include "povm/gram.hpp"
#include "povm/phase_povm.hpp"

#include "support.hpp"

using namespace povm;

TEST_CASE("gram construction validates its invariants") {
    const Indexing idx = Indexing::nat_truncated(2);

    ComplexMatrix bad_diag(2);
    bad_diag(0, 0) = Complex(1.0, 0.0);
    bad_diag(1, 1) = Complex(0.9, 0.0);
    CHECK_THROWS_AS(GramMatrix(idx, HermitianOperator(bad_diag)), ValidationError);

    ComplexMatrix too_big = ComplexMatrix::identity(2);
    too_big(0, 1) = Complex(1.5, 0.0);
    too_big(1, 0) = Complex(1.5, 0.0);
    CHECK_THROWS_AS(GramMatrix(idx, HermitianOperator(too_big)), ValidationError);

    // unit diagonal and bounded entries but indefinite
    ComplexMatrix frustrated = ComplexMatrix::identity(3);
    const double v = 0.9;
    frustrated(0, 1) = frustrated(1, 0) = Complex(v, 0.0);
    frustrated(1, 2) = frustrated(2, 1) = Complex(v, 0.0);
    frustrated(0, 2) = frustrated(2, 0) = Complex(-v, 0.0);
    CHECK_THROWS_AS(GramMatrix(Indexing::nat_truncated(3), HermitianOperator(frustrated)),
                    ValidationError);

    CHECK_THROWS_AS(GramMatrix(Indexing::nat_truncated(3),
                               HermitianOperator(ComplexMatrix::identity(2))),
                    DimensionError);
}

TEST_CASE("generator recipes produce the expected grams") {
    const Indexing idx = Indexing::nat_truncated(3);
    const GramMatrix ones = build_gram(ConstantGenerators{}, idx);
    CHECK(ones.entry(0, 2) == Complex(1.0, 0.0));
    const GramMatrix id = build_gram(OrthogonalGenerators{}, idx);
    CHECK(id.entry(0, 2) == Complex(0.0, 0.0));
    CHECK(id.entry(1, 1) == Complex(1.0, 0.0));

    SECTION("explicit vectors reproduce their inner products") {
        const double r = 1.0 / std::sqrt(2.0);
        ExplicitVectors ev;
        ev.vectors = {{Complex(1, 0), Complex(0, 0)},
                      {Complex(r, 0), Complex(0, r)},
                      {Complex(0, 0), Complex(1, 0)}};
        const GramMatrix g = build_gram(ev, idx);
        CHECK(std::abs(g.entry(0, 1) - Complex(r, 0.0)) < 1e-15);
        CHECK(std::abs(g.entry(1, 2) - Complex(0.0, -r)) < 1e-15);

        ev.vectors[0] = {Complex(2, 0), Complex(0, 0)};  // not unit
        CHECK_THROWS_AS(build_gram(ev, idx), ValidationError);
    }

    SECTION("seeded random grams are reproducible and blend toward identity") {
        const RandomSeeded spec{42, 0.7};
        const GramMatrix a = build_gram(spec, idx);
        const GramMatrix b = build_gram(spec, idx);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(a.entry(i, j) == b.entry(i, j));
        const GramMatrix pure = build_gram(RandomSeeded{42, 0.0}, idx);
        CHECK((pure.matrix().matrix() - ComplexMatrix::identity(3)).max_abs() == 0.0);
        CHECK_THROWS_AS(build_gram(RandomSeeded{1, 1.5}, idx), RangeError);
    }
}

TEST_CASE("effect operators: known 2x2 entries and global normalization") {
    const PhasePovm p(build_gram(ConstantGenerators{}, Indexing::nat_truncated(2)));
    const CircleSet half = normalize({{0.0, k_pi}});
    const HermitianOperator f = povm_value(p, half);
    CHECK(f.entry(0, 0) == Complex(0.5, 0.0));
    CHECK(f.entry(1, 1) == Complex(0.5, 0.0));
    // entry (0,1) carries c_X(0-1) = conj(i/pi) = -i/pi
    CHECK(std::abs(f.entry(0, 1) - Complex(0.0, -1.0 / k_pi)) < 1e-15);
    CHECK(std::abs(f.entry(1, 0) - Complex(0.0, 1.0 / k_pi)) < 1e-15);

    CHECK(povm_value(p, CircleSet()).matrix().max_abs() == 0.0);
    CHECK((povm_value(p, CircleSet::full()).matrix() - ComplexMatrix::identity(2)).max_abs() <
          1e-15);
}

TEST_CASE("effects are psd and complementary across the whole gram family") {
    Rng rng(7);
    auto cases = testsupport::preset_grams();
    auto randoms = testsupport::random_gram_family(6);
    cases.insert(cases.end(), randoms.begin(), randoms.end());
    for (const auto& gc : cases) {
        const PhasePovm p(gc.gram);
        for (int trial = 0; trial < 3; ++trial) {
            const CircleSet x = testsupport::random_circle_set(rng);
            const HermitianOperator f = povm_value(p, x);
            INFO(gc.name);
            CHECK(psd_certify(f, 1e-10).is_psd);
            const HermitianOperator fc = povm_value(p, x.complement());
            CHECK((f.matrix() + fc.matrix() - ComplexMatrix::identity(p.dim())).max_abs() <
                  1e-13);
        }
    }
}

TEST_CASE("covariance defect is numerical noise for every gram") {
    Rng rng(13);
    auto cases = testsupport::preset_grams();
    auto randoms = testsupport::random_gram_family(4);
    cases.insert(cases.end(), randoms.begin(), randoms.end());
    for (const auto& gc : cases) {
        const PhasePovm p(gc.gram);
        const CircleSet x = testsupport::random_circle_set(rng);
        const double s = (rng.uniform() - 0.5) * 20.0;
        INFO(gc.name);
        CHECK(covariance_defect(p, x, s) < 1e-12);
    }
}

TEST_CASE("commutator norm separates correlated from orthogonal grams") {
    const CircleSet x = normalize({{0.0, k_pi}});
    const CircleSet y = normalize({{k_pi / 2, 3 * k_pi / 2}});

    const PhasePovm ortho(build_gram(OrthogonalGenerators{}, Indexing::nat_truncated(4)));
    CHECK(commutator_norm(ortho, x, y) < 1e-13);

    const PhasePovm canon(build_gram(ConstantGenerators{}, Indexing::nat_truncated(4)));
    const double norm = commutator_norm(canon, x, y);
    CHECK(norm > 1e-3);
    // frozen regression value
    CHECK(norm == Catch::Approx(0.1801265486974894).margin(1e-9));
}

TEST_CASE("first moment commutes with the number operator like a conjugate pair") {
    const PhasePovm p(build_gram(ConstantGenerators{}, Indexing::int_truncated(3)));
    const ComplexMatrix c = schrodinger_commutator(p);
    for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = 0; j < c.dim(); ++j) {
            const Complex expected = (i == j) ? Complex(0.0, 0.0) : Complex(0.0, 1.0);
            CHECK(std::abs(c(i, j) - expected) < 1e-12);
        }

    const PhasePovm nat(build_gram(ConstantGenerators{}, Indexing::nat_truncated(3)));
    CHECK_THROWS_AS(schrodinger_commutator(nat), UnsupportedIndexingError);
}

TEST_CASE("index schemes label rows as documented") {
    const Indexing nat = Indexing::nat_truncated(4);
    CHECK(nat.dim() == 4);
    CHECK(nat.label(0) == 0);
    CHECK(nat.label(3) == 3);
    const Indexing two = Indexing::int_truncated(2);
    CHECK(two.dim() == 5);
    CHECK(two.label(0) == -2);
    CHECK(two.label(4) == 2);
    CHECK_THROWS_AS(Indexing::nat_truncated(0), RangeError);
    CHECK_THROWS_AS(Indexing::int_truncated(-1), RangeError);
}
