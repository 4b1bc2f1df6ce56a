#include "algpaths/linalg.hpp"
#include "algpaths/partition.hpp"
#include "algpaths/random_elements.hpp"
#include "algpaths/rng.hpp"
#include "algpaths/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace algpaths;

TEST_CASE("lagrange basis closed forms") {
    const auto basis01 = lagrange_basis({cplx(0.0), cplx(1.0)});
    // p_1 = 1 - x, p_2 = x
    CHECK(std::abs(basis01[0][0] - cplx(1.0)) < 1e-14);
    CHECK(std::abs(basis01[0][1] - cplx(-1.0)) < 1e-14);
    CHECK(std::abs(basis01[1][0]) < 1e-14);
    CHECK(std::abs(basis01[1][1] - cplx(1.0)) < 1e-14);

    const auto basis012 = lagrange_basis({cplx(0.0), cplx(1.0), cplx(2.0)});
    // p_1 = (x-1)(x-2)/2
    CHECK(std::abs(poly_eval(basis012[0], cplx(0.0)) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(poly_eval(basis012[0], cplx(1.0))) < 1e-12);
    CHECK(std::abs(poly_eval(basis012[0], cplx(2.0))) < 1e-12);
    CHECK(std::abs(basis012[0][0] - cplx(1.0)) < 1e-12);
    CHECK(std::abs(basis012[0][1] - cplx(-1.5)) < 1e-12);
    CHECK(std::abs(basis012[0][2] - cplx(0.5)) < 1e-12);
}

TEST_CASE("lagrange delta property and resolution of unity on random roots") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<cplx> roots;
        for (int i = 0; i < n; ++i) roots.push_back(cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        bool separated = true;
        for (int i = 0; i < n && separated; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(roots[i] - roots[j]) < 1e-3) separated = false;
        if (!separated) continue;

        const auto basis = lagrange_basis(roots);
        for (int i = 0; i < n; ++i) {
            CHECK(static_cast<int>(basis[i].size()) == n); // degree exactly n-1
            for (int j = 0; j < n; ++j) {
                const cplx expected = (i == j) ? 1.0 : 0.0;
                CHECK(std::abs(poly_eval(basis[i], roots[j]) - expected) < 1e-10);
            }
        }
        for (int probe = 0; probe < 5; ++probe) {
            const cplx x(rng.uniform(-3, 3), rng.uniform(-3, 3));
            cplx unit = 0.0, ident = 0.0;
            for (int i = 0; i < n; ++i) {
                unit += poly_eval(basis[i], x);
                ident += roots[i] * poly_eval(basis[i], x);
            }
            CHECK(std::abs(unit - cplx(1.0)) < 1e-10);
            CHECK(std::abs(ident - x) < 1e-9);
        }
    }
}

TEST_CASE("duplicate roots are rejected") {
    CHECK_THROWS_AS(lagrange_basis({cplx(0.0), cplx(1.0), cplx(1.0 + 1e-12)}), Error);
    CHECK_THROWS_AS(SpectrumSpec::make({cplx(0.5), cplx(0.5)}), Error);
}

TEST_CASE("decompose on scalar and diagonal elements") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});

    const AlgebraicElement scalar = decompose(ComplexMatrix::zero(3, 3), spec);
    CHECK(operator_norm(scalar.partition.idempotents[0] - ComplexMatrix::identity(3)) < 1e-12);
    CHECK(operator_norm(scalar.partition.idempotents[1]) < 1e-12);

    const AlgebraicElement diag = decompose(ComplexMatrix::diagonal({0.0, 1.0}), spec);
    CHECK(std::abs(diag.partition.idempotents[0](0, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(diag.partition.idempotents[1](1, 1) - cplx(1.0)) < 1e-12);
}

TEST_CASE("decompose matches the conjugated spectral projectors and the contour route") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix s = rng.random_invertible(3, 0.4);
        const ComplexMatrix si = mat_inverse(s);
        const ComplexMatrix a = s * ComplexMatrix::diagonal({0.0, 1.0, 2.0}) * si;
        const AlgebraicElement elem = decompose(a, spec);
        const double scale = spec.membership_scale(operator_norm(a));
        for (int i = 0; i < 3; ++i) {
            ComplexMatrix p(3, 3);
            p(i, i) = 1.0;
            CHECK(operator_norm(elem.partition.idempotents[i] - s * p * si) < 1e-9 * scale);
            CHECK(operator_norm(elem.partition.idempotents[i] - riesz_idempotent(a, i, spec)) <
                  1e-8 * scale);
        }
    }
}

TEST_CASE("decompose rejects non-algebraic input") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    Rng rng(23);
    try {
        decompose(rng.gaussian_matrix(3, 3), spec);
        FAIL("expected NotAlgebraic");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAlgebraic);
    }
}

TEST_CASE("riesz idempotent closed forms") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    const ComplexMatrix a = ComplexMatrix::diagonal({0.0, 1.0});
    const ComplexMatrix e1 = riesz_idempotent(a, 0, spec);
    CHECK(std::abs(e1(0, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(e1(1, 1)) < 1e-12);

    // contour around an empty spectral patch integrates to zero
    const ComplexMatrix b = ComplexMatrix::identity(2); // spectrum {1}
    CHECK(operator_norm(riesz_idempotent(b, 0, spec)) < 1e-12);
}

TEST_CASE("riesz contour touching the spectrum fails loudly") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    // eigenvalue exactly on the radius-1/3 circle about 0
    const ComplexMatrix a = ComplexMatrix::diagonal({1.0 / 3.0, 1.0});
    CHECK_THROWS_AS(riesz_idempotent(a, 0, spec), Error);
}

TEST_CASE("spectrum containment: contours away from the roots capture nothing") {
    const SpectrumSpec small = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    const SpectrumSpec wide = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(5.0)});
    Rng rng(24);
    const auto [a, unused] = random_close_pair(rng, small, {2, 2}, false, 0.1);
    (void)unused;
    CHECK(operator_norm(riesz_idempotent(a, 2, wide)) < 1e-9);
}

TEST_CASE("reconstruct closed forms and round trip") {
    const SpectrumSpec spec01 = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    PartitionOfUnity pou;
    pou.idempotents = {ComplexMatrix::identity(2), ComplexMatrix::zero(2, 2)};
    CHECK(operator_norm(reconstruct(pou, spec01)) < 1e-14); // 0*1 + 1*0

    const SpectrumSpec spec57 = SpectrumSpec::make({cplx(5.0), cplx(7.0)});
    PartitionOfUnity pou2;
    pou2.idempotents = {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})};
    const ComplexMatrix r = reconstruct(pou2, spec57);
    CHECK(std::abs(r(0, 0) - cplx(5.0)) < 1e-14);
    CHECK(std::abs(r(1, 1) - cplx(7.0)) < 1e-14);

    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_algebraic(rng, spec, {2, 1, 1}, false);
        const AlgebraicElement elem = decompose(a, spec);
        CHECK(operator_norm(reconstruct(elem.partition, spec) - a) <
              1e-10 * spec.membership_scale(operator_norm(a)));
    }
}

TEST_CASE("round trip the other way: partitions survive decompose(reconstruct(...))") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(26);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_algebraic(rng, spec, {1, 2, 1}, false);
        const AlgebraicElement elem = decompose(a, spec);
        const ComplexMatrix b = reconstruct(elem.partition, spec);
        const AlgebraicElement elem2 = decompose(b, spec);
        for (int i = 0; i < 3; ++i)
            CHECK(operator_norm(elem2.partition.idempotents[i] - elem.partition.idempotents[i]) < 1e-9);
    }
}

TEST_CASE("reconstruct rejects a broken partition") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    PartitionOfUnity bad;
    bad.idempotents = {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({1.0, 0.0})};
    try {
        reconstruct(bad, spec);
        FAIL("expected InvalidPartition");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidPartition);
    }
}

TEST_CASE("canonicalize drops zeros, sorts, and separates representations") {
    const ComplexMatrix z = ComplexMatrix::zero(2, 2);
    const ComplexMatrix id = ComplexMatrix::identity(2);

    const auto dropped = canonicalize({{cplx(1.0), z}, {cplx(2.0), id}});
    REQUIRE(dropped.size() == 1);
    CHECK(dropped[0].first == cplx(2.0));

    // permuted input sorts to the same list
    const ComplexMatrix p = ComplexMatrix::diagonal({1.0, 0.0});
    const ComplexMatrix q = ComplexMatrix::diagonal({0.0, 1.0});
    const auto sorted1 = canonicalize({{cplx(2.0), q}, {cplx(1.0), p}});
    const auto sorted2 = canonicalize({{cplx(1.0), p}, {cplx(2.0), q}});
    REQUIRE(sorted1.size() == 2);
    for (size_t k = 0; k < 2; ++k) {
        CHECK(sorted1[k].first == sorted2[k].first);
        CHECK(operator_norm(sorted1[k].second - sorted2[k].second) < 1e-14);
    }

    // two representations of diag(0,0,1) with extra zero idempotents
    const ComplexMatrix e = ComplexMatrix::diagonal({1.0, 1.0, 0.0});
    const ComplexMatrix f = ComplexMatrix::diagonal({0.0, 0.0, 1.0});
    const ComplexMatrix z3 = ComplexMatrix::zero(3, 3);
    const auto repr1 = canonicalize({{cplx(0.0), e}, {cplx(1.0), f}, {cplx(7.0), z3}});
    const auto repr2 = canonicalize({{cplx(1.0), f}, {cplx(-3.0), z3}, {cplx(0.0), e}});
    REQUIRE(repr1.size() == repr2.size());
    for (size_t k = 0; k < repr1.size(); ++k) {
        CHECK(std::abs(repr1[k].first - repr2[k].first) < 1e-14);
        CHECK(operator_norm(repr1[k].second - repr2[k].second) < 1e-12);
    }
}

TEST_CASE("self-adjoint mode produces Hermitian idempotents") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(-1.0), cplx(0.0), cplx(1.0)}, true);
    Rng rng(27);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_algebraic(rng, spec, {2, 1, 2}, true);
        const AlgebraicElement elem = decompose(a, spec);
        for (const ComplexMatrix& e : elem.partition.idempotents)
            CHECK(operator_norm(e - e.adjoint()) < 1e-10);
    }
}

TEST_CASE("continuity bound closed forms") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    CHECK(continuity_bound(spec, 1.0, 0.0, 0) == 0.0);
    CHECK(continuity_bound(spec, 1.0, 0.1, 0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("continuity bound dominates measured idempotent drift") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(28);
    int tested = 0;
    for (int trial = 0; trial < 100 && tested < 60; ++trial) {
        auto [a, b] = random_close_pair(rng, spec, {2, 1, 1}, false, 0.3);
        const double eps = operator_norm(b - a);
        if (eps > 1.0 || eps == 0.0) continue;
        ++tested;
        const AlgebraicElement ea = decompose(a, spec);
        const AlgebraicElement eb = decompose(b, spec);
        const double norm_a = operator_norm(a);
        for (int i = 0; i < 3; ++i) {
            const double measured =
                operator_norm(eb.partition.idempotents[i] - ea.partition.idempotents[i]);
            CHECK(measured <= continuity_bound(spec, norm_a, eps, i) + 1e-9);
        }
    }
    CHECK(tested > 0);
}
