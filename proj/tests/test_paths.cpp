#include "algpaths/linalg.hpp"
#include "algpaths/paths.hpp"
#include "algpaths/random_elements.hpp"
#include "algpaths/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace algpaths;

namespace {

ComplexMatrix proj2(double a00, double a01) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a00;
    m(0, 1) = a01;
    return m;
}

AlgebraicElement elem_of(const ComplexMatrix& m, const SpectrumSpec& spec) {
    return decompose(m, spec);
}

} // namespace

TEST_CASE("kovarik element closed forms") {
    Rng rng(31);
    const ComplexMatrix u = rng.random_unitary(3);
    ComplexMatrix p(3, 3);
    p(0, 0) = p(1, 1) = 1.0;
    const ComplexMatrix e = u * p * u.adjoint();
    CHECK(operator_norm(kovarik_element(e, e) - e) < 1e-12);

    // (e0 + e1 - 1)^2 = 1 for this pair, so g evaluates by hand
    const ComplexMatrix e0 = proj2(1.0, 0.0);
    const ComplexMatrix e1 = proj2(1.0, 0.3);
    const ComplexMatrix g = kovarik_element(e0, e1);
    CHECK(operator_norm(g - e0) < 1e-13);
}

TEST_CASE("kovarik relations on random close pairs") {
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        auto [e0, e1] = random_projection_pair(rng, 4, 2, trial % 2 == 0, 0.4);
        const ComplexMatrix g = kovarik_element(e0, e1);
        CHECK(operator_norm(e1 * g - g) < 1e-10);
        CHECK(operator_norm(g * e1 - e1) < 1e-10);
        CHECK(operator_norm(e0 * g - e0) < 1e-10);
        CHECK(operator_norm(g * e0 - g) < 1e-10);
        CHECK(operator_norm(g * g - g) < 1e-10);
    }
}

TEST_CASE("kovarik element rejects bad input") {
    try {
        kovarik_element(proj2(0.5, 0.5), proj2(1.0, 0.0)); // first argument not idempotent
        FAIL("expected NotIdempotent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIdempotent);
    }
    try {
        kovarik_element(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
        FAIL("expected TooFar");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooFar);
    }
}

TEST_CASE("two segment path stays idempotent") {
    Rng rng(33);
    const ComplexMatrix e0 = proj2(1.0, 0.0);
    const ComplexMatrix e1 = proj2(1.0, 0.3);

    PiecewisePath path = two_segment_path(e0, e1);
    REQUIRE(path.segments.size() == 2);
    CHECK(operator_norm(path.start() - e0) < 1e-14);
    CHECK(operator_norm(path.end() - e1) < 1e-14);
    // midpoint of the first segment
    const ComplexMatrix mid = path.segments[0].eval(0.5);
    CHECK(operator_norm(mid * mid - mid) < 1e-12);

    // constant when endpoints agree
    PiecewisePath still = two_segment_path(e0, e0);
    CHECK(operator_norm(still.eval(0.37) - e0) < 1e-12);

    for (int trial = 0; trial < 10; ++trial) {
        auto [f0, f1] = random_projection_pair(rng, 5, 2, false, 0.5);
        CHECK(two_segment_path(f0, f1).worst_membership() < 1e-9);
    }
}

TEST_CASE("idempotent similarity conjugates and tends to the identity") {
    const ComplexMatrix e0 = proj2(1.0, 0.0);
    const ComplexMatrix e1 = proj2(1.0, 0.4);
    const ComplexMatrix u = idempotent_similarity(e0, e1);
    CHECK(std::abs(u(0, 0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(u(0, 1) - cplx(-0.4)) < 1e-14);
    CHECK(std::abs(u(1, 1) - cplx(1.0)) < 1e-14);
    CHECK(operator_norm(u * e0 - e1 * u) < 1e-13);

    CHECK(operator_norm(idempotent_similarity(e0, e0) - ComplexMatrix::identity(2)) < 1e-13);

    Rng rng(34);
    double prev = 2.0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
        auto [f0, f1] = random_projection_pair(rng, 4, 2, false, gap);
        const ComplexMatrix w = idempotent_similarity(f0, f1);
        const double dist = operator_norm(shift(w, cplx(1.0)));
        CHECK(operator_norm(w * f0 * mat_inverse(w) - f1) < 1e-9);
        CHECK(dist < prev);
        prev = dist;
    }
}

TEST_CASE("square-zero generators and their relations") {
    const ComplexMatrix e0 = proj2(1.0, 0.0);
    const ComplexMatrix e1 = proj2(1.0, 0.3);
    const NilpotentPair same = nilpotent_generators(e0, e0);
    CHECK(operator_norm(same.d) < 1e-13);
    CHECK(operator_norm(same.d_prime) < 1e-13);

    const NilpotentPair pair = nilpotent_generators(e0, e1);
    CHECK(operator_norm(pair.d) < 1e-13); // g = e0 here
    CHECK(std::abs(pair.d_prime(0, 1) - cplx(-0.3)) < 1e-13);
    CHECK(operator_norm(pair.d_prime * pair.d_prime) < 1e-14);

    Rng rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        auto [f0, f1] = random_projection_pair(rng, 4, 2, false, 0.4);
        const NilpotentPair g = nilpotent_generators(f0, f1);
        CHECK(operator_norm(g.d * g.d) < 1e-10);
        CHECK(operator_norm(g.d_prime * g.d_prime) < 1e-10);
        // relations feeding the similarity identity
        CHECK(operator_norm(g.d * f0 - g.d) < 1e-10);
        CHECK(operator_norm(f0 * g.d) < 1e-10);
        CHECK(operator_norm(g.d_prime * f1) < 1e-10);
        CHECK(operator_norm(f1 * g.d_prime - g.d_prime) < 1e-10);
        // (1 + d')(1 + d) e0 (1 - d)(1 - d') = e1
        const ComplexMatrix id = ComplexMatrix::identity(4);
        const ComplexMatrix conj =
            (id + g.d_prime) * (id + g.d) * f0 * (id - g.d) * (id - g.d_prime);
        CHECK(operator_norm(conj - f1) < 1e-9);
    }
}

TEST_CASE("ep similarity: identity, conjugates, and the two-root reduction") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    const ComplexMatrix a = ComplexMatrix::diagonal({0.0, 1.0, 2.0});
    const AlgebraicElement ea = elem_of(a, spec);

    SimilarityCertificate same = ep_similarity(ea, ea);
    CHECK(operator_norm(same.s - ComplexMatrix::identity(3)) < 1e-12);
    REQUIRE(same.has_generators());
    CHECK(operator_norm(same.generators[0]) < 1e-12);

    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        auto [m0, m1] = random_close_pair(rng, spec, {1, 1, 1}, false, 0.05);
        const SimilarityCertificate cert = ep_similarity(elem_of(m0, spec), elem_of(m1, spec));
        CHECK(operator_norm(cert.s * cert.s_inverse - ComplexMatrix::identity(3)) < 1e-9);
        CHECK(operator_norm(cert.s_inverse * m0 * cert.s - m1) < 1e-9);
        if (cert.has_generators())
            CHECK(operator_norm(mat_exp(cert.generators[0]) - cert.s) < 1e-9);
    }

    // two roots: the similarity is the affine pullback of the idempotent one
    const SpectrumSpec spec2 = SpectrumSpec::make({cplx(3.0), cplx(7.0)});
    auto [m0, m1] = random_close_pair(rng, spec2, {2, 2}, false, 0.3);
    const AlgebraicElement e0 = elem_of(m0, spec2);
    const AlgebraicElement e1 = elem_of(m1, spec2);
    const SimilarityCertificate cert = ep_similarity(e0, e1);
    // idempotent coordinates: e = (a - 3)/4
    const ComplexMatrix p0 = shift(m0, cplx(3.0)) * cplx(0.25);
    const ComplexMatrix p1 = shift(m1, cplx(3.0)) * cplx(0.25);
    const ComplexMatrix u = idempotent_similarity(p0, p1);
    CHECK(operator_norm(cert.s - mat_inverse(u)) < 1e-9);
}

TEST_CASE("ep similarity rejects distant pairs") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    const AlgebraicElement a0 = elem_of(ComplexMatrix::diagonal({0.0, 1.0}), spec);
    const AlgebraicElement a1 = elem_of(ComplexMatrix::diagonal({1.0, 0.0}), spec);
    try {
        ep_similarity(a0, a1);
        FAIL("expected TooFar");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooFar);
    }
}

TEST_CASE("exp path: constant, endpoint, and membership") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    const ComplexMatrix a = ComplexMatrix::diagonal({0.0, 1.0, 2.0});

    SimilarityCertificate trivial;
    trivial.s = ComplexMatrix::identity(3);
    trivial.s_inverse = ComplexMatrix::identity(3);
    trivial.generators = {ComplexMatrix::zero(3, 3)};
    PiecewisePath constant = exp_path(a, trivial, spec);
    CHECK(operator_norm(constant.eval(0.6) - a) < 1e-12);

    Rng rng(37);
    auto [m0, m1] = random_close_pair(rng, spec, {1, 1, 1}, false, 0.05);
    const SimilarityCertificate cert = ep_similarity(elem_of(m0, spec), elem_of(m1, spec));
    REQUIRE(cert.has_generators());
    PiecewisePath path = exp_path(m0, cert, spec);
    CHECK(operator_norm(path.start() - m0) < 1e-10);
    CHECK(operator_norm(path.end() - m1) < 1e-9);
    CHECK(path.worst_membership() < 1e-9 * spec.membership_scale(operator_norm(m0)));

    SimilarityCertificate empty;
    empty.s = cert.s;
    empty.s_inverse = cert.s_inverse;
    try {
        exp_path(m0, empty, spec);
        FAIL("expected LogOutOfDomain");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LogOutOfDomain);
    }
}

TEST_CASE("square-zero product path: constant, two-root assertion, endpoint for three roots") {
    const SpectrumSpec spec2 = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    Rng rng(38);

    const ComplexMatrix a = random_algebraic(rng, spec2, {2, 2}, false);
    const AlgebraicElement ea = elem_of(a, spec2);
    PiecewisePath constant = esterle_candidate_path(ea, ea);
    CHECK(operator_norm(constant.eval(0.5) - a) < 1e-10);
    CHECK(constant.worst_membership() < 1e-10);

    for (int trial = 0; trial < 10; ++trial) {
        auto [m0, m1] = random_close_pair(rng, spec2, {2, 2}, false, 0.3);
        PiecewisePath path = esterle_candidate_path(elem_of(m0, spec2), elem_of(m1, spec2));
        CHECK(path.worst_membership() < 1e-9 * spec2.membership_scale(operator_norm(m0)));
        CHECK(operator_norm(path.end() - m1) < 1e-9);
    }

    const SpectrumSpec spec3 = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    auto [m0, m1] = random_close_pair(rng, spec3, {2, 1, 1}, false, 0.05);
    PiecewisePath candidate = esterle_candidate_path(elem_of(m0, spec3), elem_of(m1, spec3));
    CHECK(operator_norm(candidate.end() - m1) < 1e-8);
    CHECK(candidate.grid_residuals.size() == 1); // measured, not asserted
}

TEST_CASE("polygonal ladder: trivial, two-root, and three-root cases") {
    Rng rng(39);

    const SpectrumSpec spec3 = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    const ComplexMatrix a = random_algebraic(rng, spec3, {2, 2, 1}, false);
    const AlgebraicElement ea = elem_of(a, spec3);
    const PolygonalLadder same = polygonal_ladder(ea, ea);
    for (const auto& row : same.rows)
        for (int j = 0; j < 3; ++j)
            CHECK(operator_norm(row[j] - ea.partition.idempotents[j]) < 1e-10);

    const SpectrumSpec spec2 = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    auto [m0, m1] = random_close_pair(rng, spec2, {2, 2}, false, 0.2);
    const AlgebraicElement e0 = elem_of(m0, spec2);
    const AlgebraicElement e1 = elem_of(m1, spec2);
    const PolygonalLadder two = polygonal_ladder(e0, e1);
    for (int j = 0; j < 2; ++j)
        CHECK(operator_norm(two.rows[2][j] - e1.partition.idempotents[j]) < 1e-9);

    const SpectrumSpec spec = spec3;
    auto [w0, w1] = random_close_pair(rng, spec, {2, 2, 1}, false, 0.02 * spec.min_gap);
    const AlgebraicElement f0 = elem_of(w0, spec);
    const AlgebraicElement f1 = elem_of(w1, spec);
    const PolygonalLadder ladder = polygonal_ladder(f0, f1);
    REQUIRE(ladder.rows.size() == 4);
    for (int j = 0; j < 3; ++j)
        CHECK(operator_norm(ladder.rows[3][j] - f1.partition.idempotents[j]) < 1e-7);
}

TEST_CASE("polygonal ladder breaks loudly on distant pairs") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    const AlgebraicElement a0 = elem_of(ComplexMatrix::diagonal({0.0, 1.0}), spec);
    const AlgebraicElement a1 = elem_of(ComplexMatrix::diagonal({1.0, 0.0}), spec);
    try {
        polygonal_ladder(a0, a1);
        FAIL("expected LadderBroken");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LadderBroken);
    }
}

TEST_CASE("polygonal path: segment count, endpoints, membership, interpolated rows") {
    Rng rng(40);
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    auto [m0, m1] = random_close_pair(rng, spec, {2, 2, 1}, false, 0.02 * spec.min_gap);
    const AlgebraicElement a0 = elem_of(m0, spec);
    const AlgebraicElement a1 = elem_of(m1, spec);
    const PolygonalLadder ladder = polygonal_ladder(a0, a1);
    PiecewisePath path = polygonal_path(ladder);

    REQUIRE(static_cast<int>(path.segments.size()) == spec.size());
    CHECK(operator_norm(path.start() - m0) < 1e-9);
    CHECK(operator_norm(path.end() - m1) < 1e-9);
    CHECK(path.worst_membership() < 1e-8 * spec.membership_scale(operator_norm(m0)));

    // interpolated rows are partitions of unity
    for (size_t step = 1; step < ladder.rows.size(); ++step) {
        for (double t : {0.25, 0.5, 0.75}) {
            std::vector<ComplexMatrix> row;
            for (int j = 0; j < spec.size(); ++j)
                row.push_back(ladder.rows[step - 1][j] * cplx(1.0 - t) + ladder.rows[step][j] * cplx(t));
            CHECK(partition_residual(row) < 1e-8);
        }
    }

    // the orthogonality identities behind the segment proof
    const ComplexMatrix& e01 = ladder.rows[0][0];
    const ComplexMatrix g = ladder.rows[1][0];
    for (int i = 1; i < spec.size(); ++i) {
        const ComplexMatrix& e0i = ladder.rows[0][i];
        for (double t : {0.3, 0.9}) {
            const ComplexMatrix left = e01 * cplx(1.0 - t) + g * cplx(t);
            const ComplexMatrix right = e0i - e0i * g * cplx(t);
            CHECK(operator_norm(left * right) < 1e-10);
            CHECK(operator_norm(right * left) < 1e-10);
        }
    }
}

TEST_CASE("unitary similarity on Hermitian pairs") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)}, true);
    Rng rng(41);

    const ComplexMatrix a = random_algebraic(rng, spec, {1, 1}, true);
    const AlgebraicElement ea = elem_of(a, spec);
    const SimilarityCertificate same = unitary_similarity(ea, ea);
    CHECK(operator_norm(same.s - ComplexMatrix::identity(2)) < 1e-10);

    // rank-one projections rotated by a small angle: s recovers the rotation
    const double theta = 0.2;
    ComplexMatrix p0(2, 2), rot(2, 2);
    p0(0, 0) = 1.0;
    rot(0, 0) = std::cos(theta);
    rot(0, 1) = -std::sin(theta);
    rot(1, 0) = std::sin(theta);
    rot(1, 1) = std::cos(theta);
    const ComplexMatrix p1 = rot * p0 * rot.adjoint();
    const SpectrumSpec spec01 = SpectrumSpec::make({cplx(1.0), cplx(0.0)}, true);
    const SimilarityCertificate cert = unitary_similarity(elem_of(p0, spec01), elem_of(p1, spec01));
    CHECK(operator_norm(cert.s.adjoint() * cert.s - ComplexMatrix::identity(2)) < 1e-10);
    CHECK(operator_norm(cert.s_inverse * p0 * cert.s - p1) < 1e-10);
    REQUIRE(cert.has_generators());
    const ComplexMatrix h = cert.generators[0] * cplx(0.0, -1.0); // c = i h
    CHECK(hermitian_defect(h) < 1e-10);

    // random Hermitian pairs: unitary certificate + Hermitian path
    const SpectrumSpec spec3 = SpectrumSpec::make({cplx(-1.0), cplx(0.0), cplx(1.0)}, true);
    for (int trial = 0; trial < 5; ++trial) {
        auto [m0, m1] = random_close_pair(rng, spec3, {2, 1, 1}, true, 0.05);
        const SimilarityCertificate c = unitary_similarity(elem_of(m0, spec3), elem_of(m1, spec3));
        CHECK(operator_norm(c.s.adjoint() * c.s - ComplexMatrix::identity(4)) < 1e-9);
        CHECK(operator_norm(c.s_inverse * m0 * c.s - m1) < 1e-9);
        if (!c.has_generators()) continue;
        PiecewisePath path = exp_path(m0, c, spec3);
        CHECK(operator_norm(path.end() - m1) < 1e-9);
        for (const SegmentResiduals& r : path.grid_residuals) CHECK(r.selfadjoint_max < 1e-9);
    }

    try {
        const SpectrumSpec loose = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
        const ComplexMatrix nh = random_algebraic(rng, loose, {1, 1}, false);
        unitary_similarity(elem_of(nh, loose), elem_of(nh, loose));
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }
}

TEST_CASE("chain path accumulates generators along a similarity orbit") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(42);

    const ComplexMatrix base = random_algebraic(rng, spec, {2, 1, 1}, false);
    const ComplexMatrix t1 = mat_exp(rng.gaussian_matrix(4, 4) * cplx(0.02));
    const ComplexMatrix t2 = mat_exp(rng.gaussian_matrix(4, 4) * cplx(0.02));
    const ComplexMatrix mid = mat_inverse(t1) * base * t1;
    const ComplexMatrix last = mat_inverse(t2) * mid * t2;

    const std::vector<AlgebraicElement> ws{elem_of(base, spec), elem_of(mid, spec), elem_of(last, spec)};
    const ChainResult chain = chain_path(ws, PathMode::Exp);
    REQUIRE(chain.certificate.has_value());
    CHECK(chain.certificate->generators.size() == 2);
    CHECK(operator_norm(chain.path.end() - last) < 1e-8);
    CHECK(chain.path.worst_membership() < 1e-9 * spec.membership_scale(operator_norm(base)));

    // the certificate is the ordered product of the exponentials
    ComplexMatrix prod = ComplexMatrix::identity(4);
    for (const ComplexMatrix& c : chain.certificate->generators) prod = prod * mat_exp(c);
    CHECK(operator_norm(prod - chain.certificate->s) < 1e-9);

    const ChainResult poly = chain_path(ws, PathMode::Polygonal);
    CHECK(static_cast<int>(poly.path.segments.size()) == 2 * spec.size());
    CHECK(!poly.certificate.has_value());

    // a single pair chains to the local construction
    const ChainResult single = chain_path({ws[0], ws[1]}, PathMode::Exp);
    CHECK(single.certificate->generators.size() == 1);
}

TEST_CASE("chain path rejects distant links") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)});
    const AlgebraicElement a0 = elem_of(ComplexMatrix::diagonal({0.0, 1.0}), spec);
    const AlgebraicElement a1 = elem_of(ComplexMatrix::diagonal({1.0, 0.0}), spec);
    try {
        chain_path({a0, a1}, PathMode::Polygonal);
        FAIL("expected LinkTooFar");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LinkTooFar);
    }
}

TEST_CASE("paths shrink to the base point as the endpoints approach") {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(0.0), cplx(1.0), cplx(2.0)});
    Rng rng(43);
    double prev = 1e9;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        auto [m0, m1] = random_close_pair(rng, spec, {1, 1, 1}, false, gap);
        const SimilarityCertificate cert = ep_similarity(elem_of(m0, spec), elem_of(m1, spec));
        REQUIRE(cert.has_generators());
        PiecewisePath path = exp_path(m0, cert, spec);
        double deviation = 0.0;
        for (int k = 0; k <= 20; ++k)
            deviation = std::max(deviation, operator_norm(path.eval(k / 20.0) - m0));
        CHECK(deviation <= prev * 1.1); // monotone up to 10% slack
        prev = deviation;
    }
    CHECK(prev < 1e-5);
}
