#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/partition.hpp"
#include "algpaths/spectrum.hpp"
#include "algpaths/tolerances.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace algpaths {

/**
 * Witness that two algebraic elements are similar: s^{-1} a0 s = a1, with the
 * inverse stored explicitly. When generators are present,
 * s = exp(c_1) ... exp(c_m); in the unitary case s* = s^{-1} and every
 * generator is i times a Hermitian element.
 */
struct SimilarityCertificate {
    ComplexMatrix s;
    ComplexMatrix s_inverse;
    std::vector<ComplexMatrix> generators;
    bool unitary = false;

    bool has_generators() const { return !generators.empty(); }
};

/// Pair of square-zero elements: d^2 = d'^2 = 0.
struct NilpotentPair {
    ComplexMatrix d;
    ComplexMatrix d_prime;
};

// ---- path segments ----

// t -> exp(-c_m t) ... exp(-c_1 t) a0 exp(c_1 t) ... exp(c_m t)
struct ExpSegment {
    ComplexMatrix a0;
    std::vector<ComplexMatrix> generators;
};

// t -> (1-t) start + t end
struct LinearSegment {
    ComplexMatrix start;
    ComplexMatrix end;
};

// t -> [sum_i (1 + d_i' t)(1 + d_i t) e_i] a0 [sum_i e_i (1 - d_i t)(1 - d_i' t)]
// with square-zero d_i, d_i'; the exponentials of square-zero generators are
// exact linear factors, so this is a polynomial path.
struct EsterleSegment {
    ComplexMatrix a0;
    std::vector<ComplexMatrix> idempotents;
    std::vector<NilpotentPair> generators;
};

struct PathSegment {
    std::variant<ExpSegment, LinearSegment, EsterleSegment> seg;

    ComplexMatrix eval(double t) const;
    ComplexMatrix start() const { return eval(0.0); }
    ComplexMatrix end() const { return eval(1.0); }
    const char* type_tag() const;
};

struct SegmentResiduals {
    double membership_max = 0.0;   // max_t ||p(a(t))|| over the sample grid
    double selfadjoint_max = 0.0;  // max_t ||a(t) - a(t)*|| (self-adjoint mode)
};

/**
 * Evaluable path [0,1] -> matrices, as a list of segments on a uniform
 * parameter split. grid_residuals carry per-segment sampled validation data.
 */
struct PiecewisePath {
    std::vector<PathSegment> segments;
    std::vector<SegmentResiduals> grid_residuals;

    ComplexMatrix eval(double t) const;
    ComplexMatrix start() const { return segments.front().start(); }
    ComplexMatrix end() const { return segments.back().end(); }
    double worst_membership() const;
};

/**
 * Samples every segment on the validation grid, records residuals, and checks
 * that consecutive segments share endpoints. Frobenius norms (upper bounds of
 * the operator norm) are used in the bulk sweep.
 */
void validate_path(PiecewisePath& path, const SpectrumSpec& spec,
                   const Tolerances& tol = Tolerances{});

// ---- idempotent-level constructions ----

/**
 * g(e0, e1) = e1 (e0 + e1 - 1)^{-2} e0: the unique idempotent with the range
 * of e1 and the kernel of e0. Requires ||e1 - e0|| < 1 so that e0 + e1 - 1 is
 * invertible. Satisfies e1 g = g, g e1 = e1, e0 g = e0, g e0 = g.
 * Errors: NotIdempotent, TooFar.
 */
ComplexMatrix kovarik_element(const ComplexMatrix& e0, const ComplexMatrix& e1,
                              const Tolerances& tol = Tolerances{});

/**
 * Two straight segments e0 -> g -> e1 through the Kovarik element; every
 * point of both segments is an idempotent.
 */
PiecewisePath two_segment_path(const ComplexMatrix& e0, const ComplexMatrix& e1,
                               const Tolerances& tol = Tolerances{});

/**
 * Invertible u with u e0 = e1 u (so e1 = u e0 u^{-1}), via
 * u = e1 e0 + (1 - e1)(1 - e0); u -> 1 as e1 -> e0, and
 * u u' = 1 - (e1 - e0)^2 for the reversed product u' = e0 e1 + (1-e0)(1-e1).
 * Errors: NotIdempotent, TooFar.
 */
ComplexMatrix idempotent_similarity(const ComplexMatrix& e0, const ComplexMatrix& e1,
                                    const Tolerances& tol = Tolerances{});

/**
 * Square-zero generators d = g - e0, d' = g - e1 derived from the Kovarik
 * relations; they satisfy (1 + d')(1 + d) e0 (1 - d)(1 - d') = e1, so the
 * exponential factors of the similarity are exact cubic polynomials.
 */
NilpotentPair nilpotent_generators(const ComplexMatrix& e0, const ComplexMatrix& e1,
                                   const Tolerances& tol = Tolerances{});

// ---- element-level constructions ----

/**
 * Similarity between algebraic elements of the same spectrum, assembled from
 * per-index idempotent similarities: s = sum_i e_{0i} s_i with explicit
 * inverse sum_i s_i^{-1} e_{0i}. When ||s - 1|| < 1 the certificate carries
 * the single generator log(s); otherwise it is returned without generators.
 * Errors: TooFar (some index pair at distance >= 1).
 */
SimilarityCertificate ep_similarity(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                    const Tolerances& tol = Tolerances{});

/**
 * The analytic similarity path t -> exp(-c_m t)...exp(-c_1 t) a0 exp(c_1 t)...exp(c_m t)
 * for a certificate with generators. Every point is a similarity of a0, hence
 * algebraic. Errors: LogOutOfDomain when the certificate has no generators.
 */
PiecewisePath exp_path(const ComplexMatrix& a0, const SimilarityCertificate& cert,
                       const SpectrumSpec& spec, const Tolerances& tol = Tolerances{});

/**
 * The per-index square-zero product path. Endpoints always land on a0 and a1;
 * interior membership is rigorous for two roots (the complementary idempotent
 * stays complementary) and is measured but NOT asserted for three or more
 * roots - read grid_residuals.
 */
PiecewisePath esterle_candidate_path(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                     const Tolerances& tol = Tolerances{});

/**
 * The (n+1) x n array of idempotents realizing the stepwise exchange of the
 * start partition into the target partition: row 0 is the start partition,
 * each row is a partition of unity, row i replaces the i-th idempotent via a
 * Kovarik exchange, and the last row equals the target partition.
 */
struct PolygonalLadder {
    std::vector<std::vector<ComplexMatrix>> rows;
    SpectrumSpec spec;
};

/// Errors: LadderBroken{step, index} when an intermediate exchange loses its precondition.
PolygonalLadder polygonal_ladder(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                 const Tolerances& tol = Tolerances{});

/**
 * The n-segment polygonal path through the ladder: segment k interpolates row
 * k-1 to row k simultaneously in all coordinates and maps through
 * sum_i root_i e_i. Every interpolated row is a partition of unity, so the
 * whole polygon stays algebraic.
 */
PiecewisePath polygonal_path(const PolygonalLadder& ladder, const Tolerances& tol = Tolerances{});

/**
 * Unitary similarity between Hermitian algebraic elements with real spectrum:
 * per-index similarities are normalized to unitaries by the polar factor
 * u (u* u)^{-1/2}, giving s unitary with s^{-1} a0 s = a1 and, when
 * ||s - 1|| < 1, a generator i*h with h Hermitian.
 * Errors: NotHermitian, TooFar.
 */
SimilarityCertificate unitary_similarity(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                         const Tolerances& tol = Tolerances{});

enum class PathMode { Exp, Unitary, Polygonal };

struct ChainResult {
    PiecewisePath path;
    std::optional<SimilarityCertificate> certificate; // Exp / Unitary modes
};

/**
 * Chains local constructions along a waypoint list. Exponential and unitary
 * modes accumulate generators c_1..c_m into a single analytic segment;
 * polygonal mode concatenates the per-link polygons. A link whose per-index
 * idempotent gaps reach the local radius 0.5 raises LinkTooFar{index}.
 */
ChainResult chain_path(const std::vector<AlgebraicElement>& waypoints, PathMode mode,
                       const Tolerances& tol = Tolerances{});

} // namespace algpaths
