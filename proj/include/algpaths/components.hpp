#pragma once

#include "algpaths/partition.hpp"
#include "algpaths/rng.hpp"
#include "algpaths/spectrum.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace algpaths {

/**
 * Multiplicity vector of an algebraic element: the rank of each spectral
 * idempotent, read off the (integer) traces. Classifies the connected
 * component of the element in the full matrix algebra.
 */
struct ComponentSignature {
    std::vector<int> multiplicities;
    int dim = 0;

    bool operator==(const ComponentSignature&) const = default;
    std::string to_string() const; // "2;1;0"
};

/// Errors: NonIntegerTrace when an idempotent trace strays from an integer.
ComponentSignature signature(const AlgebraicElement& a);

/**
 * Exact distance between the components labelled by two signatures in the
 * Hermitian matrix model: both eigenvalue lists sorted descending, then the
 * largest positionwise gap. Lower bound by eigenvalue perturbation, attained
 * in a common eigenbasis. Errors: DimMismatch.
 */
double component_distance_oracle(const ComponentSignature& sig0, const ComponentSignature& sig1,
                                 const SpectrumSpec& spec);

/**
 * Closed-form lower bound on the distance of distinct components of the
 * Hermitian variety, in terms of the root geometry alone:
 *
 *   min_gap * min_i prod_{j != i} |r_i - r_j|
 *     / [ prod_{j != i} (max_k |r_k - r_j| + min_gap) - prod_{j != i} max_k |r_k - r_j| ].
 *
 * Translation/rotation invariant, homogeneous of degree one under positive
 * scaling of the roots.
 */
double component_distance_lower_bound(const SpectrumSpec& spec);

/// All multiplicity vectors with the given number of parts summing to dim.
std::vector<ComponentSignature> all_signatures(int n_roots, int dim);

struct ConjectureRow {
    std::string spec_id;
    int dim = 0;
    ComponentSignature sig0, sig1;
    double oracle = 0.0;
    double bound = 0.0;
    double min_gap = 0.0;
    bool bound_le_oracle = false;
    bool oracle_ge_gap = false;
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    uint64_t seed = 0;
    int trials_run = 0;
    int bound_violations = 0;       // rows with bound > oracle
    int conjecture_flags = 0;       // rows with oracle < min_gap
    int sampling_violations = 0;    // random pairs realizing less than oracle
    double worst_attainment_error = 0.0; // |common-basis distance - oracle|
};

/**
 * Tabulates oracle distance vs. the closed-form bound for every pair of
 * distinct signatures, and cross-validates the oracle by randomized search:
 * no random unitary conjugation pair may realize a distance below the oracle,
 * while a common-eigenbasis pair must attain it.
 */
ConjectureReport conjecture_experiment(const SpectrumSpec& spec, int dim, int trials, uint64_t seed);

std::string conjecture_csv(const ConjectureReport& report);

/**
 * Whether a is central in the full matrix algebra, i.e. a scalar multiple of
 * the identity: ||a - (tr a / dim) 1|| <= tol * max(1, ||a||).
 */
bool centrality_test(const ComplexMatrix& a, const Tolerances& tol = Tolerances{});

/**
 * Cross-check of centrality for an algebraic element: central iff
 * e_i x e_j vanishes for all matrix units x and all i != j.
 */
bool centrality_test_spectral(const AlgebraicElement& a, const Tolerances& tol = Tolerances{});

/**
 * The affine line t -> a + t (r_i - r_j) e_i x e_j, which stays algebraic for
 * every t. Nonconstant exactly when e_i x e_j does not vanish; witnesses the
 * unboundedness of non-central components. Errors: IndexOutOfRange.
 */
struct LineEmbedding {
    ComplexMatrix base;
    ComplexMatrix direction; // (r_i - r_j) e_i x e_j
    bool nonconstant = false;

    ComplexMatrix at(double t) const { return base + direction * cplx(t); }
};

LineEmbedding line_embedding(const AlgebraicElement& a, const ComplexMatrix& x, int i, int j,
                             const Tolerances& tol = Tolerances{});

/**
 * Coordinates (a, c, d) of a rank-one 2x2 Hermitian projection
 * [[a, c+id], [c-id, 1-a]]; they satisfy (a - 1/2)^2 + c^2 + d^2 = 1/4.
 * Errors: NotRankOneProjection.
 */
std::array<double, 3> sphere_coordinates(const ComplexMatrix& T);

/**
 * Least-squares fit of a degree <= max_degree polynomial (in t) through
 * samples of a matrix curve; returns the largest entrywise deviation at the
 * sample points. Nonconstant closed loops of rank-one Hermitian projections
 * cannot be reproduced by low-degree polynomials, constant curves fit to
 * machine precision.
 */
double polynomial_fit_residual(const std::vector<double>& ts,
                               const std::vector<ComplexMatrix>& samples, int max_degree);

} // namespace algpaths
