#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/spectrum.hpp"
#include "algpaths/tolerances.hpp"

#include <utility>
#include <vector>

namespace algpaths {

/**
 * Ordered list of mutually orthogonal idempotents summing to the identity.
 * tol_used records the threshold the list was validated against.
 */
struct PartitionOfUnity {
    std::vector<ComplexMatrix> idempotents;
    double tol_used = 0.0;
};

/**
 * Worst residual over the partition-of-unity conditions: ||e_i^2 - e_i||,
 * ||e_i e_j|| (i != j), ||sum e_i - 1||, and in self-adjoint mode
 * ||e_i - e_i*||. Operator norm when `sharp`, Frobenius (an upper bound of
 * the operator norm) for bulk validation sweeps.
 */
double partition_residual(const std::vector<ComplexMatrix>& idempotents,
                          bool selfadjoint = false, bool sharp = true);

/**
 * An element a with p(a) = 0 together with its cached spectral data.
 * Invariants: residual <= tol * scale, and matrix == sum root_i * e_i.
 */
struct AlgebraicElement {
    ComplexMatrix matrix;
    SpectrumSpec spec;
    PartitionOfUnity partition;
    double residual = 0.0; // ||p(a)||
};

/**
 * Spectral decomposition through the Lagrange basis: e_i = p_i(a), evaluated
 * in factored form. Validates membership ||p(a)|| <= tol * scale and the
 * partition invariants. Errors: NotAlgebraic, DuplicateRoots.
 */
AlgebraicElement decompose(const ComplexMatrix& a, const SpectrumSpec& spec,
                           const Tolerances& tol = Tolerances{});

/**
 * Spectral idempotent by resolvent quadrature: trapezoidal rule for
 * (1/2 pi i) contour-integral of (z 1 - a)^{-1} dz over the counterclockwise
 * circle of radius min_gap/3 about roots[i]. Independent of the Lagrange
 * route; the two agree on algebraic inputs. Errors: ResolventSingular.
 */
ComplexMatrix riesz_idempotent(const ComplexMatrix& a, int i, const SpectrumSpec& spec,
                               int quad_points = 128);

/**
 * sum root_i * e_i from a validated partition; checks the result is
 * algebraic. Errors: InvalidPartition.
 */
ComplexMatrix reconstruct(const PartitionOfUnity& pou, const SpectrumSpec& spec,
                          const Tolerances& tol = Tolerances{});

/**
 * Normal form of a weighted partition: drops idempotents with norm below the
 * zero cut, sorts by (Re, Im) of the value. Two representations of the same
 * element canonicalize to entrywise-equal lists. Errors: InvalidPartition.
 */
std::vector<std::pair<cplx, ComplexMatrix>>
canonicalize(const std::vector<std::pair<cplx, ComplexMatrix>>& values_and_idempotents,
             const Tolerances& tol = Tolerances{});

/**
 * Explicit perturbation bound for the spectral idempotents:
 *   [ prod_{j != i} (norm_a + norm_eps + |root_j|) - prod_{j != i} (norm_a + |root_j|) ]
 *   / prod_{j != i} |root_i - root_j|.
 * Valid for norm_eps <= 1; monotone in norm_eps and zero at zero.
 */
double continuity_bound(const SpectrumSpec& spec, double norm_a, double norm_eps, int i);

} // namespace algpaths
