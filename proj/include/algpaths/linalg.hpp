#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/errors.hpp"
#include "algpaths/tolerances.hpp"

#include <vector>

namespace algpaths {

/**
 * Row-pivoted LU factorization of a square matrix. Throws
 * Error(SingularMatrix) when a pivot falls below pivot_floor * ||m||_max.
 */
struct LuFactors {
    ComplexMatrix lu;            // L (unit diagonal, below) and U (on/above) packed
    std::vector<int> perm;       // row permutation applied to the input
    double max_abs_input = 0.0;

    ComplexMatrix solve(const ComplexMatrix& rhs) const;
};

LuFactors lu_factor(const ComplexMatrix& m, double pivot_floor = Tolerances::pivot_floor);

/**
 * Inverse via row-pivoted LU with one step of Newton refinement when the
 * direct solve leaves too large a residual. Errors: SingularMatrix (pivot
 * collapse, or residual irreparable within the condition cap).
 */
ComplexMatrix mat_inverse(const ComplexMatrix& m);

/**
 * Largest singular value (spectral norm) by power iteration on m* m with a
 * fixed deterministic start vector. Returns 0 for the zero matrix.
 */
double operator_norm(const ComplexMatrix& m);

/// Matrix exponential: scaling-and-squaring with a truncated Taylor series.
ComplexMatrix mat_exp(const ComplexMatrix& m);

/**
 * Principal matrix logarithm via the series log(1+x) = sum (-1)^{k+1} x^k / k
 * with x = m - 1, terminated when the term norm drops below 1e-16.
 * Requires ||m - 1|| < 1 (operator norm); throws Error(OutOfDomain) otherwise.
 */
ComplexMatrix mat_log_principal(const ComplexMatrix& m);

/**
 * Inverse square root of a Hermitian positive definite matrix, by the
 * Newton-Schulz iteration on the spectrally rescaled input. The result is a
 * limit of polynomials in m, hence Hermitian and commuting with m.
 * Errors: NotHermitian, NotPositiveDefinite (smallest eigenvalue <= 1e-10,
 * certified by power iteration on the reflected matrix ||m||*1 - m).
 */
ComplexMatrix herm_inv_sqrt(const ComplexMatrix& m);

/**
 * (z*1 - a)^{-1} via a factorization solve. Throws Error(ResolventSingular)
 * when the pivots collapse, i.e. z sits on (or numerically touches) the
 * spectrum of a.
 */
ComplexMatrix resolvent_apply(const ComplexMatrix& a, cplx z);

// Hermitian deviation ||m - m*||_F; cheap symmetry check used by several preconditions.
double hermitian_defect(const ComplexMatrix& m);

} // namespace algpaths
