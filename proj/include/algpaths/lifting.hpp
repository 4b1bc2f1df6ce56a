#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/rng.hpp"
#include "algpaths/spectrum.hpp"
#include "algpaths/tolerances.hpp"

#include <functional>
#include <string>
#include <vector>

namespace algpaths {

/**
 * Finite-dimensional quotient with quasinilpotent kernel: A is the algebra of
 * block-upper-triangular matrices for the flag given by block_sizes, B the
 * block-diagonal subalgebra, and the projection zeroes the strict upper
 * blocks. Every kernel element is strictly block-upper-triangular, so its
 * r-th power vanishes exactly.
 *
 * An optional block-diagonal invertible polynomial family v gives the
 * parameter-dependent projection x -> v(l) pi0(x) v(l)^{-1}, which remains a
 * surjective unit-preserving homomorphism with the same kernel.
 *
 * involutive enables the flip involution X -> J X* J (J the anti-diagonal
 * permutation), which preserves the flag when block_sizes is palindromic and
 * commutes with the projection.
 */
struct QuotientModel {
    std::vector<int> block_sizes;
    bool involutive = false;
    std::vector<ComplexMatrix> twist_coeffs; // v(l) = sum_k twist_coeffs[k] l^k; empty = no twist

    int dim() const;
    int blocks() const { return static_cast<int>(block_sizes.size()); }
    int block_of(int index) const;
    bool has_twist() const { return !twist_coeffs.empty(); }

    bool in_algebra(const ComplexMatrix& x, double rel_tol = 1e-12) const;
    ComplexMatrix project0(const ComplexMatrix& x) const;         // keep the block diagonal
    ComplexMatrix twist_at(cplx lambda) const;                    // v(lambda), identity when absent
    ComplexMatrix involution(const ComplexMatrix& x) const;       // J X* J
    ComplexMatrix random_kernel_element(Rng& rng) const;          // strictly upper Gaussian

    void validate() const; // involutive => palindromic block sizes
};

/**
 * Parameter-dependent projection pi(lambda) x = v(lambda) pi0(x) v(lambda)^{-1}.
 * Multiplicative, unit preserving, surjective onto the block diagonal.
 * Errors: NotInAlgebra when x has nonzero strictly-lower blocks.
 */
ComplexMatrix project(const QuotientModel& model, const ComplexMatrix& x, cplx lambda);

/**
 * Matrix-valued polynomial family, evaluated by Horner. domain is the disk
 * |l| < radius, or the real interval (-radius, radius) when real_domain.
 */
struct AnalyticFamily {
    std::vector<ComplexMatrix> coeffs; // ascending degree
    double radius = 1.0;
    bool real_domain = false;

    ComplexMatrix eval(cplx lambda) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct LiftCertRow {
    cplx lambda;
    double membership = 0.0;      // ||p(a(l))|| / scale
    double projection_err = 0.0;  // ||pi(l) a(l) - b(l)||
    double selfadjoint_err = 0.0; // ||a(l) - a(l)^sigma|| (involutive lifts)
    bool ok = false;
    std::string failure;          // empty when ok
};

struct LiftReport {
    std::vector<LiftCertRow> rows;
    std::vector<ComplexMatrix> lifted; // a(lambda) at the corresponding grid points
    double fit_residual = 0.0;         // polynomial-fit analyticity evidence over the ok rows
    int fit_degree = 0;
    bool all_ok = false;
    bool symmetrization_broke_membership = false;
};

/**
 * Lifts the family b along the quotient: the section x(l) is the zero-filled
 * preimage (conjugated through the twist when present, plus an optional
 * kernel perturbation), and
 *
 *     a(l) = sum_i root_i * riesz_idempotent(x(l), i)
 *
 * with the last idempotent replaced by 1 - sum of the others so the lifted
 * partition sums to one exactly. Certifies at every grid point that a(l) is
 * algebraic and projects back onto b(l). The block-triangular spectrum of
 * x(l) equals the spectrum of its diagonal, so the contours always separate.
 *
 * Errors: NotLiftableInput (b leaves the variety on the grid),
 * SpectralSeparationLost (resolvent quadrature broke down at some lambda).
 */
LiftReport lift_family(const QuotientModel& model, const AnalyticFamily& b, const SpectrumSpec& spec,
                       const std::vector<cplx>& grid, const Tolerances& tol = Tolerances{},
                       const std::function<ComplexMatrix(cplx)>* kernel_perturbation = nullptr);

/**
 * Involutive variant: requires b fixed by the induced involution at each grid
 * point and a real spectrum; the lift is symmetrized through (a + a^sigma)/2.
 * If symmetrization were to break membership this is detected and flagged in
 * the report, never silently accepted.
 */
LiftReport lift_family_selfadjoint(const QuotientModel& model, const AnalyticFamily& b,
                                   const SpectrumSpec& spec, const std::vector<double>& grid,
                                   const Tolerances& tol = Tolerances{});

struct LocalLiftResult {
    double radius = 0.0;   // largest grid-certified disk (or interval) about 0
    LiftReport report;     // rows inside the certified region, in grid order
    bool truncated = false;
    cplx stopped_at = 0.0; // first failing grid point, when truncated
    std::string stop_reason;
};

/**
 * Runs the lift outward from 0 and shrinks to the largest grid-certified
 * disk: grid points are processed by increasing modulus and the sweep stops
 * at the first failure. Hypotheses are only required at lambda = 0.
 * Errors: NotLiftableAtZero.
 */
LocalLiftResult local_lift(const QuotientModel& model, const AnalyticFamily& b,
                           const SpectrumSpec& spec, const std::vector<cplx>& grid,
                           const Tolerances& tol = Tolerances{});

} // namespace algpaths
