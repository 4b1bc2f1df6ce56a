#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/tolerances.hpp"

#include <vector>

namespace algpaths {

/**
 * The fixed polynomial p(x) = prod_i (x - roots[i]) with pairwise distinct
 * roots, plus the data derived from it: the minimal root gap and the Lagrange
 * basis polynomials p_i with p_i(root_j) = delta_ij.
 *
 * real_only marks the self-adjoint regime: all roots real, elements Hermitian,
 * partitions of self-adjoint idempotents.
 */
struct SpectrumSpec {
    std::vector<cplx> roots;
    bool real_only = false;
    double min_gap = 0.0;
    std::vector<std::vector<cplx>> lagrange_coeffs; // ascending degree, one list per root

    static SpectrumSpec make(std::vector<cplx> roots, bool real_only = false);

    int size() const { return static_cast<int>(roots.size()); }

    // prod_j (norm_a + |root_j|): the natural growth scale of ||p(a)||.
    double membership_scale(double norm_a) const;

    // ||p(a)||, evaluated in factored form.
    double membership_residual(const ComplexMatrix& a) const;
    ComplexMatrix apply_p(const ComplexMatrix& a) const;

    std::string id_string() const; // "0,1,2" style tag for reports
};

/**
 * Lagrange interpolation basis for distinct nodes: coefficient lists
 * (ascending degree) of the degree n-1 polynomials p_i with p_i(x_j) = d_ij.
 * Throws Error(DuplicateRoots) when two nodes are closer than the duplicate
 * root threshold.
 */
std::vector<std::vector<cplx>> lagrange_basis(const std::vector<cplx>& roots);

cplx poly_eval(const std::vector<cplx>& coeffs, cplx x);
ComplexMatrix poly_eval_matrix(const std::vector<cplx>& coeffs, const ComplexMatrix& m);

} // namespace algpaths
