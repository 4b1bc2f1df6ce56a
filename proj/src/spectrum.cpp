#include "algpaths/spectrum.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <cmath>
#include <sstream>

namespace algpaths {

std::vector<std::vector<cplx>> lagrange_basis(const std::vector<cplx>& roots) {
    const int n = static_cast<int>(roots.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) < Tolerances::duplicate_root)
                throw Error(ErrorKind::DuplicateRoots,
                            "roots " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

    std::vector<std::vector<cplx>> basis(n);
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> coeffs{1.0};
        cplx denom = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            // multiply by (x - root_j)
            std::vector<cplx> next(coeffs.size() + 1, 0.0);
            for (size_t k = 0; k < coeffs.size(); ++k) {
                next[k + 1] += coeffs[k];
                next[k] -= roots[j] * coeffs[k];
            }
            coeffs = std::move(next);
            denom *= roots[i] - roots[j];
        }
        for (cplx& c : coeffs) c /= denom;
        basis[i] = std::move(coeffs);
    }
    return basis;
}

cplx poly_eval(const std::vector<cplx>& coeffs, cplx x) {
    cplx acc = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

ComplexMatrix poly_eval_matrix(const std::vector<cplx>& coeffs, const ComplexMatrix& m) {
    const int n = m.rows();
    ComplexMatrix acc(n, n);
    for (size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * m;
        for (int i = 0; i < n; ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

SpectrumSpec SpectrumSpec::make(std::vector<cplx> roots, bool real_only) {
    if (roots.size() < 2)
        throw Error(ErrorKind::DuplicateRoots, "need at least two distinct roots");
    SpectrumSpec s;
    s.roots = std::move(roots);
    s.real_only = real_only;
    if (real_only)
        for (const cplx& r : s.roots)
            if (std::abs(r.imag()) > 0.0)
                throw Error(ErrorKind::ParseError, "self-adjoint mode requires real roots");

    s.lagrange_coeffs = lagrange_basis(s.roots);
    s.min_gap = std::abs(s.roots[0] - s.roots[1]);
    for (size_t i = 0; i < s.roots.size(); ++i)
        for (size_t j = i + 1; j < s.roots.size(); ++j)
            s.min_gap = std::min(s.min_gap, std::abs(s.roots[i] - s.roots[j]));

    // sum p_i == 1 and sum root_i p_i == x must hold coefficientwise.
    const size_t deg = s.roots.size();
    std::vector<cplx> unit(deg, 0.0), ident(deg + 1, 0.0);
    for (size_t i = 0; i < deg; ++i)
        for (size_t k = 0; k < s.lagrange_coeffs[i].size(); ++k) {
            unit[k] += s.lagrange_coeffs[i][k];
            ident[k] += s.roots[i] * s.lagrange_coeffs[i][k];
        }
    unit[0] -= 1.0;
    ident[1] -= 1.0;
    double defect = 0.0;
    for (const cplx& c : unit) defect = std::max(defect, std::abs(c));
    for (const cplx& c : ident) defect = std::max(defect, std::abs(c));
    double coeff_scale = 1.0;
    for (const auto& p : s.lagrange_coeffs)
        for (const cplx& c : p) coeff_scale = std::max(coeff_scale, std::abs(c));
    if (defect > 1e-12 * coeff_scale)
        throw Error(ErrorKind::DuplicateRoots, "Lagrange basis failed the resolution-of-unity identities");
    return s;
}

double SpectrumSpec::membership_scale(double norm_a) const {
    double s = 1.0;
    for (const cplx& r : roots) s *= norm_a + std::abs(r);
    return std::max(1.0, s);
}

ComplexMatrix SpectrumSpec::apply_p(const ComplexMatrix& a) const {
    ComplexMatrix acc = ComplexMatrix::identity(a.rows());
    for (const cplx& r : roots) acc = acc * shift(a, r);
    return acc;
}

double SpectrumSpec::membership_residual(const ComplexMatrix& a) const {
    return operator_norm(apply_p(a));
}

std::string SpectrumSpec::id_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (i) os << ",";
        os << roots[i].real();
        if (roots[i].imag() != 0.0) os << (roots[i].imag() > 0 ? "+" : "") << roots[i].imag() << "i";
    }
    return os.str();
}

} // namespace algpaths
