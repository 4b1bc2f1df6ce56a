#include "algpaths/random_elements.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace algpaths {

std::vector<int> random_signature(Rng& rng, int n_roots, int dim) {
    std::vector<int> sig(n_roots, 0);
    for (int u = 0; u < dim; ++u) ++sig[rng.uniform_int(0, n_roots - 1)];
    return sig;
}

namespace {

ComplexMatrix diagonal_model(const SpectrumSpec& spec, const std::vector<int>& multiplicities) {
    std::vector<cplx> diag;
    for (size_t i = 0; i < multiplicities.size(); ++i)
        for (int k = 0; k < multiplicities[i]; ++k) diag.push_back(spec.roots[i]);
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) * cplx(0.5); }

} // namespace

ComplexMatrix random_algebraic(Rng& rng, const SpectrumSpec& spec,
                               const std::vector<int>& multiplicities, bool selfadjoint,
                               double spread) {
    if (static_cast<int>(multiplicities.size()) != spec.size())
        throw Error(ErrorKind::DimMismatch, "multiplicity count does not match root count");
    const ComplexMatrix d = diagonal_model(spec, multiplicities);
    const int dim = d.rows();
    if (selfadjoint) {
        const ComplexMatrix u = rng.random_unitary(dim);
        return hermitize(u * d * u.adjoint());
    }
    const ComplexMatrix s = rng.random_invertible(dim, spread);
    return s * d * mat_inverse(s);
}

std::pair<ComplexMatrix, ComplexMatrix>
random_close_pair(Rng& rng, const SpectrumSpec& spec, const std::vector<int>& multiplicities,
                  bool selfadjoint, double target_gap, double spread) {
    const ComplexMatrix a0 = random_algebraic(rng, spec, multiplicities, selfadjoint, spread);
    const int dim = a0.rows();

    const ComplexMatrix direction =
        selfadjoint ? rng.hermitian_gaussian(dim) : rng.gaussian_matrix(dim, dim);

    double eps = target_gap / (4.0 * std::max(1.0, operator_norm(direction)) *
                               std::max(1.0, operator_norm(a0)));
    for (int halvings = 0; halvings < 60; ++halvings) {
        ComplexMatrix a1;
        if (selfadjoint) {
            const ComplexMatrix w = mat_exp(direction * cplx(0.0, eps)); // unitary
            a1 = hermitize(w * a0 * w.adjoint());
        } else {
            const ComplexMatrix t = mat_exp(direction * cplx(eps));
            a1 = mat_inverse(t) * a0 * t;
        }
        if (operator_norm(a1 - a0) <= target_gap) return {a0, a1};
        eps *= 0.5;
    }
    return {a0, a0};
}

std::pair<ComplexMatrix, ComplexMatrix> random_projection_pair(Rng& rng, int dim, int rank,
                                                               bool selfadjoint, double target_gap) {
    const SpectrumSpec spec = SpectrumSpec::make({cplx(1.0), cplx(0.0)}, selfadjoint);
    const std::vector<int> sig{rank, dim - rank};
    return random_close_pair(rng, spec, sig, selfadjoint, target_gap);
}

} // namespace algpaths
