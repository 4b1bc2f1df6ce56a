#include "algpaths/rng.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <cmath>

namespace algpaths {

double Rng::uniform() {
    // Top 53 bits of the engine output, portable across standard libraries.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
}

double Rng::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

cplx Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cplx(re, im) * (1.0 / std::sqrt(2.0));
}

ComplexMatrix Rng::gaussian_matrix(int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = complex_gaussian();
    return m;
}

ComplexMatrix Rng::hermitian_gaussian(int n) {
    ComplexMatrix g = gaussian_matrix(n, n);
    return (g + g.adjoint()) * cplx(0.5);
}

ComplexMatrix Rng::random_unitary(int n) {
    ComplexMatrix g = gaussian_matrix(n, n);
    // modified Gram-Schmidt on columns
    for (int c = 0; c < n; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cplx dot = 0.0;
            for (int r = 0; r < n; ++r) dot += std::conj(g(r, prev)) * g(r, c);
            for (int r = 0; r < n; ++r) g(r, c) -= dot * g(r, prev);
        }
        double nrm = 0.0;
        for (int r = 0; r < n; ++r) nrm += std::norm(g(r, c));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) { g(c, c) += 1.0; return random_unitary(n); } // astronomically unlikely redraw
        for (int r = 0; r < n; ++r) g(r, c) /= nrm;
    }
    return g;
}

ComplexMatrix Rng::random_invertible(int n, double spread) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        ComplexMatrix s = ComplexMatrix::identity(n) + gaussian_matrix(n, n) * cplx(spread);
        try {
            (void)lu_factor(s);
            return s;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorKind::SingularMatrix, "could not draw an invertible conjugator");
}

} // namespace algpaths
