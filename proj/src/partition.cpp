#include "algpaths/partition.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace algpaths {

namespace {

double mat_norm(const ComplexMatrix& m, bool sharp) {
    return sharp ? operator_norm(m) : m.frobenius_norm();
}

} // namespace

double partition_residual(const std::vector<ComplexMatrix>& idempotents, bool selfadjoint, bool sharp) {
    if (idempotents.empty()) return 0.0;
    const int n = idempotents[0].rows();
    double worst = 0.0;
    ComplexMatrix sum(n, n);
    for (size_t i = 0; i < idempotents.size(); ++i) {
        const ComplexMatrix& e = idempotents[i];
        worst = std::max(worst, mat_norm(e * e - e, sharp));
        if (selfadjoint) worst = std::max(worst, mat_norm(e - e.adjoint(), sharp));
        for (size_t j = 0; j < idempotents.size(); ++j)
            if (i != j) worst = std::max(worst, mat_norm(e * idempotents[j], sharp));
        sum += e;
    }
    worst = std::max(worst, mat_norm(sum - ComplexMatrix::identity(n), sharp));
    return worst;
}

AlgebraicElement decompose(const ComplexMatrix& a, const SpectrumSpec& spec, const Tolerances& tol) {
    if (!a.is_square()) throw Error(ErrorKind::NotAlgebraic, "element must be square");
    if (!a.all_finite()) throw Error(ErrorKind::NotAlgebraic, "element has non-finite entries");

    const double norm_a = operator_norm(a);
    const double scale = spec.membership_scale(norm_a);
    const double resid = spec.membership_residual(a);
    if (resid > tol.membership() * scale)
        throw Error(ErrorKind::NotAlgebraic,
                    "||p(a)|| = " + std::to_string(resid) + " exceeds " +
                        std::to_string(tol.membership() * scale));

    AlgebraicElement out;
    out.matrix = a;
    out.spec = spec;
    out.residual = resid;

    const int n = spec.size();
    out.partition.idempotents.reserve(n);
    for (int i = 0; i < n; ++i) {
        // factored Lagrange evaluation: prod_{j != i} (a - root_j) / (root_i - root_j)
        ComplexMatrix e = ComplexMatrix::identity(a.rows());
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            e = e * shift(a, spec.roots[j]) * cplx(1.0 / (spec.roots[i] - spec.roots[j]));
        }
        out.partition.idempotents.push_back(std::move(e));
    }

    double emax = 1.0;
    for (const ComplexMatrix& e : out.partition.idempotents)
        emax = std::max(emax, operator_norm(e));
    out.partition.tol_used = tol.partition() * emax * emax;
    const double presid = partition_residual(out.partition.idempotents, spec.real_only);
    if (presid > out.partition.tol_used)
        throw Error(ErrorKind::NotAlgebraic, "derived idempotents fail the partition invariants");
    return out;
}

ComplexMatrix riesz_idempotent(const ComplexMatrix& a, int i, const SpectrumSpec& spec, int quad_points) {
    if (i < 0 || i >= spec.size()) throw Error(ErrorKind::IndexOutOfRange, "root index");
    const double radius = spec.min_gap / 3.0;
    const int n = a.rows();
    const cplx center = spec.roots[i];

    ComplexMatrix acc(n, n);
    for (int k = 0; k < quad_points; ++k) {
        const double theta = 2.0 * M_PI * k / quad_points;
        const cplx unit(std::cos(theta), std::sin(theta));
        const cplx z = center + radius * unit;
        acc += resolvent_apply(a, z) * unit;
    }
    return acc * cplx(radius / quad_points);
}

ComplexMatrix reconstruct(const PartitionOfUnity& pou, const SpectrumSpec& spec, const Tolerances& tol) {
    if (static_cast<int>(pou.idempotents.size()) != spec.size())
        throw Error(ErrorKind::InvalidPartition, "idempotent count does not match root count");
    double emax = 1.0;
    for (const ComplexMatrix& e : pou.idempotents) emax = std::max(emax, operator_norm(e));
    if (partition_residual(pou.idempotents, spec.real_only) > tol.partition() * emax * emax)
        throw Error(ErrorKind::InvalidPartition, "partition-of-unity invariants violated");

    const int n = pou.idempotents[0].rows();
    ComplexMatrix a(n, n);
    for (int i = 0; i < spec.size(); ++i) a += pou.idempotents[i] * spec.roots[i];

    const double scale = spec.membership_scale(operator_norm(a));
    if (spec.membership_residual(a) > tol.membership() * scale * emax)
        throw Error(ErrorKind::InvalidPartition, "reconstructed element is not algebraic");
    return a;
}

std::vector<std::pair<cplx, ComplexMatrix>>
canonicalize(const std::vector<std::pair<cplx, ComplexMatrix>>& values_and_idempotents,
             const Tolerances& tol) {
    std::vector<ComplexMatrix> es;
    es.reserve(values_and_idempotents.size());
    for (const auto& [v, e] : values_and_idempotents) es.push_back(e);
    double emax = 1.0;
    for (const ComplexMatrix& e : es) emax = std::max(emax, operator_norm(e));
    if (partition_residual(es) > tol.partition() * emax * emax)
        throw Error(ErrorKind::InvalidPartition, "input list is not a partition of unity");

    std::vector<std::pair<cplx, ComplexMatrix>> keep;
    for (const auto& [v, e] : values_and_idempotents)
        if (operator_norm(e) > Tolerances::zero_idempotent) keep.emplace_back(v, e);

    std::sort(keep.begin(), keep.end(), [](const auto& l, const auto& r) {
        if (l.first.real() != r.first.real()) return l.first.real() < r.first.real();
        return l.first.imag() < r.first.imag();
    });
    return keep;
}

double continuity_bound(const SpectrumSpec& spec, double norm_a, double norm_eps, int i) {
    if (i < 0 || i >= spec.size()) throw Error(ErrorKind::IndexOutOfRange, "root index");
    double grown = 1.0, plain = 1.0, denom = 1.0;
    for (int j = 0; j < spec.size(); ++j) {
        if (j == i) continue;
        grown *= norm_a + norm_eps + std::abs(spec.roots[j]);
        plain *= norm_a + std::abs(spec.roots[j]);
        denom *= std::abs(spec.roots[i] - spec.roots[j]);
    }
    return (grown - plain) / denom;
}

} // namespace algpaths
