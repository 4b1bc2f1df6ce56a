#include "algpaths/paths.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace algpaths {

namespace {

void require_idempotent(const ComplexMatrix& e, const Tolerances& tol, const char* which) {
    const double scale = std::max(1.0, operator_norm(e));
    if (operator_norm(e * e - e) > tol.partition() * scale * scale)
        throw Error(ErrorKind::NotIdempotent, which);
}

double idempotent_gap(const ComplexMatrix& e0, const ComplexMatrix& e1) {
    return operator_norm(e1 - e0);
}

void require_same_spec(const AlgebraicElement& a0, const AlgebraicElement& a1) {
    if (a0.spec.size() != a1.spec.size())
        throw Error(ErrorKind::DimMismatch, "elements carry different spectra");
    for (int i = 0; i < a0.spec.size(); ++i)
        if (std::abs(a0.spec.roots[i] - a1.spec.roots[i]) > 1e-12)
            throw Error(ErrorKind::DimMismatch, "elements carry different spectra");
}

ComplexMatrix exp_window(const std::vector<ComplexMatrix>& gens, double t, bool inverse_side) {
    // inverse_side: exp(-c_m t) ... exp(-c_1 t); else exp(c_1 t) ... exp(c_m t)
    const int n = gens.empty() ? 0 : gens[0].rows();
    ComplexMatrix acc = ComplexMatrix::identity(n);
    if (inverse_side) {
        for (size_t k = gens.size(); k-- > 0;) acc = acc * mat_exp(gens[k] * cplx(-t));
    } else {
        for (size_t k = 0; k < gens.size(); ++k) acc = acc * mat_exp(gens[k] * cplx(t));
    }
    return acc;
}

} // namespace

ComplexMatrix PathSegment::eval(double t) const {
    if (const auto* e = std::get_if<ExpSegment>(&seg)) {
        if (e->generators.empty()) return e->a0;
        return exp_window(e->generators, t, true) * e->a0 * exp_window(e->generators, t, false);
    }
    if (const auto* l = std::get_if<LinearSegment>(&seg))
        return l->start * cplx(1.0 - t) + l->end * cplx(t);

    const auto& es = std::get<EsterleSegment>(seg);
    const int n = es.a0.rows();
    ComplexMatrix left(n, n), right(n, n);
    const ComplexMatrix id = ComplexMatrix::identity(n);
    for (size_t i = 0; i < es.idempotents.size(); ++i) {
        const ComplexMatrix& d = es.generators[i].d;
        const ComplexMatrix& dp = es.generators[i].d_prime;
        left += (id + dp * cplx(t)) * (id + d * cplx(t)) * es.idempotents[i];
        right += es.idempotents[i] * (id - d * cplx(t)) * (id - dp * cplx(t));
    }
    return left * es.a0 * right;
}

const char* PathSegment::type_tag() const {
    if (std::holds_alternative<ExpSegment>(seg)) return "exp";
    if (std::holds_alternative<LinearSegment>(seg)) return "linear";
    return "esterle";
}

ComplexMatrix PiecewisePath::eval(double t) const {
    const size_t k = segments.size();
    t = std::clamp(t, 0.0, 1.0);
    size_t idx = std::min(static_cast<size_t>(t * k), k - 1);
    return segments[idx].eval(t * k - idx);
}

double PiecewisePath::worst_membership() const {
    double w = 0.0;
    for (const SegmentResiduals& r : grid_residuals) w = std::max(w, r.membership_max);
    return w;
}

void validate_path(PiecewisePath& path, const SpectrumSpec& spec, const Tolerances& tol) {
    path.grid_residuals.assign(path.segments.size(), SegmentResiduals{});
    for (size_t s = 0; s < path.segments.size(); ++s) {
        SegmentResiduals& res = path.grid_residuals[s];
        for (int k = 0; k < tol.grid_points; ++k) {
            const double t = static_cast<double>(k) / (tol.grid_points - 1);
            const ComplexMatrix a = path.segments[s].eval(t);
            res.membership_max = std::max(res.membership_max, spec.apply_p(a).frobenius_norm());
            if (spec.real_only)
                res.selfadjoint_max = std::max(res.selfadjoint_max, hermitian_defect(a));
        }
        if (s + 1 < path.segments.size()) {
            const ComplexMatrix join = path.segments[s].end() - path.segments[s + 1].start();
            if (join.frobenius_norm() > tol.endpoint() * std::max(1.0, path.segments[s].end().frobenius_norm()))
                throw Error(ErrorKind::InvalidPartition, "consecutive path segments do not join");
        }
    }
}

ComplexMatrix kovarik_element(const ComplexMatrix& e0, const ComplexMatrix& e1, const Tolerances& tol) {
    require_idempotent(e0, tol, "first argument is not idempotent");
    require_idempotent(e1, tol, "second argument is not idempotent");
    const double gap = idempotent_gap(e0, e1);
    if (gap >= 1.0 - Tolerances::domain_guard)
        throw Error(ErrorKind::TooFar, "||e1 - e0|| = " + std::to_string(gap));

    const ComplexMatrix mid = shift(e0 + e1, cplx(1.0)); // e0 + e1 - 1
    return e1 * mat_inverse(mid * mid) * e0;
}

PiecewisePath two_segment_path(const ComplexMatrix& e0, const ComplexMatrix& e1, const Tolerances& tol) {
    const ComplexMatrix g = kovarik_element(e0, e1, tol);
    PiecewisePath path;
    path.segments.push_back({LinearSegment{e0, g}});
    path.segments.push_back({LinearSegment{g, e1}});
    validate_path(path, SpectrumSpec::make({cplx(0.0), cplx(1.0)}), tol);
    return path;
}

ComplexMatrix idempotent_similarity(const ComplexMatrix& e0, const ComplexMatrix& e1, const Tolerances& tol) {
    require_idempotent(e0, tol, "first argument is not idempotent");
    require_idempotent(e1, tol, "second argument is not idempotent");
    const double gap = idempotent_gap(e0, e1);
    if (gap >= 1.0 - Tolerances::domain_guard)
        throw Error(ErrorKind::TooFar, "||e1 - e0|| = " + std::to_string(gap));

    const ComplexMatrix id = ComplexMatrix::identity(e0.rows());
    return e1 * e0 + (id - e1) * (id - e0);
}

NilpotentPair nilpotent_generators(const ComplexMatrix& e0, const ComplexMatrix& e1, const Tolerances& tol) {
    const ComplexMatrix g = kovarik_element(e0, e1, tol);
    return NilpotentPair{g - e0, g - e1};
}

SimilarityCertificate ep_similarity(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                    const Tolerances& tol) {
    require_same_spec(a0, a1);
    const int n = a0.spec.size();
    const int dim = a0.matrix.rows();

    SimilarityCertificate cert;
    cert.s = ComplexMatrix::zero(dim, dim);
    cert.s_inverse = ComplexMatrix::zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix& e0i = a0.partition.idempotents[i];
        const ComplexMatrix& e1i = a1.partition.idempotents[i];
        const double gap = idempotent_gap(e0i, e1i);
        if (gap >= 1.0 - Tolerances::domain_guard)
            throw Error(ErrorKind::TooFar, "index " + std::to_string(i) + " gap " + std::to_string(gap));
        const ComplexMatrix u = idempotent_similarity(e0i, e1i, tol);
        cert.s += e0i * mat_inverse(u); // s_i = u_i^{-1}
        cert.s_inverse += u * e0i;
    }

    if (operator_norm(shift(cert.s, cplx(1.0))) < 1.0 - Tolerances::domain_guard)
        cert.generators.push_back(mat_log_principal(cert.s));
    return cert;
}

PiecewisePath exp_path(const ComplexMatrix& a0, const SimilarityCertificate& cert,
                       const SpectrumSpec& spec, const Tolerances& tol) {
    if (!cert.has_generators())
        throw Error(ErrorKind::LogOutOfDomain, "certificate carries no exponential generators");
    PiecewisePath path;
    path.segments.push_back({ExpSegment{a0, cert.generators}});
    validate_path(path, spec, tol);
    return path;
}

PiecewisePath esterle_candidate_path(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                     const Tolerances& tol) {
    require_same_spec(a0, a1);
    const int n = a0.spec.size();

    EsterleSegment seg;
    seg.a0 = a0.matrix;
    seg.idempotents = a0.partition.idempotents;
    for (int i = 0; i < n; ++i)
        seg.generators.push_back(
            nilpotent_generators(a0.partition.idempotents[i], a1.partition.idempotents[i], tol));

    PiecewisePath path;
    path.segments.push_back({std::move(seg)});
    validate_path(path, a0.spec, tol);

    const double end_scale = std::max(1.0, operator_norm(a1.matrix));
    if (operator_norm(path.end() - a1.matrix) > 1e-8 * end_scale)
        throw Error(ErrorKind::TooFar, "product path missed its endpoint");

    if (n == 2) {
        // Rigorous for two roots: the second interpolate is the complement of
        // the first, so the path cannot leave the variety.
        const double scale = a0.spec.membership_scale(operator_norm(a0.matrix));
        if (path.worst_membership() > 1e-9 * scale)
            throw Error(ErrorKind::NotAlgebraic, "two-root product path left the variety");
    }
    return path;
}

PolygonalLadder polygonal_ladder(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                 const Tolerances& tol) {
    require_same_spec(a0, a1);
    const int n = a0.spec.size();
    const int dim = a0.matrix.rows();
    const ComplexMatrix id = ComplexMatrix::identity(dim);

    PolygonalLadder ladder;
    ladder.spec = a0.spec;
    ladder.rows.push_back(a0.partition.idempotents);

    double emax = 1.0;
    for (const ComplexMatrix& e : a0.partition.idempotents) emax = std::max(emax, operator_norm(e));
    for (const ComplexMatrix& e : a1.partition.idempotents) emax = std::max(emax, operator_norm(e));

    for (int step = 1; step <= n; ++step) {
        const std::vector<ComplexMatrix>& prev = ladder.rows.back();
        const int idx = step - 1;
        ComplexMatrix g;
        try {
            g = kovarik_element(prev[idx], a1.partition.idempotents[idx], tol);
        } catch (const Error& e) {
            throw Error(ErrorKind::LadderBroken,
                        "step " + std::to_string(step) + " index " + std::to_string(idx) + " (" + e.what() + ")");
        }
        std::vector<ComplexMatrix> row(n);
        row[idx] = g;
        for (int j = 0; j < n; ++j)
            if (j != idx) row[j] = prev[j] * (id - g);
        if (partition_residual(row, a0.spec.real_only) > tol.partition() * emax * emax * 10.0)
            throw Error(ErrorKind::LadderBroken,
                        "row " + std::to_string(step) + " is not a partition of unity");
        ladder.rows.push_back(std::move(row));
    }

    // Last row must reproduce the target partition.
    for (int j = 0; j < n; ++j) {
        const double err = operator_norm(ladder.rows[n][j] - a1.partition.idempotents[j]);
        if (err > 1e-7 * emax)
            throw Error(ErrorKind::LadderBroken,
                        "final row index " + std::to_string(j) + " misses the target by " + std::to_string(err));
    }
    return ladder;
}

PiecewisePath polygonal_path(const PolygonalLadder& ladder, const Tolerances& tol) {
    const int n = ladder.spec.size();
    const int dim = ladder.rows[0][0].rows();

    PiecewisePath path;
    for (int step = 1; step <= n; ++step) {
        ComplexMatrix from(dim, dim), to(dim, dim);
        for (int j = 0; j < n; ++j) {
            from += ladder.rows[step - 1][j] * ladder.spec.roots[j];
            to += ladder.rows[step][j] * ladder.spec.roots[j];
        }
        path.segments.push_back({LinearSegment{std::move(from), std::move(to)}});
    }
    validate_path(path, ladder.spec, tol);
    return path;
}

SimilarityCertificate unitary_similarity(const AlgebraicElement& a0, const AlgebraicElement& a1,
                                         const Tolerances& tol) {
    require_same_spec(a0, a1);
    if (!a0.spec.real_only)
        throw Error(ErrorKind::NotHermitian, "unitary similarity needs a real spectrum");
    for (const ComplexMatrix* m : {&a0.matrix, &a1.matrix})
        if (hermitian_defect(*m) > Tolerances::hermitian * std::max(1.0, m->frobenius_norm()))
            throw Error(ErrorKind::NotHermitian, "endpoint is not Hermitian");

    const int n = a0.spec.size();
    const int dim = a0.matrix.rows();
    SimilarityCertificate cert;
    cert.unitary = true;
    cert.s = ComplexMatrix::zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix& e0i = a0.partition.idempotents[i];
        const ComplexMatrix& e1i = a1.partition.idempotents[i];
        const double gap = idempotent_gap(e0i, e1i);
        if (gap >= 1.0 - Tolerances::domain_guard)
            throw Error(ErrorKind::TooFar, "index " + std::to_string(i) + " gap " + std::to_string(gap));
        const ComplexMatrix u = idempotent_similarity(e0i, e1i, tol);
        const ComplexMatrix w = u * herm_inv_sqrt(u.adjoint() * u); // polar factor, unitary
        cert.s += e0i * w.adjoint();                                 // s_i = w^{-1} = w*
    }
    cert.s_inverse = cert.s.adjoint();

    if (operator_norm(shift(cert.s, cplx(1.0))) < 1.0 - Tolerances::domain_guard) {
        ComplexMatrix c = mat_log_principal(cert.s);
        c = (c - c.adjoint()) * cplx(0.5); // log of a unitary is skew-Hermitian
        cert.generators.push_back(std::move(c));
    }
    return cert;
}

ChainResult chain_path(const std::vector<AlgebraicElement>& waypoints, PathMode mode,
                       const Tolerances& tol) {
    if (waypoints.size() < 2)
        throw Error(ErrorKind::LinkTooFar, "need at least two waypoints");
    for (size_t k = 0; k + 1 < waypoints.size(); ++k) {
        require_same_spec(waypoints[k], waypoints[k + 1]);
        for (int i = 0; i < waypoints[k].spec.size(); ++i) {
            const double gap = idempotent_gap(waypoints[k].partition.idempotents[i],
                                              waypoints[k + 1].partition.idempotents[i]);
            if (gap >= 0.5) // local radius policy: margin below the hard bound 1
                throw Error(ErrorKind::LinkTooFar,
                            "link " + std::to_string(k) + " index " + std::to_string(i) +
                                " gap " + std::to_string(gap));
        }
    }

    ChainResult out;
    if (mode == PathMode::Polygonal) {
        for (size_t k = 0; k + 1 < waypoints.size(); ++k) {
            PiecewisePath local = polygonal_path(polygonal_ladder(waypoints[k], waypoints[k + 1], tol), tol);
            for (auto& seg : local.segments) out.path.segments.push_back(std::move(seg));
        }
        validate_path(out.path, waypoints[0].spec, tol);
        return out;
    }

    SimilarityCertificate total;
    total.unitary = (mode == PathMode::Unitary);
    const int dim = waypoints[0].matrix.rows();
    total.s = ComplexMatrix::identity(dim);
    total.s_inverse = ComplexMatrix::identity(dim);
    for (size_t k = 0; k + 1 < waypoints.size(); ++k) {
        SimilarityCertificate local = (mode == PathMode::Unitary)
                                          ? unitary_similarity(waypoints[k], waypoints[k + 1], tol)
                                          : ep_similarity(waypoints[k], waypoints[k + 1], tol);
        if (!local.has_generators())
            throw Error(ErrorKind::LinkTooFar,
                        "link " + std::to_string(k) + ": similarity exponent out of the log domain");
        total.s = total.s * local.s;
        total.s_inverse = local.s_inverse * total.s_inverse;
        for (auto& g : local.generators) total.generators.push_back(std::move(g));
    }

    out.path.segments.push_back({ExpSegment{waypoints[0].matrix, total.generators}});
    validate_path(out.path, waypoints[0].spec, tol);
    out.certificate = std::move(total);
    return out;
}

} // namespace algpaths
