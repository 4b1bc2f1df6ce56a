#include "algpaths/lifting.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"
#include "algpaths/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace algpaths {

int QuotientModel::dim() const {
    int n = 0;
    for (int k : block_sizes) n += k;
    return n;
}

int QuotientModel::block_of(int index) const {
    int acc = 0;
    for (size_t b = 0; b < block_sizes.size(); ++b) {
        acc += block_sizes[b];
        if (index < acc) return static_cast<int>(b);
    }
    return blocks() - 1;
}

bool QuotientModel::in_algebra(const ComplexMatrix& x, double rel_tol) const {
    const double cut = rel_tol * std::max(1.0, x.max_abs());
    for (int r = 0; r < x.rows(); ++r)
        for (int c = 0; c < x.cols(); ++c)
            if (block_of(r) > block_of(c) && std::abs(x(r, c)) > cut) return false;
    return true;
}

ComplexMatrix QuotientModel::project0(const ComplexMatrix& x) const {
    ComplexMatrix out(x.rows(), x.cols());
    for (int r = 0; r < x.rows(); ++r)
        for (int c = 0; c < x.cols(); ++c)
            if (block_of(r) == block_of(c)) out(r, c) = x(r, c);
    return out;
}

ComplexMatrix QuotientModel::twist_at(cplx lambda) const {
    const int n = dim();
    if (twist_coeffs.empty()) return ComplexMatrix::identity(n);
    ComplexMatrix acc = twist_coeffs.back();
    for (size_t k = twist_coeffs.size() - 1; k-- > 0;) acc = acc * lambda + twist_coeffs[k];
    return acc;
}

ComplexMatrix QuotientModel::involution(const ComplexMatrix& x) const {
    const int n = x.rows();
    ComplexMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = std::conj(x(n - 1 - c, n - 1 - r));
    return out;
}

ComplexMatrix QuotientModel::random_kernel_element(Rng& rng) const {
    const int n = dim();
    ComplexMatrix k(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (block_of(r) < block_of(c)) k(r, c) = rng.complex_gaussian();
    return k;
}

void QuotientModel::validate() const {
    if (block_sizes.empty()) throw Error(ErrorKind::ParseError, "quotient model needs block sizes");
    for (int k : block_sizes)
        if (k <= 0) throw Error(ErrorKind::ParseError, "block sizes must be positive");
    if (involutive) {
        for (size_t i = 0; i < block_sizes.size(); ++i)
            if (block_sizes[i] != block_sizes[block_sizes.size() - 1 - i])
                throw Error(ErrorKind::ParseError, "flip involution needs palindromic block sizes");
    }
    for (const ComplexMatrix& c : twist_coeffs) {
        if (c.rows() != dim() || c.cols() != dim())
            throw Error(ErrorKind::ParseError, "twist coefficient of wrong shape");
        for (int r = 0; r < c.rows(); ++r)
            for (int cc = 0; cc < c.cols(); ++cc)
                if (block_of(r) != block_of(cc) && std::abs(c(r, cc)) != 0.0)
                    throw Error(ErrorKind::ParseError, "twist coefficients must be block-diagonal");
    }
}

ComplexMatrix project(const QuotientModel& model, const ComplexMatrix& x, cplx lambda) {
    if (!model.in_algebra(x))
        throw Error(ErrorKind::NotInAlgebra, "strictly lower blocks are not zero");
    const ComplexMatrix diag = model.project0(x);
    if (!model.has_twist()) return diag;
    const ComplexMatrix v = model.twist_at(lambda);
    return v * diag * mat_inverse(v);
}

ComplexMatrix AnalyticFamily::eval(cplx lambda) const {
    ComplexMatrix acc = coeffs.back();
    for (size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * lambda + coeffs[k];
    return acc;
}

namespace {

struct PointLift {
    ComplexMatrix a;
    double membership_abs = 0.0;
    double projection_err = 0.0;
};

// a(l) = sum_i root_i * riesz(x(l), i), with the last idempotent repaired to
// 1 - sum of the others so the lifted partition sums to one exactly.
PointLift lift_point(const QuotientModel& model, const AnalyticFamily& b, const SpectrumSpec& spec,
                     cplx lambda, const Tolerances& tol,
                     const std::function<ComplexMatrix(cplx)>* kernel_perturbation) {
    const int dim = model.dim();
    const ComplexMatrix bl = b.eval(lambda);
    const double bscale = spec.membership_scale(operator_norm(bl));
    if (spec.membership_residual(bl) > 10.0 * tol.membership() * bscale)
        throw Error(ErrorKind::NotLiftableInput, "target family leaves the variety");

    ComplexMatrix x;
    if (model.has_twist()) {
        const ComplexMatrix v = model.twist_at(lambda);
        x = mat_inverse(v) * bl * v;
    } else {
        x = bl;
    }
    if (kernel_perturbation) x += (*kernel_perturbation)(lambda);

    const int n = spec.size();
    std::vector<ComplexMatrix> lifted(n);
    ComplexMatrix partial(dim, dim);
    for (int i = 0; i + 1 < n; ++i) {
        lifted[i] = riesz_idempotent(x, i, spec, tol.quad_points);
        partial += lifted[i];
    }
    // Separation check: with the full family the contour integrals must
    // resolve the identity; a large defect means an eigenvalue escaped.
    const ComplexMatrix last_direct = riesz_idempotent(x, n - 1, spec, tol.quad_points);
    if (operator_norm(partial + last_direct - ComplexMatrix::identity(dim)) > 0.1)
        throw Error(ErrorKind::SpectralSeparationLost, "contour family does not resolve the identity");
    lifted[n - 1] = ComplexMatrix::identity(dim) - partial;

    PointLift out;
    out.a = ComplexMatrix::zero(dim, dim);
    for (int i = 0; i < n; ++i) out.a += lifted[i] * spec.roots[i];
    out.membership_abs = spec.membership_residual(out.a);
    out.projection_err = operator_norm(project(model, out.a, lambda) - bl);
    return out;
}

// Analyticity evidence: entrywise polynomial fit over the grid. Chebyshev
// basis for (numerically) real grids, scaled monomials for genuinely complex
// ones; both solved through the normal equations.
double analytic_fit_residual(const std::vector<cplx>& lambdas, const std::vector<ComplexMatrix>& values,
                             int degree) {
    const int m = static_cast<int>(lambdas.size());
    if (m == 0) return 0.0;
    const int cols = std::min(degree + 1, m);
    bool real_grid = true;
    double scale = 0.0;
    for (const cplx& l : lambdas) {
        real_grid = real_grid && std::abs(l.imag()) < 1e-14;
        scale = std::max(scale, std::abs(l));
    }
    if (scale == 0.0) scale = 1.0;

    ComplexMatrix v(m, cols);
    for (int r = 0; r < m; ++r) {
        if (real_grid) {
            const double x = lambdas[r].real() / scale;
            double tkm1 = 1.0, tk = x;
            for (int c = 0; c < cols; ++c) {
                if (c == 0) v(r, c) = 1.0;
                else if (c == 1) v(r, c) = x;
                else { const double next = 2.0 * x * tk - tkm1; tkm1 = tk; tk = next; v(r, c) = next; }
            }
        } else {
            cplx p = 1.0;
            for (int c = 0; c < cols; ++c) { v(r, c) = p; p *= lambdas[r] / scale; }
        }
    }
    const ComplexMatrix vh = v.adjoint();
    const LuFactors lu = lu_factor(vh * v);

    const int dim = values[0].rows();
    double worst = 0.0;
    for (int er = 0; er < dim; ++er)
        for (int ec = 0; ec < dim; ++ec) {
            ComplexMatrix y(m, 1);
            for (int r = 0; r < m; ++r) y(r, 0) = values[r](er, ec);
            const ComplexMatrix fit = v * lu.solve(vh * y);
            for (int r = 0; r < m; ++r) worst = std::max(worst, std::abs(fit(r, 0) - y(r, 0)));
        }
    return worst;
}

} // namespace

LiftReport lift_family(const QuotientModel& model, const AnalyticFamily& b, const SpectrumSpec& spec,
                       const std::vector<cplx>& grid, const Tolerances& tol,
                       const std::function<ComplexMatrix(cplx)>* kernel_perturbation) {
    model.validate();
    LiftReport report;
    report.fit_degree = b.degree() + 2 * model.blocks();

    for (const cplx& lambda : grid) {
        LiftCertRow row;
        row.lambda = lambda;
        PointLift pl;
        try {
            pl = lift_point(model, b, spec, lambda, tol, kernel_perturbation);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularMatrix || e.kind() == ErrorKind::ResolventSingular)
                throw Error(ErrorKind::SpectralSeparationLost,
                            "lambda = (" + std::to_string(lambda.real()) + "," +
                                std::to_string(lambda.imag()) + "): " + e.what());
            throw;
        }
        const double scale = spec.membership_scale(operator_norm(pl.a));
        row.membership = pl.membership_abs;
        row.projection_err = pl.projection_err;
        row.ok = pl.membership_abs <= 10.0 * tol.membership() * scale &&
                 pl.projection_err <= 10.0 * tol.membership() * std::max(1.0, operator_norm(b.eval(lambda)));
        if (!row.ok) row.failure = "certificate thresholds exceeded";
        report.rows.push_back(row);
        report.lifted.push_back(pl.a);
    }

    std::vector<cplx> ok_lambdas;
    std::vector<ComplexMatrix> ok_values;
    report.all_ok = true;
    for (size_t k = 0; k < report.rows.size(); ++k) {
        if (report.rows[k].ok) {
            ok_lambdas.push_back(report.rows[k].lambda);
            ok_values.push_back(report.lifted[k]);
        } else {
            report.all_ok = false;
        }
    }
    report.fit_residual = analytic_fit_residual(ok_lambdas, ok_values, report.fit_degree);
    return report;
}

LiftReport lift_family_selfadjoint(const QuotientModel& model, const AnalyticFamily& b,
                                   const SpectrumSpec& spec, const std::vector<double>& grid,
                                   const Tolerances& tol) {
    model.validate();
    if (!model.involutive)
        throw Error(ErrorKind::NotLiftableInput, "model carries no involution");
    if (!spec.real_only)
        throw Error(ErrorKind::NotLiftableInput, "self-adjoint lift needs a real spectrum");

    LiftReport report;
    report.fit_degree = b.degree() + 2 * model.blocks();

    for (double lr : grid) {
        const cplx lambda(lr, 0.0);
        const ComplexMatrix bl = b.eval(lambda);
        if (operator_norm(model.involution(bl) - bl) >
            1e-8 * std::max(1.0, operator_norm(bl)))
            throw Error(ErrorKind::NotLiftableInput, "target family is not involution-fixed");

        LiftCertRow row;
        row.lambda = lambda;
        PointLift pl;
        try {
            pl = lift_point(model, b, spec, lambda, tol, nullptr);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularMatrix || e.kind() == ErrorKind::ResolventSingular)
                throw Error(ErrorKind::SpectralSeparationLost, e.what());
            throw;
        }

        ComplexMatrix sym = (pl.a + model.involution(pl.a)) * cplx(0.5);
        const double scale = spec.membership_scale(operator_norm(sym));
        const double sym_membership = spec.membership_residual(sym);
        row.membership = sym_membership;
        row.projection_err = operator_norm(project(model, sym, lambda) - bl);
        row.selfadjoint_err = operator_norm(model.involution(sym) - sym);
        row.ok = sym_membership <= 10.0 * tol.membership() * scale &&
                 row.projection_err <= 10.0 * tol.membership() * std::max(1.0, operator_norm(bl)) &&
                 row.selfadjoint_err <= 10.0 * tol.membership() * std::max(1.0, operator_norm(sym));
        if (!row.ok) {
            if (pl.membership_abs <= 10.0 * tol.membership() * scale &&
                sym_membership > 10.0 * tol.membership() * scale) {
                report.symmetrization_broke_membership = true;
                row.failure = "symmetrization broke membership";
            } else {
                row.failure = "certificate thresholds exceeded";
            }
        }
        report.rows.push_back(row);
        report.lifted.push_back(std::move(sym));
    }

    std::vector<cplx> ok_lambdas;
    std::vector<ComplexMatrix> ok_values;
    report.all_ok = true;
    for (size_t k = 0; k < report.rows.size(); ++k) {
        if (report.rows[k].ok) {
            ok_lambdas.push_back(report.rows[k].lambda);
            ok_values.push_back(report.lifted[k]);
        } else {
            report.all_ok = false;
        }
    }
    report.fit_residual = analytic_fit_residual(ok_lambdas, ok_values, report.fit_degree);
    return report;
}

LocalLiftResult local_lift(const QuotientModel& model, const AnalyticFamily& b,
                           const SpectrumSpec& spec, const std::vector<cplx>& grid,
                           const Tolerances& tol) {
    model.validate();
    std::vector<cplx> sorted = grid;
    std::sort(sorted.begin(), sorted.end(), [](const cplx& l, const cplx& r) {
        const double ml = std::abs(l), mr = std::abs(r);
        if (ml != mr) return ml < mr;
        if (l.real() != r.real()) return l.real() < r.real();
        return l.imag() < r.imag();
    });

    LocalLiftResult out;
    bool first = true;
    for (const cplx& lambda : sorted) {
        LiftCertRow row;
        row.lambda = lambda;
        bool passed = false;
        std::string reason;
        try {
            const PointLift pl = lift_point(model, b, spec, lambda, tol, nullptr);
            const double scale = spec.membership_scale(operator_norm(pl.a));
            row.membership = pl.membership_abs;
            row.projection_err = pl.projection_err;
            passed = pl.membership_abs <= 10.0 * tol.membership() * scale &&
                     pl.projection_err <=
                         10.0 * tol.membership() * std::max(1.0, operator_norm(b.eval(lambda)));
            if (!passed) reason = "certificate thresholds exceeded";
        } catch (const Error& e) {
            reason = e.what();
        }
        if (first && !passed)
            throw Error(ErrorKind::NotLiftableAtZero, "innermost grid point failed: " + reason);
        first = false;
        if (!passed) {
            out.truncated = true;
            out.stopped_at = lambda;
            out.stop_reason = reason;
            break;
        }
        row.ok = true;
        out.report.rows.push_back(row);
        out.radius = std::abs(lambda);
    }

    // Re-run the certified prefix through the full reporter for the lifted
    // values and the analyticity evidence.
    std::vector<cplx> certified;
    for (const LiftCertRow& r : out.report.rows) certified.push_back(r.lambda);
    if (!certified.empty()) out.report = lift_family(model, b, spec, certified, tol);
    return out;
}

} // namespace algpaths
