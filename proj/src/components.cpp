#include "algpaths/components.hpp"

#include "algpaths/errors.hpp"
#include "algpaths/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace algpaths {

std::string ComponentSignature::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < multiplicities.size(); ++i) {
        if (i) os << ";";
        os << multiplicities[i];
    }
    return os.str();
}

ComponentSignature signature(const AlgebraicElement& a) {
    ComponentSignature sig;
    sig.dim = a.matrix.rows();
    for (const ComplexMatrix& e : a.partition.idempotents) {
        const cplx tr = e.trace();
        const double rounded = std::round(tr.real());
        if (std::abs(tr.real() - rounded) > 1e-6 || std::abs(tr.imag()) > 1e-6)
            throw Error(ErrorKind::NonIntegerTrace,
                        "idempotent trace " + std::to_string(tr.real()) + " is not near an integer");
        sig.multiplicities.push_back(static_cast<int>(rounded));
    }
    int total = 0;
    for (int m : sig.multiplicities) total += m;
    if (total != sig.dim)
        throw Error(ErrorKind::NonIntegerTrace, "multiplicities do not sum to the dimension");
    return sig;
}

namespace {

std::vector<double> eigenvalue_list(const ComponentSignature& sig, const SpectrumSpec& spec) {
    std::vector<double> vals;
    vals.reserve(sig.dim);
    for (size_t i = 0; i < sig.multiplicities.size(); ++i)
        for (int k = 0; k < sig.multiplicities[i]; ++k) vals.push_back(spec.roots[i].real());
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

} // namespace

double component_distance_oracle(const ComponentSignature& sig0, const ComponentSignature& sig1,
                                 const SpectrumSpec& spec) {
    if (!spec.real_only)
        throw Error(ErrorKind::NotHermitian, "distance oracle is defined for real spectra");
    if (sig0.dim != sig1.dim) throw Error(ErrorKind::DimMismatch, "signatures of different dimension");
    const std::vector<double> l0 = eigenvalue_list(sig0, spec);
    const std::vector<double> l1 = eigenvalue_list(sig1, spec);
    double d = 0.0;
    for (size_t k = 0; k < l0.size(); ++k) d = std::max(d, std::abs(l0[k] - l1[k]));
    return d;
}

double component_distance_lower_bound(const SpectrumSpec& spec) {
    const int n = spec.size();
    const double dmin = spec.min_gap;
    double best = 0.0;
    bool first = true;
    for (int i = 0; i < n; ++i) {
        double num = 1.0, grown = 1.0, plain = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            num *= std::abs(spec.roots[i] - spec.roots[j]);
            double mj = 0.0;
            for (int k = 0; k < n; ++k)
                if (k != j) mj = std::max(mj, std::abs(spec.roots[k] - spec.roots[j]));
            grown *= mj + dmin;
            plain *= mj;
        }
        const double ratio = num / (grown - plain);
        if (first || ratio < best) { best = ratio; first = false; }
    }
    return dmin * best;
}

std::vector<ComponentSignature> all_signatures(int n_roots, int dim) {
    std::vector<ComponentSignature> out;
    std::vector<int> cur(n_roots, 0);
    // lexicographic enumeration of compositions of dim into n_roots parts
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n_roots - 1) {
            cur[pos] = remaining;
            out.push_back({cur, dim});
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, dim);
    return out;
}

ConjectureReport conjecture_experiment(const SpectrumSpec& spec, int dim, int trials, uint64_t seed) {
    ConjectureReport report;
    report.seed = seed;
    const double bound = component_distance_lower_bound(spec);
    const std::vector<ComponentSignature> sigs = all_signatures(spec.size(), dim);

    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t p = 0; p < sigs.size(); ++p)
        for (size_t q = p + 1; q < sigs.size(); ++q) pairs.emplace_back(p, q);

    for (const auto& [p, q] : pairs) {
        ConjectureRow row;
        row.spec_id = spec.id_string();
        row.dim = dim;
        row.sig0 = sigs[p];
        row.sig1 = sigs[q];
        row.oracle = component_distance_oracle(sigs[p], sigs[q], spec);
        row.bound = bound;
        row.min_gap = spec.min_gap;
        row.bound_le_oracle = row.bound <= row.oracle + 1e-12;
        row.oracle_ge_gap = row.oracle >= row.min_gap - 1e-12;
        if (!row.bound_le_oracle) ++report.bound_violations;
        if (!row.oracle_ge_gap) ++report.conjecture_flags;
        report.rows.push_back(std::move(row));

        // common-eigenbasis attainment: sorted diagonal models realize the oracle
        const ComplexMatrix d0 = ComplexMatrix::diagonal(
            [&] { std::vector<cplx> v; for (double x : eigenvalue_list(sigs[p], spec)) v.push_back(x); return v; }());
        const ComplexMatrix d1 = ComplexMatrix::diagonal(
            [&] { std::vector<cplx> v; for (double x : eigenvalue_list(sigs[q], spec)) v.push_back(x); return v; }());
        report.worst_attainment_error = std::max(
            report.worst_attainment_error, std::abs(operator_norm(d0 - d1) - report.rows.back().oracle));
    }

    // randomized search: no conjugated pair may undercut the oracle
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto& [p, q] = pairs[t % pairs.size()];
        const ComplexMatrix u = rng.random_unitary(dim);
        const ComplexMatrix v = rng.random_unitary(dim);
        ComplexMatrix a(dim, dim), b(dim, dim);
        {
            const auto l0 = eigenvalue_list(sigs[p], spec);
            const auto l1 = eigenvalue_list(sigs[q], spec);
            ComplexMatrix d0(dim, dim), d1(dim, dim);
            for (int k = 0; k < dim; ++k) { d0(k, k) = l0[k]; d1(k, k) = l1[k]; }
            a = u * d0 * u.adjoint();
            b = v * d1 * v.adjoint();
        }
        const double realized = operator_norm(a - b);
        const double oracle = component_distance_oracle(sigs[p], sigs[q], spec);
        if (realized < oracle - 1e-9) ++report.sampling_violations;
        ++report.trials_run;
    }
    return report;
}

std::string conjecture_csv(const ConjectureReport& report) {
    std::ostringstream os;
    os << "spec_id,dim,sig0,sig1,oracle,bound18,min_gap,bound_le_oracle,oracle_ge_gap,seed\n";
    os.precision(17);
    for (const ConjectureRow& r : report.rows) {
        os << '"' << r.spec_id << '"' << "," << r.dim << "," << r.sig0.to_string() << "," << r.sig1.to_string()
           << "," << r.oracle << "," << r.bound << "," << r.min_gap << ","
           << (r.bound_le_oracle ? 1 : 0) << "," << (r.oracle_ge_gap ? 1 : 0) << "," << report.seed
           << "\n";
    }
    return os.str();
}

bool centrality_test(const ComplexMatrix& a, const Tolerances& tol) {
    const int n = a.rows();
    const cplx mean = a.trace() * cplx(1.0 / n);
    const double dev = operator_norm(shift(a, mean));
    return dev <= tol.base * std::max(1.0, operator_norm(a));
}

bool centrality_test_spectral(const AlgebraicElement& a, const Tolerances& tol) {
    const int dim = a.matrix.rows();
    double emax = 1.0;
    for (const ComplexMatrix& e : a.partition.idempotents) emax = std::max(emax, operator_norm(e));
    const double threshold = tol.base * emax * emax;
    for (size_t i = 0; i < a.partition.idempotents.size(); ++i) {
        for (size_t j = 0; j < a.partition.idempotents.size(); ++j) {
            if (i == j) continue;
            const ComplexMatrix& ei = a.partition.idempotents[i];
            const ComplexMatrix& ej = a.partition.idempotents[j];
            // e_i E_{rs} e_j is the outer product of column r of e_i with row s of e_j
            for (int r = 0; r < dim; ++r) {
                double colnorm = 0.0;
                for (int k = 0; k < dim; ++k) colnorm += std::norm(ei(k, r));
                for (int s = 0; s < dim; ++s) {
                    double rownorm = 0.0;
                    for (int k = 0; k < dim; ++k) rownorm += std::norm(ej(s, k));
                    if (std::sqrt(colnorm * rownorm) > threshold) return false;
                }
            }
        }
    }
    return true;
}

LineEmbedding line_embedding(const AlgebraicElement& a, const ComplexMatrix& x, int i, int j,
                             const Tolerances& tol) {
    if (i == j || i < 0 || j < 0 || i >= a.spec.size() || j >= a.spec.size())
        throw Error(ErrorKind::IndexOutOfRange, "need two distinct valid root indices");
    LineEmbedding line;
    line.base = a.matrix;
    const ComplexMatrix exe = a.partition.idempotents[i] * x * a.partition.idempotents[j];
    line.direction = exe * (a.spec.roots[i] - a.spec.roots[j]);
    line.nonconstant = operator_norm(exe) > tol.base * std::max(1.0, operator_norm(x));
    return line;
}

std::array<double, 3> sphere_coordinates(const ComplexMatrix& T) {
    if (T.rows() != 2 || T.cols() != 2)
        throw Error(ErrorKind::NotRankOneProjection, "need a 2x2 matrix");
    const double scale = std::max(1.0, T.frobenius_norm());
    if (hermitian_defect(T) > Tolerances::hermitian * scale)
        throw Error(ErrorKind::NotRankOneProjection, "not Hermitian");
    if ((T * T - T).frobenius_norm() > 1e-9 * scale)
        throw Error(ErrorKind::NotRankOneProjection, "not idempotent");
    if (std::abs(T.trace().real() - 1.0) > 1e-6)
        throw Error(ErrorKind::NotRankOneProjection, "trace is not 1");

    const double a = T(0, 0).real();
    const double c = T(0, 1).real();
    const double d = T(0, 1).imag();
    const double defect = std::abs((a - 0.5) * (a - 0.5) + c * c + d * d - 0.25);
    if (defect > 1e-10)
        throw Error(ErrorKind::NotRankOneProjection, "sphere constraint defect " + std::to_string(defect));
    return {a, c, d};
}

double polynomial_fit_residual(const std::vector<double>& ts,
                               const std::vector<ComplexMatrix>& samples, int max_degree) {
    const int m = static_cast<int>(ts.size());
    const int cols = max_degree + 1;
    const double lo = *std::min_element(ts.begin(), ts.end());
    const double hi = *std::max_element(ts.begin(), ts.end());

    // Chebyshev basis on the sample range keeps the normal equations sane.
    ComplexMatrix v(m, cols);
    for (int r = 0; r < m; ++r) {
        const double x = (hi > lo) ? (2.0 * (ts[r] - lo) / (hi - lo) - 1.0) : 0.0;
        double tkm1 = 1.0, tk = x;
        for (int c = 0; c < cols; ++c) {
            if (c == 0) v(r, c) = 1.0;
            else if (c == 1) v(r, c) = x;
            else {
                const double next = 2.0 * x * tk - tkm1;
                tkm1 = tk;
                tk = next;
                v(r, c) = next;
            }
        }
    }
    const ComplexMatrix vh = v.adjoint();
    const ComplexMatrix gram = vh * v;
    const LuFactors lu = lu_factor(gram);

    const int dim = samples[0].rows();
    double worst = 0.0;
    for (int er = 0; er < dim; ++er) {
        for (int ec = 0; ec < samples[0].cols(); ++ec) {
            ComplexMatrix y(m, 1);
            for (int r = 0; r < m; ++r) y(r, 0) = samples[r](er, ec);
            const ComplexMatrix coef = lu.solve(vh * y);
            const ComplexMatrix fit = v * coef;
            for (int r = 0; r < m; ++r) worst = std::max(worst, std::abs(fit(r, 0) - y(r, 0)));
        }
    }
    return worst;
}

} // namespace algpaths
