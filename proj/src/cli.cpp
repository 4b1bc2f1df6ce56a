#include "algpaths/cli.hpp"

#include "algpaths/components.hpp"
#include "algpaths/errors.hpp"
#include "algpaths/json_io.hpp"
#include "algpaths/lifting.hpp"
#include "algpaths/linalg.hpp"
#include "algpaths/partition.hpp"
#include "algpaths/paths.hpp"
#include "algpaths/random_elements.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace algpaths {

namespace {

Tolerances make_tolerances(const RunConfig& config) {
    Tolerances tol;
    tol.base = config.tol;
    tol.grid_points = config.grid;
    return tol;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

std::string csv_of_path(const PiecewisePath& path, const SpectrumSpec& spec, int samples) {
    std::ostringstream os;
    os.precision(17);
    os << "t,membership,deviation\n";
    const ComplexMatrix a0 = path.start();
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const ComplexMatrix a = path.eval(t);
        os << t << "," << spec.membership_residual(a) << "," << operator_norm(a - a0) << "\n";
    }
    return os.str();
}

std::string csv_sibling(const std::string& json_path) {
    const size_t dot = json_path.find_last_of('.');
    if (dot == std::string::npos) return json_path + ".csv";
    return json_path.substr(0, dot) + ".csv";
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.output_path.empty()) out << content << "\n";
    else write_text_file(config.output_path, content);
}

// ---- path command ----

std::pair<ComplexMatrix, ComplexMatrix> load_or_generate_pair(const RunConfig& config,
                                                              const SpectrumSpec& spec) {
    if (!config.input_path.empty()) {
        const json j = json::parse(read_text_file(config.input_path), nullptr, false);
        if (j.is_discarded() || !j.contains("a0") || !j.contains("a1"))
            throw Error(ErrorKind::ParseError, "path input must be a JSON object with a0 and a1");
        return {matrix_from_json(j.at("a0")), matrix_from_json(j.at("a1"))};
    }
    Rng rng(config.seed);
    std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
    // keep every eigenvalue populated so the pair exercises all indices
    for (int i = 0; i < spec.size(); ++i)
        if (sig[i] == 0 && config.dim >= spec.size()) {
            int donor = 0;
            for (int j = 0; j < spec.size(); ++j)
                if (sig[j] > sig[donor]) donor = j;
            --sig[donor];
            ++sig[i];
        }
    return random_close_pair(rng, spec, sig, config.selfadjoint, 0.02 * spec.min_gap);
}

PiecewisePath affine_pullback(const PiecewisePath& idem_path, const SpectrumSpec& spec,
                              const Tolerances& tol) {
    // x -> root_0 + (root_1 - root_0) x maps idempotent segments onto the
    // two-root variety.
    const cplx r0 = spec.roots[0], r1 = spec.roots[1];
    PiecewisePath out;
    for (const PathSegment& seg : idem_path.segments) {
        const auto& lin = std::get<LinearSegment>(seg.seg);
        auto map = [&](const ComplexMatrix& e) {
            ComplexMatrix m = e * (r1 - r0);
            for (int i = 0; i < m.rows(); ++i) m(i, i) += r0;
            return m;
        };
        out.segments.push_back({LinearSegment{map(lin.start), map(lin.end)}});
    }
    validate_path(out, spec, tol);
    return out;
}

int run_path(const RunConfig& config, std::ostream& out) {
    const Tolerances tol = make_tolerances(config);
    const SpectrumSpec spec = SpectrumSpec::make(config.roots, config.selfadjoint);
    auto [m0, m1] = load_or_generate_pair(config, spec);

    PiecewisePath path;
    json extra;
    if (config.kind == "two-segment") {
        if (spec.size() != 2)
            throw Error(ErrorKind::ParseError, "two-segment paths need exactly two roots");
        const cplx r0 = spec.roots[0], r1 = spec.roots[1];
        auto to_idem = [&](const ComplexMatrix& a) {
            return shift(a, r0) * (1.0 / (r1 - r0));
        };
        path = affine_pullback(two_segment_path(to_idem(m0), to_idem(m1), tol), spec, tol);
    } else if (config.kind == "exp") {
        const AlgebraicElement a0 = decompose(m0, spec, tol);
        const AlgebraicElement a1 = decompose(m1, spec, tol);
        const SimilarityCertificate cert = ep_similarity(a0, a1, tol);
        path = exp_path(m0, cert, spec, tol);
        extra["certificate"] = certificate_to_json(cert);
    } else if (config.kind == "unitary") {
        const AlgebraicElement a0 = decompose(m0, spec, tol);
        const AlgebraicElement a1 = decompose(m1, spec, tol);
        const SimilarityCertificate cert = unitary_similarity(a0, a1, tol);
        path = exp_path(m0, cert, spec, tol);
        extra["certificate"] = certificate_to_json(cert);
    } else if (config.kind == "polygonal") {
        const AlgebraicElement a0 = decompose(m0, spec, tol);
        const AlgebraicElement a1 = decompose(m1, spec, tol);
        path = polygonal_path(polygonal_ladder(a0, a1, tol), tol);
    } else if (config.kind == "esterle") {
        const AlgebraicElement a0 = decompose(m0, spec, tol);
        const AlgebraicElement a1 = decompose(m1, spec, tol);
        path = esterle_candidate_path(a0, a1, tol);
    } else {
        throw Error(ErrorKind::ParseError, "unknown path kind '" + config.kind + "'");
    }

    json report = path_to_json(path, spec, config.kind, config.tol);
    for (auto& [key, value] : extra.items()) report[key] = value;
    emit(config, report.dump(2), out);
    if (!config.output_path.empty())
        write_text_file(csv_sibling(config.output_path), csv_of_path(path, spec, tol.grid_points));

    out << "path kind=" << config.kind << " segments=" << path.segments.size()
        << " worst_membership=" << fmt(path.worst_membership())
        << " endpoint_err=" << fmt(operator_norm(path.end() - m1)) << "\n";
    return 0;
}

// ---- other commands ----

int run_decompose(const RunConfig& config, std::ostream& out) {
    const Tolerances tol = make_tolerances(config);
    const SpectrumSpec spec = SpectrumSpec::make(config.roots, config.selfadjoint);
    if (config.input_path.empty())
        throw Error(ErrorKind::ParseError, "decompose needs --in with a matrix JSON file");
    const json j = json::parse(read_text_file(config.input_path), nullptr, false);
    if (j.is_discarded()) throw Error(ErrorKind::ParseError, "input is not valid JSON");
    const ComplexMatrix a = matrix_from_json(j);
    const AlgebraicElement elem = decompose(a, spec, tol);
    emit(config, partition_to_json(elem, config.tol).dump(2), out);
    out << "decompose residual=" << fmt(elem.residual) << " tol_used=" << fmt(elem.partition.tol_used)
        << " idempotents=" << elem.partition.idempotents.size() << "\n";
    return 0;
}

int run_distance(const RunConfig& config, std::ostream& out) {
    const SpectrumSpec spec = SpectrumSpec::make(config.roots, true);
    const ConjectureReport report =
        conjecture_experiment(spec, config.dim, config.trials, config.seed);
    emit(config, conjecture_csv(report), out);
    out << "distance spec=" << spec.id_string() << " dim=" << config.dim
        << " rows=" << report.rows.size() << " trials=" << report.trials_run
        << " tol=" << fmt(config.tol) << " bound_violations=" << report.bound_violations
        << " conjecture_flags=" << report.conjecture_flags
        << " sampling_violations=" << report.sampling_violations << "\n";
    if (report.bound_violations || report.conjecture_flags || report.sampling_violations) {
        out << "validation failure: component distance bound or conjecture row violated\n";
        return 2;
    }
    return 0;
}

int run_lift(const RunConfig& config, std::ostream& out) {
    const Tolerances tol = make_tolerances(config);
    const SpectrumSpec spec = SpectrumSpec::make(config.roots, config.selfadjoint);
    if (config.input_path.empty())
        throw Error(ErrorKind::ParseError, "lift needs --in with {model, family} JSON");
    const json j = json::parse(read_text_file(config.input_path), nullptr, false);
    if (j.is_discarded() || !j.contains("model") || !j.contains("family"))
        throw Error(ErrorKind::ParseError, "lift input must be a JSON object with model and family");
    const QuotientModel model = model_from_json(j.at("model"));
    const AnalyticFamily family = family_from_json(j.at("family"));

    const int count = std::max(8, config.grid);
    if (family.real_domain) {
        std::vector<double> grid;
        for (int k = 0; k < count; ++k)
            grid.push_back(-0.95 * family.radius + 1.9 * family.radius * k / (count - 1));
        const LiftReport report = model.involutive && spec.real_only
                                      ? lift_family_selfadjoint(model, family, spec, grid, tol)
                                      : lift_family(model, family, spec,
                                                    std::vector<cplx>(grid.begin(), grid.end()), tol);
        emit(config, lift_report_to_json(report, config.tol).dump(2), out);
        out << "lift rows=" << report.rows.size() << " all_ok=" << (report.all_ok ? 1 : 0)
            << " fit_residual=" << fmt(report.fit_residual) << "\n";
        return report.all_ok ? 0 : 2;
    }

    std::vector<cplx> grid{cplx(0.0)};
    const int rings = std::max(3, count / 8);
    for (int r = 1; r <= rings; ++r)
        for (int a = 0; a < 8; ++a) {
            const double radius = family.radius * r / rings;
            const double theta = 2.0 * M_PI * a / 8;
            grid.emplace_back(radius * std::cos(theta), radius * std::sin(theta));
        }
    if (model.has_twist()) {
        const LocalLiftResult local = local_lift(model, family, spec, grid, tol);
        json report = lift_report_to_json(local.report, config.tol);
        report["radius"] = local.radius;
        report["truncated"] = local.truncated;
        report["stop_reason"] = local.stop_reason;
        emit(config, report.dump(2), out);
        out << "local_lift radius=" << fmt(local.radius)
            << " certified_rows=" << local.report.rows.size()
            << " truncated=" << (local.truncated ? 1 : 0) << "\n";
        return 0;
    }
    const LiftReport report = lift_family(model, family, spec, grid, tol);
    emit(config, lift_report_to_json(report, config.tol).dump(2), out);
    out << "lift rows=" << report.rows.size() << " all_ok=" << (report.all_ok ? 1 : 0)
        << " fit_residual=" << fmt(report.fit_residual) << "\n";
    return report.all_ok ? 0 : 2;
}

// ---- check command: the deterministic invariant battery ----

struct Suite {
    std::ostringstream& os;
    int passed = 0, failed = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        os << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) os << " (" << detail << ")";
        os << "\n";
        if (ok) ++passed;
        else ++failed;
    }

    void info(const std::string& name, const std::string& detail) {
        os << "[INFO] " << name << " (" << detail << ")\n";
    }
};

int run_check(const RunConfig& config, std::ostream& out) {
    const Tolerances tol = make_tolerances(config);
    const SpectrumSpec spec = SpectrumSpec::make(config.roots, config.selfadjoint);
    const bool real_roots = [&] {
        for (const cplx& r : spec.roots)
            if (r.imag() != 0.0) return false;
        return true;
    }();
    Rng rng(config.seed);

    std::ostringstream os;
    os << "algpaths check\n";
    os << "roots=" << spec.id_string() << " selfadjoint=" << (config.selfadjoint ? 1 : 0)
       << " dim=" << config.dim << " seed=" << config.seed << " tol=" << fmt(config.tol) << "\n";
    Suite suite{os};

    // kernel roundtrips
    {
        const ComplexMatrix m = ComplexMatrix::identity(config.dim) + rng.gaussian_matrix(config.dim, config.dim) * cplx(0.4);
        const ComplexMatrix mi = mat_inverse(m);
        const double inv_err = operator_norm(m * mi - ComplexMatrix::identity(config.dim));
        const ComplexMatrix c = rng.gaussian_matrix(config.dim, config.dim) * cplx(0.2);
        const double exp_err = operator_norm(mat_exp(c) * mat_exp(-c) - ComplexMatrix::identity(config.dim));
        const double log_err = operator_norm(mat_log_principal(mat_exp(c)) - c);
        suite.check("linalg kernel roundtrips", inv_err < 1e-9 && exp_err < 1e-10 && log_err < 1e-8,
                    "inv=" + fmt(inv_err) + " exp=" + fmt(exp_err) + " log=" + fmt(log_err));
    }

    // decomposition roundtrip and contour agreement
    {
        double worst_rt = 0.0, worst_riesz = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
            const ComplexMatrix a = random_algebraic(rng, spec, sig, config.selfadjoint);
            const AlgebraicElement elem = decompose(a, spec, tol);
            worst_rt = std::max(worst_rt,
                                operator_norm(reconstruct(elem.partition, spec, tol) - a));
            const double scale = spec.membership_scale(operator_norm(a));
            for (int i = 0; i < spec.size(); ++i)
                worst_riesz = std::max(worst_riesz,
                                       operator_norm(riesz_idempotent(a, i, spec, tol.quad_points) -
                                                     elem.partition.idempotents[i]) /
                                           scale);
        }
        suite.check("decomposition roundtrip + contour agreement",
                    worst_rt < 1e-9 * spec.membership_scale(1.0) && worst_riesz < 1e-7,
                    "roundtrip=" + fmt(worst_rt) + " lagrange_vs_riesz=" + fmt(worst_riesz));
    }

    // Kovarik exchange and the two-segment polygon
    {
        double worst_rel = 0.0, worst_grid = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            auto [e0, e1] = random_projection_pair(rng, config.dim, config.dim / 2,
                                                   config.selfadjoint, 0.2);
            const ComplexMatrix g = kovarik_element(e0, e1, tol);
            worst_rel = std::max({worst_rel, operator_norm(e1 * g - g), operator_norm(g * e1 - e1),
                                  operator_norm(e0 * g - e0), operator_norm(g * e0 - g)});
            worst_grid = std::max(worst_grid, two_segment_path(e0, e1, tol).worst_membership());
        }
        suite.check("kovarik relations + two-segment path", worst_rel < 1e-10 && worst_grid < 1e-9,
                    "relations=" + fmt(worst_rel) + " grid=" + fmt(worst_grid));
    }

    // similarity paths
    {
        double worst_end = 0.0, worst_grid = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
            auto [m0, m1] = random_close_pair(rng, spec, sig, config.selfadjoint, 0.05 * spec.min_gap);
            const AlgebraicElement a0 = decompose(m0, spec, tol);
            const AlgebraicElement a1 = decompose(m1, spec, tol);
            const SimilarityCertificate cert = ep_similarity(a0, a1, tol);
            if (!cert.has_generators()) continue;
            PiecewisePath path = exp_path(m0, cert, spec, tol);
            worst_end = std::max(worst_end, operator_norm(path.end() - m1));
            worst_grid = std::max(worst_grid, path.worst_membership());
        }
        suite.check("exponential similarity path", worst_end < 1e-9 && worst_grid < 1e-9,
                    "endpoint=" + fmt(worst_end) + " grid=" + fmt(worst_grid));
    }

    if (real_roots) {
        const SpectrumSpec sspec = SpectrumSpec::make(config.roots, true);
        double worst_end = 0.0, worst_herm = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const std::vector<int> sig = random_signature(rng, sspec.size(), config.dim);
            auto [m0, m1] = random_close_pair(rng, sspec, sig, true, 0.05 * sspec.min_gap);
            const AlgebraicElement a0 = decompose(m0, sspec, tol);
            const AlgebraicElement a1 = decompose(m1, sspec, tol);
            const SimilarityCertificate cert = unitary_similarity(a0, a1, tol);
            if (!cert.has_generators()) continue;
            PiecewisePath path = exp_path(m0, cert, sspec, tol);
            worst_end = std::max(worst_end, operator_norm(path.end() - m1));
            for (const SegmentResiduals& r : path.grid_residuals)
                worst_herm = std::max(worst_herm, r.selfadjoint_max);
        }
        suite.check("unitary similarity path", worst_end < 1e-9 && worst_herm < 1e-9,
                    "endpoint=" + fmt(worst_end) + " hermitian_drift=" + fmt(worst_herm));
    }

    // polygonal ladder
    {
        double worst_final = 0.0, worst_grid = 0.0;
        bool count_ok = true;
        for (int trial = 0; trial < 3; ++trial) {
            const std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
            auto [m0, m1] = random_close_pair(rng, spec, sig, config.selfadjoint, 0.02 * spec.min_gap);
            const AlgebraicElement a0 = decompose(m0, spec, tol);
            const AlgebraicElement a1 = decompose(m1, spec, tol);
            const PolygonalLadder ladder = polygonal_ladder(a0, a1, tol);
            for (int j = 0; j < spec.size(); ++j)
                worst_final = std::max(worst_final,
                                       operator_norm(ladder.rows.back()[j] -
                                                     a1.partition.idempotents[j]));
            PiecewisePath path = polygonal_path(ladder, tol);
            count_ok = count_ok && static_cast<int>(path.segments.size()) == spec.size();
            worst_grid = std::max(worst_grid, path.worst_membership());
        }
        suite.check("polygonal ladder + path",
                    worst_final < 1e-7 && worst_grid < 1e-8 * spec.membership_scale(1.0) && count_ok,
                    "final_row=" + fmt(worst_final) + " grid=" + fmt(worst_grid));
    }

    // square-zero product path
    {
        const std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
        auto [m0, m1] = random_close_pair(rng, spec, sig, config.selfadjoint, 0.05 * spec.min_gap);
        const AlgebraicElement a0 = decompose(m0, spec, tol);
        const AlgebraicElement a1 = decompose(m1, spec, tol);
        PiecewisePath path = esterle_candidate_path(a0, a1, tol);
        const double end_err = operator_norm(path.end() - m1);
        if (spec.size() == 2)
            suite.check("square-zero product path (two roots, asserted)",
                        end_err < 1e-8 && path.worst_membership() < 1e-9 * spec.membership_scale(1.0),
                        "endpoint=" + fmt(end_err) + " grid=" + fmt(path.worst_membership()));
        else
            suite.check("square-zero product path (endpoints; interior measured only)",
                        end_err < 1e-8,
                        "endpoint=" + fmt(end_err) + " measured_grid=" + fmt(path.worst_membership()));
    }

    // components
    if (real_roots) {
        const SpectrumSpec sspec = SpectrumSpec::make(config.roots, true);
        const ConjectureReport report = conjecture_experiment(sspec, std::min(config.dim, 5), 200, config.seed);
        suite.check("component distance bound vs oracle",
                    report.bound_violations == 0 && report.conjecture_flags == 0 &&
                        report.sampling_violations == 0 && report.worst_attainment_error < 1e-9,
                    "rows=" + std::to_string(report.rows.size()));
    }

    // lifting on the built-in palindromic flip model
    {
        QuotientModel model;
        model.block_sizes = {1, 2, 1};
        model.involutive = true;
        const int n = model.dim();
        ComplexMatrix b0(n, n);
        b0(1, 1) = 0.5; b0(1, 2) = 0.5; b0(2, 1) = 0.5; b0(2, 2) = 0.5;
        ComplexMatrix nilp(n, n);
        nilp(1, 2) = cplx(0.0, 1.0); // sigma(nilp) = -nilp
        AnalyticFamily fam;
        fam.real_domain = true;
        fam.radius = 1.0;
        fam.coeffs = {b0, nilp * b0 - b0 * nilp, -(nilp * b0 * nilp)};
        const SpectrumSpec lift_spec = SpectrumSpec::make({cplx(0.0), cplx(1.0)}, true);
        std::vector<double> grid;
        for (int k = 0; k < 21; ++k) grid.push_back(-0.9 + 1.8 * k / 20);
        const LiftReport report = lift_family_selfadjoint(model, fam, lift_spec, grid, tol);
        suite.check("self-adjoint lift along the flip quotient",
                    report.all_ok && report.fit_residual < 1e-7,
                    "fit=" + fmt(report.fit_residual));
    }

    // involution question, measured but never asserted
    {
        const std::vector<int> sig = random_signature(rng, spec.size(), config.dim);
        auto [m0, m1] = random_close_pair(rng, spec, sig, config.selfadjoint, 0.05 * spec.min_gap);
        const SimilarityCertificate cert =
            ep_similarity(decompose(m0, spec, tol), decompose(m1, spec, tol), tol);
        suite.info("involution defect of the assembled similarity",
                   "s^2-1=" + fmt(operator_norm(cert.s * cert.s - ComplexMatrix::identity(config.dim))));
    }

    os << suite.passed << "/" << (suite.passed + suite.failed) << " suites passed\n";
    const std::string text = os.str();
    out << text;
    if (!config.output_path.empty()) write_text_file(config.output_path, text);
    return suite.failed == 0 ? 0 : 2;
}

} // namespace

int run(const RunConfig& config, std::ostream& out) {
    try {
        if (config.command == "decompose") return run_decompose(config, out);
        if (config.command == "path") return run_path(config, out);
        if (config.command == "distance") return run_distance(config, out);
        if (config.command == "lift") return run_lift(config, out);
        if (config.command == "check") return run_check(config, out);
        throw Error(ErrorKind::ParseError, "unknown command '" + config.command + "'");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            out << "parse error: " << e.what() << "\n";
            return 3;
        }
        out << "validation failure: " << e.what() << "\n";
        return 2;
    }
}

} // namespace algpaths
