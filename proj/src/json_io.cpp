#include "algpaths/json_io.hpp"

#include "algpaths/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace algpaths {

json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            data.push_back({m(r, c).real(), m(r, c).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error(ErrorKind::ParseError, "matrix object needs rows, cols, data");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows <= 0 || cols <= 0) throw Error(ErrorKind::ParseError, "matrix dimensions must be positive");
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<size_t>(rows) * cols)
        throw Error(ErrorKind::ParseError, "matrix data length does not match rows*cols");
    ComplexMatrix m(rows, cols);
    size_t k = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c, ++k) {
            const json& entry = data[k];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
                throw Error(ErrorKind::ParseError, "matrix entries must be [re, im] pairs");
            const double re = entry[0].get<double>();
            const double im = entry[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw Error(ErrorKind::ParseError, "matrix entries must be finite");
            m(r, c) = cplx(re, im);
        }
    }
    return m;
}

namespace {

json roots_to_json(const SpectrumSpec& spec) {
    json roots = json::array();
    for (const cplx& r : spec.roots) roots.push_back({r.real(), r.imag()});
    return roots;
}

} // namespace

json partition_to_json(const AlgebraicElement& a, double tol) {
    json idems = json::array();
    for (const ComplexMatrix& e : a.partition.idempotents) idems.push_back(matrix_to_json(e));
    return json{{"roots", roots_to_json(a.spec)},
                {"selfadjoint", a.spec.real_only},
                {"tol", tol},
                {"tol_used", a.partition.tol_used},
                {"residual", a.residual},
                {"matrix", matrix_to_json(a.matrix)},
                {"idempotents", std::move(idems)}};
}

json path_to_json(const PiecewisePath& path, const SpectrumSpec& spec, const std::string& kind,
                  double tol) {
    json segments = json::array();
    for (const PathSegment& seg : path.segments) {
        json js{{"type", seg.type_tag()}};
        if (const auto* e = std::get_if<ExpSegment>(&seg.seg)) {
            js["a0"] = matrix_to_json(e->a0);
            json gens = json::array();
            for (const ComplexMatrix& g : e->generators) gens.push_back(matrix_to_json(g));
            js["generators"] = std::move(gens);
        } else if (const auto* l = std::get_if<LinearSegment>(&seg.seg)) {
            js["start"] = matrix_to_json(l->start);
            js["end"] = matrix_to_json(l->end);
        } else {
            const auto& es = std::get<EsterleSegment>(seg.seg);
            js["a0"] = matrix_to_json(es.a0);
            json idems = json::array(), d = json::array(), dp = json::array();
            for (const ComplexMatrix& e : es.idempotents) idems.push_back(matrix_to_json(e));
            for (const NilpotentPair& g : es.generators) {
                d.push_back(matrix_to_json(g.d));
                dp.push_back(matrix_to_json(g.d_prime));
            }
            js["idempotents"] = std::move(idems);
            js["d"] = std::move(d);
            js["d_prime"] = std::move(dp);
        }
        segments.push_back(std::move(js));
    }
    json residuals = json::array();
    for (const SegmentResiduals& r : path.grid_residuals)
        residuals.push_back({{"membership", r.membership_max}, {"selfadjoint", r.selfadjoint_max}});
    return json{{"kind", kind},
                {"roots", roots_to_json(spec)},
                {"selfadjoint", spec.real_only},
                {"tol", tol},
                {"segments", std::move(segments)},
                {"residuals", std::move(residuals)}};
}

json certificate_to_json(const SimilarityCertificate& cert) {
    json gens = json::array();
    for (const ComplexMatrix& g : cert.generators) gens.push_back(matrix_to_json(g));
    return json{{"s", matrix_to_json(cert.s)},
                {"s_inverse", matrix_to_json(cert.s_inverse)},
                {"unitary", cert.unitary},
                {"generators", std::move(gens)}};
}

json model_to_json(const QuotientModel& model) {
    json twist = json::array();
    for (const ComplexMatrix& c : model.twist_coeffs) twist.push_back(matrix_to_json(c));
    return json{{"block_sizes", model.block_sizes},
                {"involutive", model.involutive},
                {"twist_coeffs", std::move(twist)}};
}

QuotientModel model_from_json(const json& j) {
    QuotientModel model;
    if (!j.contains("block_sizes")) throw Error(ErrorKind::ParseError, "model needs block_sizes");
    model.block_sizes = j.at("block_sizes").get<std::vector<int>>();
    model.involutive = j.value("involutive", false);
    if (j.contains("twist_coeffs"))
        for (const json& c : j.at("twist_coeffs")) model.twist_coeffs.push_back(matrix_from_json(c));
    model.validate();
    return model;
}

json family_to_json(const AnalyticFamily& fam) {
    json coeffs = json::array();
    for (const ComplexMatrix& c : fam.coeffs) coeffs.push_back(matrix_to_json(c));
    return json{{"coeffs", std::move(coeffs)}, {"radius", fam.radius}, {"real", fam.real_domain}};
}

AnalyticFamily family_from_json(const json& j) {
    AnalyticFamily fam;
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
        throw Error(ErrorKind::ParseError, "family needs a nonempty coefficient list");
    for (const json& c : j.at("coeffs")) fam.coeffs.push_back(matrix_from_json(c));
    fam.radius = j.value("radius", 1.0);
    fam.real_domain = j.value("real", false);
    if (!(fam.radius > 0.0)) throw Error(ErrorKind::ParseError, "family radius must be positive");
    return fam;
}

json lift_report_to_json(const LiftReport& report, double tol) {
    json rows = json::array();
    for (const LiftCertRow& r : report.rows)
        rows.push_back({{"lambda", {r.lambda.real(), r.lambda.imag()}},
                        {"membership", r.membership},
                        {"projection_err", r.projection_err},
                        {"selfadjoint_err", r.selfadjoint_err},
                        {"ok", r.ok},
                        {"failure", r.failure}});
    return json{{"tol", tol},
                {"all_ok", report.all_ok},
                {"fit_degree", report.fit_degree},
                {"fit_residual", report.fit_residual},
                {"symmetrization_broke_membership", report.symmetrization_broke_membership},
                {"rows", std::move(rows)}};
}

std::vector<cplx> parse_roots(const std::string& text) {
    std::vector<cplx> roots;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        // strip blanks
        std::string t;
        for (char ch : token)
            if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
        if (t.empty()) throw Error(ErrorKind::ParseError, "empty root token");

        double re = 0.0, im = 0.0;
        if (t.back() == 'i' || t.back() == 'j') {
            t.pop_back();
            // split at the last +/- that is not leading and not an exponent sign
            size_t split = std::string::npos;
            for (size_t k = t.size(); k-- > 1;) {
                if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
                    split = k;
                    break;
                }
            }
            std::string re_part = (split == std::string::npos) ? "" : t.substr(0, split);
            std::string im_part = (split == std::string::npos) ? t : t.substr(split);
            if (im_part.empty() || im_part == "+") im_part = "1";
            else if (im_part == "-") im_part = "-1";
            try {
                if (!re_part.empty()) re = std::stod(re_part);
                im = std::stod(im_part);
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError, "bad root token '" + token + "'");
            }
        } else {
            try {
                re = std::stod(t);
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError, "bad root token '" + token + "'");
            }
        }
        roots.emplace_back(re, im);
    }
    if (roots.size() < 2) throw Error(ErrorKind::ParseError, "need at least two roots");
    return roots;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write file: " + path);
    out << content;
}

} // namespace algpaths
