#pragma once

#include "algpaths/complex_matrix.hpp"
#include "algpaths/lifting.hpp"
#include "algpaths/partition.hpp"
#include "algpaths/paths.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace algpaths {

using json = nlohmann::json;

// Matrix wire format: {"rows": k, "cols": k, "data": [[re, im], ...]} row-major.
// The parser rejects ragged or non-finite data with Error(ParseError).
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json partition_to_json(const AlgebraicElement& a, double tol);
json path_to_json(const PiecewisePath& path, const SpectrumSpec& spec, const std::string& kind,
                  double tol);
json certificate_to_json(const SimilarityCertificate& cert);

json model_to_json(const QuotientModel& model);
QuotientModel model_from_json(const json& j);

json family_to_json(const AnalyticFamily& fam);
AnalyticFamily family_from_json(const json& j);

json lift_report_to_json(const LiftReport& report, double tol);

// "0,1+2i,3" -> scalars; Error(ParseError) on malformed tokens.
std::vector<cplx> parse_roots(const std::string& text);

std::string read_text_file(const std::string& path);   // Error(ParseError) when unreadable
void write_text_file(const std::string& path, const std::string& content);

} // namespace algpaths
