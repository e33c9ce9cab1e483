#pragma once

#include "sepscope/maxls.hpp"
#include "sepscope/measures.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sepscope {

using Json = nlohmann::ordered_json;

/// %.17g, enough to round-trip any double.
std::string format_double(double v);

/// {task, weight_mode, ls_star, ls0, ls1, ls2, j_omega, counts{pos,neg,zero},
///  degenerate}; j_omega is null when not computed.
Json report_to_json(const MeasureReport& r);
MeasureReport report_from_json(const Json& j);

/// Same fields as the JSON form, counts flattened to pos,neg,zero.
std::string report_csv_header();
std::string report_csv_row(const MeasureReport& r);
void write_reports_csv(std::ostream& os, const std::vector<MeasureReport>& reports);
std::vector<MeasureReport> read_reports_csv(std::istream& is);

/// {major_side, kept_a, kept_b, removed[{set, index, degree}], verified}.
/// Indices are rows of the source dataset.
Json maxls_to_json(const BinaryTask& task, const MaxLsResult& result, bool verified);

}  // namespace sepscope
