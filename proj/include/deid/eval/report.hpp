#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"
#include "deid/eval/metrics.hpp"

namespace deid::eval {

enum class ReportFormat { Table, Json, Csv };

ReportFormat parse_report_format(std::string_view s);  // table | json | csv

/// Metric values are printed with 4 decimals; JSON additionally carries the raw
/// counts so that parse_report_json rebuilds an identical report.
std::string emit_report(const MetricsReport& report, ReportFormat format);

MetricsReport parse_report_json(const nlohmann::json& j);

/// Tokenizes each gold document, encodes predicted and gold spans over the same
/// tokens and tallies every sentence. Documents are matched by doc_id; a missing
/// prediction counts as all-O. Throws AlignmentError for predictions that do not
/// sit on token boundaries.
ConfusionCounts evaluate_documents(const std::vector<corpus::Document>& predicted,
                                   const std::vector<corpus::Document>& gold, MetricMode mode);

}  // namespace deid::eval
