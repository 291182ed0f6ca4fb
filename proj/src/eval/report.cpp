#include "deid/eval/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "deid/common/error.hpp"
#include "deid/corpus/bio.hpp"

namespace deid::eval {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string_view kind_name(KeyKind k) {
  switch (k) {
    case KeyKind::Binary: return "binary";
    case KeyKind::Hipaa: return "hipaa";
    case KeyKind::Type: return "type";
  }
  return "?";
}

KeyKind parse_kind(std::string_view s) {
  if (s == "binary") return KeyKind::Binary;
  if (s == "hipaa") return KeyKind::Hipaa;
  if (s == "type") return KeyKind::Type;
  throw ParseError("unknown report key kind \"" + std::string(s) + "\"");
}

std::string flag(bool undefined) { return undefined ? "*" : " "; }

}  // namespace

ReportFormat parse_report_format(std::string_view s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw ConfigError("unknown report format \"" + std::string(s) + "\"");
}

std::string emit_report(const MetricsReport& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Table: {
      char line[160];
      std::snprintf(line, sizeof line, "%-8s %-14s %10s %10s %10s %9s %9s %9s\n", "Kind", "Key", "Precision", "Recall",
                    "F1", "Correct", "Ident", "Actual");
      out << line;
      for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-8s %-14s %9s%s %9s%s %9s%s %9zu %9zu %9zu\n",
                      std::string(kind_name(r.kind)).c_str(), r.label.c_str(), fixed4(r.scores.precision).c_str(),
                      flag(r.scores.precision_undefined).c_str(), fixed4(r.scores.recall).c_str(),
                      flag(r.scores.recall_undefined).c_str(), fixed4(r.scores.f1).c_str(),
                      flag(r.scores.f1_undefined).c_str(), r.counts.correct, r.counts.identified, r.counts.actual);
        out << line;
      }
      out << "(* undefined: zero denominator, reported as 0)\n";
      break;
    }
    case ReportFormat::Csv:
      out << "kind,key,precision,recall,f1,correct,identified,actual,undefined\n";
      for (const auto& r : report.rows) {
        std::string undef;
        if (r.scores.precision_undefined) undef += "P";
        if (r.scores.recall_undefined) undef += "R";
        if (r.scores.f1_undefined) undef += "F";
        out << kind_name(r.kind) << ',' << r.label << ',' << fixed4(r.scores.precision) << ','
            << fixed4(r.scores.recall) << ',' << fixed4(r.scores.f1) << ',' << r.counts.correct << ','
            << r.counts.identified << ',' << r.counts.actual << ',' << undef << '\n';
      }
      break;
    case ReportFormat::Json: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : report.rows) {
        nlohmann::json undefined = nlohmann::json::array();
        if (r.scores.precision_undefined) undefined.push_back("precision");
        if (r.scores.recall_undefined) undefined.push_back("recall");
        if (r.scores.f1_undefined) undefined.push_back("f1");
        rows.push_back({{"kind", kind_name(r.kind)},
                        {"key", r.label},
                        {"precision", std::stod(fixed4(r.scores.precision))},
                        {"recall", std::stod(fixed4(r.scores.recall))},
                        {"f1", std::stod(fixed4(r.scores.f1))},
                        {"correct", r.counts.correct},
                        {"identified", r.counts.identified},
                        {"actual", r.counts.actual},
                        {"undefined", undefined}});
      }
      out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

MetricsReport parse_report_json(const nlohmann::json& j) {
  MetricsReport report;
  try {
    for (const auto& row : j.at("rows")) {
      MetricRow r;
      r.kind = parse_kind(row.at("kind").get<std::string>());
      r.label = row.at("key").get<std::string>();
      r.counts = {row.at("correct").get<std::size_t>(), row.at("identified").get<std::size_t>(),
                  row.at("actual").get<std::size_t>()};
      r.scores = score(r.counts);
      report.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metrics report: ") + e.what());
  }
  return report;
}

ConfusionCounts evaluate_documents(const std::vector<corpus::Document>& predicted,
                                   const std::vector<corpus::Document>& gold, MetricMode mode) {
  std::map<std::string, const corpus::Document*> by_id;
  for (const auto& d : predicted) by_id[d.doc_id] = &d;
  ConfusionCounts total;
  for (const auto& g : gold) {
    static const std::vector<corpus::Span> kNone;
    auto it = by_id.find(g.doc_id);
    if (it != by_id.end() && it->second->text != g.text)
      throw ValidationError("document " + g.doc_id + ": predicted and gold texts differ");
    const auto& pred_spans = it == by_id.end() ? kNone : it->second->spans;
    const auto pred_tags = corpus::encode_document(g, pred_spans);
    const auto gold_tags = corpus::encode_document(g);
    for (std::size_t j = 0; j < g.sentences.size(); ++j)
      total += token_metrics(pred_tags[j], gold_tags[j], mode, g.doc_id + "#" + std::to_string(j));
  }
  return total;
}

}  // namespace deid::eval
