#include "deid/eval/metrics.hpp"

#include <algorithm>

#include "deid/common/error.hpp"

namespace deid::eval {

MetricMode parse_metric_mode(std::string_view s) {
  if (s == "binary") return MetricMode::Binary;
  if (s == "type") return MetricMode::PerType;
  if (s == "hipaa") return MetricMode::Hipaa;
  if (s == "all") return MetricMode::All;
  throw ConfigError("unknown metric mode \"" + std::string(s) + "\"");
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  binary += o.binary;
  for (const auto& [k, c] : o.per_type) per_type[k] += c;
  for (const auto& [k, c] : o.hipaa) hipaa[k] += c;
  return *this;
}

ConfusionCounts token_metrics(const std::vector<corpus::BioTag>& pred, const std::vector<corpus::BioTag>& gold,
                              MetricMode mode, const std::string& sentence_id) {
  if (pred.size() != gold.size())
    throw AlignmentError("sentence " + sentence_id + ": " + std::to_string(pred.size()) + " predicted tags vs " +
                         std::to_string(gold.size()) + " gold tags");
  const bool by_type = mode == MetricMode::PerType || mode == MetricMode::All;
  const bool by_hipaa = mode == MetricMode::Hipaa || mode == MetricMode::All;
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto& p = pred[i];
    const auto& g = gold[i];
    if (p.is_phi()) ++c.binary.identified;
    if (g.is_phi()) ++c.binary.actual;
    if (p.is_phi() && g.is_phi()) ++c.binary.correct;
    if (by_type) {
      if (p.is_phi()) ++c.per_type[p.type].identified;
      if (g.is_phi()) ++c.per_type[g.type].actual;
      if (p.is_phi() && g.is_phi() && p.type == g.type) ++c.per_type[g.type].correct;
    }
    if (by_hipaa) {
      if (p.is_phi()) ++c.hipaa[corpus::map_to_hipaa(p.type)].identified;
      if (g.is_phi()) ++c.hipaa[corpus::map_to_hipaa(g.type)].actual;
      if (p.is_phi() && g.is_phi() && corpus::map_to_hipaa(p.type) == corpus::map_to_hipaa(g.type))
        ++c.hipaa[corpus::map_to_hipaa(g.type)].correct;
    }
  }
  return c;
}

Scores score(const Counts& c) {
  Scores s;
  s.precision_undefined = c.identified == 0;
  s.recall_undefined = c.actual == 0;
  s.precision = s.precision_undefined ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.identified);
  s.recall = s.recall_undefined ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.actual);
  s.f1_undefined = s.precision + s.recall == 0.0;
  s.f1 = s.f1_undefined ? 0.0 : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

MetricsReport finalize(const ConfusionCounts& counts) {
  MetricsReport r;
  r.rows.push_back({KeyKind::Binary, "binary", counts.binary, score(counts.binary)});
  for (corpus::HipaaCategory cat : corpus::all_hipaa_categories()) {
    if (auto it = counts.hipaa.find(cat); it != counts.hipaa.end())
      r.rows.push_back({KeyKind::Hipaa, std::string(corpus::to_string(cat)), it->second, score(it->second)});
  }
  std::vector<MetricRow> types;
  for (const auto& [type, c] : counts.per_type)
    types.push_back({KeyKind::Type, std::string(corpus::to_string(type)), c, score(c)});
  std::sort(types.begin(), types.end(), [](const MetricRow& a, const MetricRow& b) { return a.label < b.label; });
  r.rows.insert(r.rows.end(), types.begin(), types.end());
  return r;
}

}  // namespace deid::eval
