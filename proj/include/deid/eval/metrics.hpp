#pragma once

#include <map>
#include <string>
#include <vector>

#include "deid/corpus/bio.hpp"

namespace deid::eval {

/// correct: tokens counted in both numerators; identified: predicted PHI of the key;
/// actual: gold PHI of the key.
struct Counts {
  std::size_t correct = 0;
  std::size_t identified = 0;
  std::size_t actual = 0;

  Counts& operator+=(const Counts& o) {
    correct += o.correct;
    identified += o.identified;
    actual += o.actual;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

enum class MetricMode { Binary, PerType, Hipaa, All };

MetricMode parse_metric_mode(std::string_view s);  // binary | type | hipaa | all

/// Binary counts are always filled; per-type and HIPAA maps only in their modes.
/// Mergeable by +=.
struct ConfusionCounts {
  Counts binary;
  std::map<corpus::PhiType, Counts> per_type;
  std::map<corpus::HipaaCategory, Counts> hipaa;

  ConfusionCounts& operator+=(const ConfusionCounts& o);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Token-level counts. Binary mode credits any PHI prediction on a PHI token;
/// per-type and HIPAA modes require the type (resp. category) to match, ignoring
/// the B/I prefix. Throws AlignmentError naming `sentence_id` on a length mismatch.
ConfusionCounts token_metrics(const std::vector<corpus::BioTag>& pred, const std::vector<corpus::BioTag>& gold,
                              MetricMode mode, const std::string& sentence_id = "");

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;  // identified == 0
  bool recall_undefined = false;     // actual == 0
  bool f1_undefined = false;         // precision + recall == 0

  friend bool operator==(const Scores&, const Scores&) = default;
};

/// Zero-denominator convention: the metric is 0 and flagged undefined.
Scores score(const Counts& c);

enum class KeyKind { Binary, Hipaa, Type };

struct MetricRow {
  KeyKind kind = KeyKind::Binary;
  std::string label;  // "binary", HIPAA label or PHI type label
  Counts counts;
  Scores scores;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

/// Rows: binary first, then HIPAA categories in reporting order, then PHI types
/// alphabetically by label. Only keys present in the counts appear.
struct MetricsReport {
  std::vector<MetricRow> rows;

  const MetricRow& binary() const { return rows.front(); }
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport finalize(const ConfusionCounts& counts);

}  // namespace deid::eval
