#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

struct SynthConfig {
  std::size_t documents = 40;
  std::size_t sentences_per_document = 12;
  /// Expected PHI instances of each type per sentence.
  std::map<PhiType, double> densities;
  /// Fraction of documents written to the held-out split by the CLI.
  double test_fraction = 0.2;
  /// Widths of the companion word-vector and contextual-vector files.
  std::size_t word_dim = 50;
  std::size_t contextual_dim = 64;

  /// 8 types at 0.15 instances per sentence each.
  static SynthConfig standard();
};

SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SynthConfig& cfg);

/// Types that have sentence templates.
const std::vector<PhiType>& synth_supported_types();

/// Deterministic for a fixed seed; every inserted value is recorded as a gold span.
std::vector<Document> generate_synthetic(const SynthConfig& config, std::uint64_t seed);

/// Lower-cased vocabulary of the corpus plus every word in the PHI lexicon.
std::set<std::string> synthetic_vocabulary(const std::vector<Document>& docs);

/// Hash-seeded vector for a word; words from the same PHI pool share a common
/// direction so that unseen names lie near seen ones.
std::vector<double> synthetic_word_vector(std::string_view word, std::size_t dim, std::uint64_t seed);

}  // namespace deid::corpus
