#pragma once

#include <string_view>
#include <vector>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

/// Coarse part-of-speech classes; the one-hot feature width is kCoarsePosCount.
enum class CoarsePos {
  Noun,
  PluralNoun,
  ProperNoun,
  Pronoun,
  Verb,
  VerbPast,
  VerbGerund,
  Modal,
  Adjective,
  Adverb,
  Determiner,
  Preposition,
  Conjunction,
  Number,
  Punctuation,
  Symbol,
  WhWord,
  Particle,
  Interjection,
  Other,
};

inline constexpr std::size_t kCoarsePosCount = 20;

std::string_view to_string(CoarsePos pos);

/// Closed-class lexicon, then digit rule, then capitalisation (non-initial position),
/// then suffix rules, defaulting to Noun.
std::vector<CoarsePos> pos_tag(const Sentence& tokens);

/// Tag of a single word at a given sentence position.
CoarsePos pos_tag_word(std::string_view word, bool sentence_initial);

}  // namespace deid::corpus
