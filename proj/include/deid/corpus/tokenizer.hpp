#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

/// Whitespace split, then leading/trailing punctuation peeled into one-character
/// tokens, then '-', '/', ':' split out when flanked by digits on both sides.
/// sentence_index/token_index are left at zero; see split_sentences.
std::vector<Token> tokenize(std::u32string_view text);

/// Half-open token ranges [first, last).
using SentenceBounds = std::vector<std::pair<std::size_t, std::size_t>>;

/// Breaks after '.', '!' or '?' when followed by whitespace and an upper-case
/// letter (unless the '.' closes a title abbreviation or a single-letter initial),
/// and at blank lines.
SentenceBounds split_sentences(const std::vector<Token>& tokens, std::u32string_view text);

/// tokenize + split_sentences with indices assigned.
std::vector<Sentence> segment(std::u32string_view text);

}  // namespace deid::corpus
