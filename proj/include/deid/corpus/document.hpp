#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "deid/corpus/phi.hpp"

namespace deid::corpus {

/// Gold or predicted PHI instance. Offsets are Unicode scalar indices, end exclusive.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  PhiType type = PhiType::Patient;
  std::string text;  // UTF-8 copy of the covered document text

  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string text;  // UTF-8
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

struct Document {
  std::string doc_id;
  std::u32string text;
  std::vector<Sentence> sentences;
  std::vector<Span> spans;

  std::size_t token_count() const;
};

/// Tokenizes and sentence-splits `text`, then validates `spans` against the result:
/// bounds, ordering, non-overlap, text equality (when a span carries text) and token
/// alignment. Span text is filled from the document. Throws ValidationError /
/// AlignmentError naming the document and span.
Document make_document(std::string doc_id, std::u32string text, std::vector<Span> spans);

/// Bounds/order/overlap/text checks only (no tokenization).
void validate_spans(const std::string& doc_id, const std::u32string& text, std::vector<Span>& spans);

}  // namespace deid::corpus
