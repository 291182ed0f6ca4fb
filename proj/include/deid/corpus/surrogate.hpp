#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

struct Replacement {
  std::size_t start = 0;  // offsets into the de-identified text
  std::size_t end = 0;
  std::size_t original_start = 0;  // offsets into the source text
  std::size_t original_end = 0;
  PhiType type = PhiType::Patient;
  std::string original;
  std::string surrogate;
};

struct DeidentifiedText {
  std::string doc_id;
  std::u32string text;
  std::vector<Replacement> replacements;
};

/// Overlapping spans are resolved first: sorted by start, longer first on ties, and
/// any span overlapping an already kept one is dropped. Equal (text, type) pairs get
/// the same surrogate within a document. Surrogates never contain, and are never
/// contained in, any original span text of the document.
DeidentifiedText replace_phi(const Document& doc, std::vector<Span> spans, std::uint64_t surrogate_seed);

nlohmann::json to_json(const DeidentifiedText& out);

}  // namespace deid::corpus
