#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deid/corpus/document.hpp"

namespace deid::corpus {

enum class BioPrefix { O, B, I };

struct BioTag {
  BioPrefix prefix = BioPrefix::O;
  PhiType type = PhiType::Patient;  // ignored when prefix == O

  static BioTag outside() { return {}; }
  static BioTag begin(PhiType t) { return {BioPrefix::B, t}; }
  static BioTag inside(PhiType t) { return {BioPrefix::I, t}; }

  bool is_phi() const { return prefix != BioPrefix::O; }

  friend bool operator==(const BioTag& a, const BioTag& b) {
    return a.prefix == b.prefix && (a.prefix == BioPrefix::O || a.type == b.type);
  }
};

std::string to_string(const BioTag& tag);
std::optional<BioTag> parse_bio_tag(std::string_view s);

/// Tags for one sentence. Spans that start before or end after the sentence are
/// clipped to it; any span edge that lands strictly inside a token throws
/// AlignmentError naming the span.
std::vector<BioTag> encode_bio(const Sentence& tokens, const std::vector<Span>& spans);

/// Maximal B-X I-X* runs become spans; an I-X that does not continue an X run opens
/// a new span. `text` is the document text used to fill Span::text.
std::vector<Span> decode_bio(const std::vector<BioTag>& tags, const Sentence& tokens, std::u32string_view text);

/// True when no I-X follows anything but B-X or I-X.
bool is_valid_bio(const std::vector<BioTag>& tags);

/// Encodes every sentence of a document with its gold spans.
std::vector<std::vector<BioTag>> encode_document(const Document& doc);
std::vector<std::vector<BioTag>> encode_document(const Document& doc, const std::vector<Span>& spans);

/// Dense index over {O} ∪ {B-X, I-X : X in types}: O = 0, B-X = 1 + 2i, I-X = 2 + 2i.
class TagSet {
 public:
  TagSet() = default;
  explicit TagSet(std::vector<PhiType> types);

  std::size_t size() const { return 1 + 2 * types_.size(); }
  const std::vector<PhiType>& types() const { return types_; }

  std::size_t index(const BioTag& tag) const;  // throws ContractViolation for unknown types
  BioTag tag(std::size_t index) const;

  /// BIO well-formedness of a transition / sequence start.
  bool allowed_transition(std::size_t from, std::size_t to) const;
  bool allowed_start(std::size_t to) const;

  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  std::vector<PhiType> types_;  // sorted by enum order
};

}  // namespace deid::corpus
