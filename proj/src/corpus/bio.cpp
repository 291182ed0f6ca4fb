#include "deid/corpus/bio.hpp"

#include <algorithm>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"

namespace deid::corpus {

std::string to_string(const BioTag& tag) {
  switch (tag.prefix) {
    case BioPrefix::O: return "O";
    case BioPrefix::B: return "B-" + std::string(to_string(tag.type));
    case BioPrefix::I: return "I-" + std::string(to_string(tag.type));
  }
  return "O";
}

std::optional<BioTag> parse_bio_tag(std::string_view s) {
  if (s == "O") return BioTag::outside();
  if (s.size() < 3 || s[1] != '-') return std::nullopt;
  auto type = parse_phi_type(s.substr(2));
  if (!type) return std::nullopt;
  if (s[0] == 'B') return BioTag::begin(*type);
  if (s[0] == 'I') return BioTag::inside(*type);
  return std::nullopt;
}

std::vector<BioTag> encode_bio(const Sentence& tokens, const std::vector<Span>& spans) {
  std::vector<BioTag> tags(tokens.size());
  if (tokens.empty()) return tags;
  const std::size_t lo = tokens.front().start;
  const std::size_t hi = tokens.back().end;
  for (const Span& span : spans) {
    if (span.end <= lo || span.start >= hi) continue;
    auto misaligned = [&] {
      return AlignmentError("span [" + std::to_string(span.start) + "," + std::to_string(span.end) + ") " +
                            std::string(to_string(span.type)) + " \"" + span.text +
                            "\" does not align with token boundaries");
    };
    bool start_ok = span.start < lo;
    bool end_ok = span.end > hi;
    bool first = true;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const Token& tok = tokens[k];
      if (tok.start == span.start) start_ok = true;
      if (tok.end == span.end) end_ok = true;
      const bool overlaps = tok.start < span.end && tok.end > span.start;
      if (!overlaps) continue;
      if (tok.start < span.start || tok.end > span.end) throw misaligned();
      if (tags[k].is_phi()) throw ValidationError("overlapping spans at token \"" + tok.text + "\"");
      tags[k] = first ? BioTag::begin(span.type) : BioTag::inside(span.type);
      first = false;
    }
    if (first || !start_ok || !end_ok) throw misaligned();
  }
  return tags;
}

std::vector<Span> decode_bio(const std::vector<BioTag>& tags, const Sentence& tokens, std::u32string_view text) {
  require(tags.size() == tokens.size(), "decode_bio: tag count does not match token count");
  std::vector<Span> spans;
  std::optional<Span> open;
  auto close = [&] {
    if (open) {
      open->text = utf8_encode(text.substr(open->start, open->end - open->start));
      spans.push_back(std::move(*open));
      open.reset();
    }
  };
  for (std::size_t k = 0; k < tags.size(); ++k) {
    const BioTag& tag = tags[k];
    if (tag.prefix == BioPrefix::I && open && open->type == tag.type) {
      open->end = tokens[k].end;
      continue;
    }
    close();
    if (tag.is_phi()) open = Span{tokens[k].start, tokens[k].end, tag.type, {}};
  }
  close();
  return spans;
}

bool is_valid_bio(const std::vector<BioTag>& tags) {
  for (std::size_t k = 0; k < tags.size(); ++k) {
    if (tags[k].prefix != BioPrefix::I) continue;
    if (k == 0 || !tags[k - 1].is_phi() || tags[k - 1].type != tags[k].type) return false;
  }
  return true;
}

std::vector<std::vector<BioTag>> encode_document(const Document& doc) { return encode_document(doc, doc.spans); }

std::vector<std::vector<BioTag>> encode_document(const Document& doc, const std::vector<Span>& spans) {
  std::vector<std::vector<BioTag>> out;
  out.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) {
    try {
      out.push_back(encode_bio(s, spans));
    } catch (const AlignmentError& e) {
      throw AlignmentError("document " + doc.doc_id + ": " + e.what());
    }
  }
  return out;
}

TagSet::TagSet(std::vector<PhiType> types) : types_(std::move(types)) {
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
}

std::size_t TagSet::index(const BioTag& tag) const {
  if (tag.prefix == BioPrefix::O) return 0;
  auto it = std::lower_bound(types_.begin(), types_.end(), tag.type);
  require(it != types_.end() && *it == tag.type, "tag type " + std::string(to_string(tag.type)) + " not in tag set");
  const std::size_t i = static_cast<std::size_t>(it - types_.begin());
  return tag.prefix == BioPrefix::B ? 1 + 2 * i : 2 + 2 * i;
}

BioTag TagSet::tag(std::size_t index) const {
  require(index < size(), "tag index out of range");
  if (index == 0) return BioTag::outside();
  const PhiType t = types_[(index - 1) / 2];
  return (index % 2 == 1) ? BioTag::begin(t) : BioTag::inside(t);
}

bool TagSet::allowed_transition(std::size_t from, std::size_t to) const {
  const BioTag b = tag(to);
  if (b.prefix != BioPrefix::I) return true;
  const BioTag a = tag(from);
  return a.is_phi() && a.type == b.type;
}

bool TagSet::allowed_start(std::size_t to) const { return tag(to).prefix != BioPrefix::I; }

}  // namespace deid::corpus
