#include "deid/corpus/document.hpp"

#include <algorithm>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"
#include "deid/corpus/bio.hpp"
#include "deid/corpus/tokenizer.hpp"

namespace deid::corpus {

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

void validate_spans(const std::string& doc_id, const std::u32string& text, std::vector<Span>& spans) {
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.start < b.start; });
  auto fail = [&](const Span& s, const std::string& why) {
    return ValidationError("document " + doc_id + ": span [" + std::to_string(s.start) + "," + std::to_string(s.end) +
                           ") " + std::string(to_string(s.type)) + ": " + why);
  };
  for (std::size_t i = 0; i < spans.size(); ++i) {
    Span& s = spans[i];
    if (s.start >= s.end) throw fail(s, "empty or inverted span");
    if (s.end > text.size()) throw fail(s, "end exceeds document length " + std::to_string(text.size()));
    if (i > 0 && spans[i - 1].end > s.start) throw fail(s, "overlaps the previous span");
    const std::string covered = utf8_encode(std::u32string_view(text).substr(s.start, s.end - s.start));
    if (!s.text.empty() && s.text != covered)
      throw fail(s, "text \"" + s.text + "\" does not match document text \"" + covered + "\"");
    s.text = covered;
  }
}

Document make_document(std::string doc_id, std::u32string text, std::vector<Span> spans) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::move(text);
  validate_spans(doc.doc_id, doc.text, spans);
  doc.spans = std::move(spans);
  doc.sentences = segment(doc.text);
  std::vector<std::size_t> starts, ends;
  for (const auto& sent : doc.sentences)
    for (const auto& tok : sent) {
      starts.push_back(tok.start);
      ends.push_back(tok.end);
    }
  for (const Span& s : doc.spans) {
    if (!std::binary_search(starts.begin(), starts.end(), s.start) ||
        !std::binary_search(ends.begin(), ends.end(), s.end))
      throw AlignmentError("document " + doc.doc_id + ": span [" + std::to_string(s.start) + "," +
                           std::to_string(s.end) + ") " + std::string(to_string(s.type)) + " \"" + s.text +
                           "\" does not align with token boundaries");
  }
  encode_document(doc);
  return doc;
}

}  // namespace deid::corpus
