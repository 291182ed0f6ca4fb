#include "deid/corpus/surrogate.hpp"

#include <algorithm>
#include <map>

#include "deid/common/error.hpp"
#include "deid/common/rng.hpp"
#include "deid/common/text.hpp"
#include "deid/corpus/phi_values.hpp"

namespace deid::corpus {

namespace {

std::vector<Span> resolve_overlaps(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    return (a.end - a.start) > (b.end - b.start);
  });
  std::vector<Span> kept;
  for (Span& s : spans) {
    if (!kept.empty() && s.start < kept.back().end) continue;
    kept.push_back(std::move(s));
  }
  return kept;
}

bool collides(const std::string& candidate, const std::vector<std::string>& originals) {
  const std::string lc = ascii_lower(candidate);
  for (const auto& o : originals) {
    const std::string lo = ascii_lower(o);
    if (lc.find(lo) != std::string::npos || lo.find(lc) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

DeidentifiedText replace_phi(const Document& doc, std::vector<Span> spans, std::uint64_t surrogate_seed) {
  spans = resolve_overlaps(std::move(spans));
  for (Span& s : spans) {
    require(s.end <= doc.text.size() && s.start < s.end, "replace_phi: span outside document " + doc.doc_id);
    s.text = utf8_encode(std::u32string_view(doc.text).substr(s.start, s.end - s.start));
  }
  std::vector<std::string> originals;
  for (const Span& s : spans) originals.push_back(s.text);

  Rng rng = make_stream(surrogate_seed ^ fnv1a64(doc.doc_id), "surrogate");
  std::map<std::pair<std::string, PhiType>, std::string> assigned;

  DeidentifiedText out;
  out.doc_id = doc.doc_id;
  std::size_t cursor = 0;
  for (const Span& s : spans) {
    out.text.append(doc.text, cursor, s.start - cursor);
    auto key = std::make_pair(s.text, s.type);
    auto it = assigned.find(key);
    if (it == assigned.end()) {
      std::string candidate;
      for (int attempt = 0; attempt < 200; ++attempt) {
        candidate = surrogate_value(s.type, s.text, rng);
        if (!collides(candidate, originals)) break;
        // Fall back to an unconstrained draw when the shape-preserving grammar is exhausted.
        if (attempt > 100) candidate = generate_phi_value(s.type, rng);
      }
      it = assigned.emplace(key, candidate).first;
    }
    const std::u32string sur = utf8_decode(it->second);
    Replacement r;
    r.start = out.text.size();
    r.end = r.start + sur.size();
    r.original_start = s.start;
    r.original_end = s.end;
    r.type = s.type;
    r.original = s.text;
    r.surrogate = it->second;
    out.text += sur;
    out.replacements.push_back(std::move(r));
    cursor = s.end;
  }
  out.text.append(doc.text, cursor, std::u32string::npos);
  return out;
}

nlohmann::json to_json(const DeidentifiedText& out) {
  nlohmann::json j;
  j["doc_id"] = out.doc_id;
  j["text"] = utf8_encode(out.text);
  j["replacements"] = nlohmann::json::array();
  for (const auto& r : out.replacements)
    j["replacements"].push_back({{"start", r.start},
                                 {"end", r.end},
                                 {"original_start", r.original_start},
                                 {"original_end", r.original_end},
                                 {"type", to_string(r.type)},
                                 {"original", r.original},
                                 {"surrogate", r.surrogate}});
  return j;
}

}  // namespace deid::corpus
