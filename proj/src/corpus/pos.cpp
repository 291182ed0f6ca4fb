#include "deid/corpus/pos.hpp"

#include <array>
#include <string>
#include <unordered_map>

#include "deid/common/text.hpp"

namespace deid::corpus {

namespace {

const std::unordered_map<std::string, CoarsePos>& lexicon() {
  static const std::unordered_map<std::string, CoarsePos> lex = [] {
    std::unordered_map<std::string, CoarsePos> m;
    auto add = [&](CoarsePos pos, std::initializer_list<const char*> words) {
      for (const char* w : words) m.emplace(w, pos);
    };
    add(CoarsePos::Determiner, {"the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any",
                                "no", "all", "both", "either", "neither", "another"});
    add(CoarsePos::Pronoun, {"i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "my",
                             "your", "his", "its", "our", "their", "mine", "yours", "hers", "ours", "theirs",
                             "himself", "herself", "itself", "themselves", "myself"});
    add(CoarsePos::WhWord, {"who", "whom", "whose", "which", "what", "where", "when", "why", "how"});
    add(CoarsePos::Preposition, {"in", "on", "at", "by", "for", "with", "from", "of", "into", "onto", "over",
                                 "under", "after", "before", "during", "about", "between", "through", "without",
                                 "within", "upon", "per", "via", "since", "until", "against", "among", "toward",
                                 "towards", "across", "around", "near", "beside", "behind", "below", "above"});
    add(CoarsePos::Conjunction, {"and", "or", "but", "nor", "so", "yet", "because", "although", "though", "if",
                                 "while", "unless", "whereas", "than"});
    add(CoarsePos::Modal, {"can", "could", "will", "would", "shall", "should", "may", "might", "must"});
    add(CoarsePos::Verb, {"is", "are", "be", "am", "has", "have", "do", "does", "go", "goes", "get", "gets",
                          "see", "take", "takes", "give", "make", "denies", "reports", "presents", "remains"});
    add(CoarsePos::VerbPast, {"was", "were", "been", "had", "did", "went", "got", "saw", "took", "gave", "made",
                              "seen", "taken", "given", "left", "came", "said"});
    add(CoarsePos::VerbGerund, {"being", "having", "doing", "going"});
    add(CoarsePos::Particle, {"to", "not", "n't", "up", "off", "out"});
    add(CoarsePos::Adverb, {"very", "also", "then", "now", "here", "there", "never", "always", "often", "again",
                            "already", "still", "just", "soon", "well", "today", "tomorrow", "yesterday"});
    add(CoarsePos::Interjection, {"yes", "oh", "ok", "okay", "hello", "hi", "please", "thanks"});
    add(CoarsePos::Number, {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
                            "eleven", "twelve", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
                            "eighty", "ninety", "hundred", "thousand"});
    return m;
  }();
  return lex;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string_view to_string(CoarsePos pos) {
  static constexpr std::array<std::string_view, kCoarsePosCount> names{
      "NOUN",  "NOUNS", "PROPN", "PRON", "VERB",  "VBD", "VBG", "MODAL", "ADJ",  "ADV",
      "DET",   "ADP",   "CONJ",  "NUM",  "PUNCT", "SYM", "WH",  "PART",  "INTJ", "X"};
  return names[static_cast<std::size_t>(pos)];
}

CoarsePos pos_tag_word(std::string_view word, bool sentence_initial) {
  if (word.empty()) return CoarsePos::Other;
  bool all_digit = true, all_punct = true, any_letter = false, any_digit = false;
  for (unsigned char c : word) {
    const bool digit = c >= '0' && c <= '9';
    const bool punct = is_punct(c);
    all_digit &= digit || c == '.' || c == ',';
    all_punct &= punct;
    any_digit |= digit;
    any_letter |= !digit && !punct;
  }
  if (all_punct) {
    static const std::string_view kPunct = ".,;:!?()[]{}\"'-`";
    return (word.size() == 1 && kPunct.find(word[0]) == std::string_view::npos) ? CoarsePos::Symbol
                                                                                 : CoarsePos::Punctuation;
  }
  if (all_digit && any_digit) return CoarsePos::Number;

  const std::string lower = ascii_lower(word);
  if (auto it = lexicon().find(lower); it != lexicon().end()) return it->second;
  if (any_digit) return any_letter ? CoarsePos::Other : CoarsePos::Symbol;

  const bool capitalised = word[0] >= 'A' && word[0] <= 'Z';
  if (capitalised && !sentence_initial) return CoarsePos::ProperNoun;

  if (ends_with(lower, "ly")) return CoarsePos::Adverb;
  if (ends_with(lower, "ing")) return CoarsePos::VerbGerund;
  if (ends_with(lower, "ed")) return CoarsePos::VerbPast;
  for (std::string_view s : {"tion", "sion", "ment", "ness", "ity", "ism", "ist", "ance", "ence"})
    if (ends_with(lower, s)) return CoarsePos::Noun;
  for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ary"})
    if (ends_with(lower, s)) return CoarsePos::Adjective;
  if (ends_with(lower, "s") && !ends_with(lower, "ss")) return CoarsePos::PluralNoun;
  if (capitalised) return CoarsePos::ProperNoun;
  return CoarsePos::Noun;
}

std::vector<CoarsePos> pos_tag(const Sentence& tokens) {
  std::vector<CoarsePos> out;
  out.reserve(tokens.size());
  for (std::size_t k = 0; k < tokens.size(); ++k) out.push_back(pos_tag_word(tokens[k].text, k == 0));
  return out;
}

}  // namespace deid::corpus
