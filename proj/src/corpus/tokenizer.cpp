#include "deid/corpus/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "deid/common/text.hpp"

namespace deid::corpus {

namespace {

bool is_digit_separator(char32_t c) { return c == U'-' || c == U'/' || c == U':'; }

void emit(std::u32string_view text, std::size_t start, std::size_t end, std::vector<Token>& out) {
  Token t;
  t.text = utf8_encode(text.substr(start, end - start));
  t.start = start;
  t.end = end;
  out.push_back(std::move(t));
}

// Splits a whitespace-free chunk [start, end).
void split_chunk(std::u32string_view text, std::size_t start, std::size_t end, std::vector<Token>& out) {
  std::size_t lo = start;
  std::size_t hi = end;
  while (lo < hi && is_punct(text[lo])) {
    emit(text, lo, lo + 1, out);
    ++lo;
  }
  std::vector<std::size_t> trailing;
  while (hi > lo && is_punct(text[hi - 1])) {
    --hi;
    trailing.push_back(hi);
  }
  std::size_t piece = lo;
  for (std::size_t i = lo + 1; i + 1 < hi; ++i) {
    if (is_digit_separator(text[i]) && is_digit(text[i - 1]) && is_digit(text[i + 1])) {
      emit(text, piece, i, out);
      emit(text, i, i + 1, out);
      piece = i + 1;
    }
  }
  if (piece < hi) emit(text, piece, hi, out);
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) emit(text, *it, *it + 1, out);
}

bool is_title_abbreviation(const std::string& s) {
  static const std::array<std::string_view, 8> titles{"Dr", "Mr", "Mrs", "Ms", "Prof", "St", "Jr", "Sr"};
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'Z') return true;
  return std::find(titles.begin(), titles.end(), s) != titles.end();
}

bool has_blank_line(std::u32string_view gap) {
  int newlines = 0;
  for (char32_t c : gap) {
    if (c == U'\n') {
      if (++newlines >= 2) return true;
    } else if (!is_space(c)) {
      newlines = 0;
    }
  }
  return false;
}

}  // namespace

std::vector<Token> tokenize(std::u32string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) split_chunk(text, start, i, out);
  }
  return out;
}

SentenceBounds split_sentences(const std::vector<Token>& tokens, std::u32string_view text) {
  SentenceBounds bounds;
  if (tokens.empty()) return bounds;
  std::size_t first = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token& cur = tokens[i];
    const Token& next = tokens[i + 1];
    const std::u32string_view gap = text.substr(cur.end, next.start - cur.end);
    bool brk = has_blank_line(gap);
    if (!brk && (cur.text == "." || cur.text == "!" || cur.text == "?") && !gap.empty() &&
        is_upper(text[next.start])) {
      brk = true;
      if (cur.text == "." && i > 0 && tokens[i - 1].end == cur.start && is_title_abbreviation(tokens[i - 1].text))
        brk = false;
    }
    if (brk) {
      bounds.emplace_back(first, i + 1);
      first = i + 1;
    }
  }
  bounds.emplace_back(first, tokens.size());
  return bounds;
}

std::vector<Sentence> segment(std::u32string_view text) {
  std::vector<Token> tokens = tokenize(text);
  const SentenceBounds bounds = split_sentences(tokens, text);
  std::vector<Sentence> sentences;
  sentences.reserve(bounds.size());
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    Sentence s;
    for (std::size_t k = bounds[j].first; k < bounds[j].second; ++k) {
      Token t = std::move(tokens[k]);
      t.sentence_index = j;
      t.token_index = k - bounds[j].first;
      s.push_back(std::move(t));
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

}  // namespace deid::corpus
