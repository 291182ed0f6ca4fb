#include "deid/corpus/casing.hpp"

#include <array>

#include "deid/common/text.hpp"

namespace deid::corpus {

std::string_view to_string(CasingCategory c) {
  static constexpr std::array<std::string_view, kCasingCount> names{
      "allCaps", "initCap", "allLower", "mixedCase", "numeric", "mainlyNumeric", "containsDigit", "other"};
  return names[static_cast<std::size_t>(c)];
}

CasingCategory casing_feature(std::string_view token) {
  const std::u32string s = utf8_decode(token);
  if (s.empty()) return CasingCategory::Other;
  std::size_t digits = 0, upper = 0, lower = 0, other_letters = 0;
  for (char32_t c : s) {
    if (is_digit(c)) ++digits;
    else if (is_upper(c)) ++upper;
    else if (is_lower(c)) ++lower;
    else if (is_letter(c)) ++other_letters;
  }
  const std::size_t n = s.size();
  const bool only_cased_letters = upper + lower == n;
  if (digits == n) return CasingCategory::Numeric;
  if (2 * digits > n) return CasingCategory::MainlyNumeric;
  if (only_cased_letters && upper == n) return CasingCategory::AllCaps;
  if (only_cased_letters && is_upper(s[0]) && upper == 1) return CasingCategory::InitCap;
  if (only_cased_letters && lower == n) return CasingCategory::AllLower;
  if (digits > 0) return CasingCategory::ContainsDigit;
  if (only_cased_letters) return CasingCategory::MixedCase;
  return CasingCategory::Other;
}

}  // namespace deid::corpus
