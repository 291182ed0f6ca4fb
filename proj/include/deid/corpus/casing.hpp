#pragma once

#include <string_view>

namespace deid::corpus {

enum class CasingCategory { AllCaps, InitCap, AllLower, MixedCase, Numeric, MainlyNumeric, ContainsDigit, Other };

inline constexpr std::size_t kCasingCount = 8;

std::string_view to_string(CasingCategory c);

/// First matching rule wins:
///   Numeric        every character is a digit
///   MainlyNumeric  more than half the characters are digits
///   AllCaps        only letters, all upper case
///   InitCap        upper-case letter followed only by lower-case letters
///   AllLower       only letters, all lower case
///   ContainsDigit  at least one digit
///   MixedCase      only letters, mixed case
///   Other          anything else, including the empty string
CasingCategory casing_feature(std::string_view token);

}  // namespace deid::corpus
