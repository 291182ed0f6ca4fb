#include "deid/common/text.hpp"

#include <boost/locale/encoding_errors.hpp>
#include <boost/locale/encoding_utf.hpp>

#include "deid/common/error.hpp"

namespace deid {

std::u32string utf8_decode(std::string_view s) {
  try {
    return boost::locale::conv::utf_to_utf<char32_t>(s.data(), s.data() + s.size(), boost::locale::conv::stop);
  } catch (const boost::locale::conv::conversion_error&) {
    throw ParseError("invalid UTF-8 input");
  }
}

std::string utf8_encode(std::u32string_view s) {
  return boost::locale::conv::utf_to_utf<char>(s.data(), s.data() + s.size());
}

std::uint64_t fnv1a64(std::string_view s, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace deid
