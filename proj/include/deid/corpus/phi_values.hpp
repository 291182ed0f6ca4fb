#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deid/common/rng.hpp"
#include "deid/corpus/phi.hpp"

namespace deid::corpus {

/// Word pools used to render PHI values.
struct PhiLexicon {
  std::vector<std::string> first_names;
  std::vector<std::string> last_names;
  std::vector<std::string> cities;
  std::vector<std::string> states;
  std::vector<std::string> countries;
  std::vector<std::string> hospital_stems;
  std::vector<std::string> street_names;
  std::vector<std::string> organizations;
  std::vector<std::string> professions;
  std::vector<std::string> months;
};

const PhiLexicon& phi_lexicon();

/// A fresh random value of the given type.
std::string generate_phi_value(PhiType type, Rng& rng);

/// A type-appropriate replacement that keeps the original's surface shape where the
/// type has one (digit layout for numbers, format for dates, word count for names).
std::string surrogate_value(PhiType type, std::string_view original, Rng& rng);

/// Parses the date layouts produced by the generators. Returns false on anything
/// else or on an invalid calendar date.
bool is_valid_date_string(std::string_view s);

}  // namespace deid::corpus
