#include "deid/corpus/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "deid/common/error.hpp"
#include "deid/common/rng.hpp"
#include "deid/common/text.hpp"
#include "deid/corpus/phi_values.hpp"

namespace deid::corpus {

namespace {

struct Template {
  PhiType type;
  std::string_view before;
  std::string_view after;
};

// Placeholders never open a sentence with a digit, so the splitter still sees a capital.
constexpr std::array kTemplates{
    Template{PhiType::Patient, "the patient ", " was admitted for chest pain"},
    Template{PhiType::Patient, "", " is a pleasant gentleman with diabetes"},
    Template{PhiType::Patient, "Mr ", " reports improved appetite"},
    Template{PhiType::Patient, "spoke with Ms ", " about her medications"},
    Template{PhiType::Patient, "patient name : ", ""},
    Template{PhiType::Doctor, "seen by Dr. ", " in clinic"},
    Template{PhiType::Doctor, "discussed with Dr ", " today"},
    Template{PhiType::Doctor, "attending physician ", ""},
    Template{PhiType::Doctor, "cardiology consult by Dr. ", " appreciated"},
    Template{PhiType::Date, "on ", " she underwent an echocardiogram"},
    Template{PhiType::Date, "follow up scheduled for ", ""},
    Template{PhiType::Date, "admitted on ", ""},
    Template{PhiType::Date, "last colonoscopy was ", ""},
    Template{PhiType::Age, "he is a ", " year old man"},
    Template{PhiType::Age, "age ", ""},
    Template{PhiType::Age, "she is ", " years old"},
    Template{PhiType::Phone, "call ", " with questions"},
    Template{PhiType::Phone, "contact number is ", ""},
    Template{PhiType::Phone, "pager ", ""},
    Template{PhiType::MedicalRecord, "MRN ", ""},
    Template{PhiType::MedicalRecord, "medical record number ", ""},
    Template{PhiType::MedicalRecord, "record # ", " reviewed"},
    Template{PhiType::City, "lives in ", " with her husband"},
    Template{PhiType::City, "transferred from ", " by ambulance"},
    Template{PhiType::City, "she is a resident of ", ""},
    Template{PhiType::Hospital, "admitted to ", " for observation"},
    Template{PhiType::Hospital, "transferred to ", ""},
    Template{PhiType::Hospital, "followed at ", " by cardiology"},
    Template{PhiType::Username, "username ", " entered the note"},
    Template{PhiType::Profession, "he works as a ", ""},
    Template{PhiType::Street, "home address is ", ""},
    Template{PhiType::State, "moved here from ", " last year"},
    Template{PhiType::Country, "recently traveled to ", ""},
    Template{PhiType::Zip, "zip code ", ""},
    Template{PhiType::Organization, "employed by ", ""},
    Template{PhiType::Fax, "fax records to ", ""},
    Template{PhiType::Email, "email ", " for results"},
    Template{PhiType::Url, "portal at ", ""},
    Template{PhiType::IpAddress, "logged in from ", ""},
    Template{PhiType::IdNum, "insurance ID ", ""},
    Template{PhiType::Ssn, "SSN ", ""},
    Template{PhiType::LicenseNum, "license number ", ""},
};

constexpr std::array<std::string_view, 16> kFiller{
    "blood pressure was 120/80",
    "continue Lasix 40 mg daily",
    "denies fever or chills",
    "lungs are clear to auscultation",
    "hemoglobin A1c of 7.2 noted",
    "the patient tolerated the procedure well",
    "follow up in 2 weeks",
    "Metformin was increased to 1000 mg",
    "ECG showed normal sinus rhythm",
    "no acute distress",
    "CT of the chest was unremarkable",
    "will continue to monitor renal function",
    "heart rate 72 and regular",
    "plan discussed with the family",
    "INR 2.3 on warfarin",
    "she was given Tylenol for pain",
};

std::string capitalise(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

struct Piece {
  std::string text;
  std::optional<PhiType> type;
};

// Lexicon pool a word belongs to, for the shared embedding direction.
const std::unordered_map<std::string, std::string>& pool_of_word() {
  static const std::unordered_map<std::string, std::string> m = [] {
    std::unordered_map<std::string, std::string> out;
    const auto& lex = phi_lexicon();
    auto add = [&](const std::vector<std::string>& pool, const std::string& name) {
      for (const auto& word : pool) out.emplace(ascii_lower(word), name);
    };
    add(lex.first_names, "first_name");
    add(lex.last_names, "last_name");
    add(lex.cities, "city");
    add(lex.states, "state");
    add(lex.countries, "country");
    add(lex.hospital_stems, "hospital");
    add(lex.street_names, "street");
    add(lex.professions, "profession");
    add(lex.months, "month");
    return out;
  }();
  return m;
}

void gaussian_fill(std::vector<double>& v, std::uint64_t seed, double scale) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& x : v) x += scale * normal(rng);
}

}  // namespace

SynthConfig SynthConfig::standard() {
  SynthConfig cfg;
  for (PhiType t : {PhiType::Patient, PhiType::Doctor, PhiType::Date, PhiType::Age, PhiType::Phone,
                    PhiType::MedicalRecord, PhiType::City, PhiType::Hospital})
    cfg.densities[t] = 0.15;
  return cfg;
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
  SynthConfig cfg = SynthConfig::standard();
  try {
    cfg.documents = j.value("documents", cfg.documents);
    cfg.sentences_per_document = j.value("sentences_per_document", cfg.sentences_per_document);
    cfg.test_fraction = j.value("test_fraction", cfg.test_fraction);
    cfg.word_dim = j.value("word_dim", cfg.word_dim);
    cfg.contextual_dim = j.value("contextual_dim", cfg.contextual_dim);
    if (j.contains("densities")) {
      cfg.densities.clear();
      for (const auto& [key, value] : j.at("densities").items()) {
        const auto type = parse_phi_type(key);
        if (!type) throw ConfigError("synth config: unknown PHI type \"" + key + "\"");
        cfg.densities[*type] = value.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synth config: ") + e.what());
  }
  for (const auto& [type, d] : cfg.densities) {
    if (d < 0.0) throw ConfigError("synth config: negative density for " + std::string(to_string(type)));
  }
  if (cfg.test_fraction < 0.0 || cfg.test_fraction >= 1.0) throw ConfigError("synth config: test_fraction must be in [0,1)");
  return cfg;
}

nlohmann::json to_json(const SynthConfig& cfg) {
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [type, v] : cfg.densities) d[std::string(to_string(type))] = v;
  return {{"documents", cfg.documents},   {"sentences_per_document", cfg.sentences_per_document},
          {"densities", d},               {"test_fraction", cfg.test_fraction},
          {"word_dim", cfg.word_dim},     {"contextual_dim", cfg.contextual_dim}};
}

const std::vector<PhiType>& synth_supported_types() {
  static const std::vector<PhiType> types = [] {
    std::vector<PhiType> out;
    for (const auto& t : kTemplates)
      if (std::find(out.begin(), out.end(), t.type) == out.end()) out.push_back(t.type);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return types;
}

std::vector<Document> generate_synthetic(const SynthConfig& config, std::uint64_t seed) {
  for (const auto& [type, d] : config.densities) {
    if (d > 0.0 && std::find(synth_supported_types().begin(), synth_supported_types().end(), type) ==
                       synth_supported_types().end())
      throw ConfigError("no synthetic template for PHI type " + std::string(to_string(type)));
  }
  Rng rng = make_stream(seed, "synth");
  std::vector<Document> docs;
  docs.reserve(config.documents);
  for (std::size_t di = 0; di < config.documents; ++di) {
    std::vector<Piece> pieces;
    for (std::size_t si = 0; si < config.sentences_per_document; ++si) {
      // One clause per drawn PHI instance; a filler clause when none were drawn.
      std::vector<std::vector<Piece>> clauses;
      for (const auto& [type, density] : config.densities) {
        const double whole = std::floor(density);
        std::size_t n = static_cast<std::size_t>(whole) + (uniform01(rng) < density - whole ? 1 : 0);
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<const Template*> options;
          for (const auto& t : kTemplates)
            if (t.type == type) options.push_back(&t);
          const Template& t = *options[uniform_index(rng, options.size())];
          std::vector<Piece> clause;
          if (!t.before.empty()) clause.push_back({std::string(t.before), std::nullopt});
          clause.push_back({generate_phi_value(type, rng), type});
          if (!t.after.empty()) clause.push_back({std::string(t.after), std::nullopt});
          clauses.push_back(std::move(clause));
        }
      }
      if (clauses.empty() || uniform01(rng) < 0.3)
        clauses.push_back({{std::string(kFiller[uniform_index(rng, kFiller.size())]), std::nullopt}});
      std::shuffle(clauses.begin(), clauses.end(), rng);

      if (si > 0) pieces.push_back({(si % 4 == 0) ? "\n\n" : " ", std::nullopt});
      for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        if (ci > 0) pieces.push_back({ci + 1 == clauses.size() ? " and " : " ; ", std::nullopt});
        auto& clause = clauses[ci];
        if (ci == 0) clause.front().text = capitalise(clause.front().text);
        for (auto& p : clause) pieces.push_back(std::move(p));
      }
      pieces.push_back({" .", std::nullopt});
    }

    std::u32string text;
    std::vector<Span> spans;
    for (const Piece& p : pieces) {
      const std::u32string u = utf8_decode(p.text);
      if (p.type) spans.push_back({text.size(), text.size() + u.size(), *p.type, p.text});
      text += u;
    }
    char id[32];
    std::snprintf(id, sizeof id, "synth-%04zu", di);
    docs.push_back(make_document(id, std::move(text), std::move(spans)));
  }
  return docs;
}

std::set<std::string> synthetic_vocabulary(const std::vector<Document>& docs) {
  std::set<std::string> vocab;
  for (const auto& d : docs)
    for (const auto& s : d.sentences)
      for (const auto& t : s) vocab.insert(ascii_lower(t.text));
  for (const auto& [word, pool] : pool_of_word()) vocab.insert(word);
  return vocab;
}

std::vector<double> synthetic_word_vector(std::string_view word, std::size_t dim, std::uint64_t seed) {
  const std::string lower = ascii_lower(word);
  std::vector<double> v(dim, 0.0);
  const double inv = 1.0 / std::sqrt(static_cast<double>(dim));
  gaussian_fill(v, fnv1a64(lower, fnv1a64("word") ^ seed), inv);
  if (auto it = pool_of_word().find(lower); it != pool_of_word().end())
    gaussian_fill(v, fnv1a64(it->second, fnv1a64("pool") ^ seed), inv);
  return v;
}

}  // namespace deid::corpus
