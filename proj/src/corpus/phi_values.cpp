#include "deid/corpus/phi_values.hpp"

#include <array>
#include <cstdio>
#include <regex>

#include "deid/common/text.hpp"

namespace deid::corpus {

namespace {

const std::string& pick(const std::vector<std::string>& pool, Rng& rng) { return pool[uniform_index(rng, pool.size())]; }

int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string digits(Rng& rng, int n, bool nonzero_first = true) {
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('0' + rand_int(rng, (i == 0 && nonzero_first) ? 1 : 0, 9));
  return s;
}

std::string pad2(int v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

struct Ymd {
  int year, month, day;
};

Ymd random_date(Rng& rng) { return {rand_int(rng, 1990, 2025), rand_int(rng, 1, 12), rand_int(rng, 1, 28)}; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> days{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return (m == 2 && leap) ? 29 : days[static_cast<std::size_t>(m - 1)];
}

bool valid_ymd(int y, int m, int d) { return m >= 1 && m <= 12 && d >= 1 && d <= days_in_month(y, m); }

int month_index(std::string_view name) {
  const auto& months = phi_lexicon().months;
  for (std::size_t i = 0; i < months.size(); ++i)
    if (months[i] == name) return static_cast<int>(i) + 1;
  return 0;
}

const std::regex kSlashFull(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
const std::regex kSlashShort(R"((\d{1,2})/(\d{1,2})/(\d{2}))");
const std::regex kIso(R"((\d{4})-(\d{2})-(\d{2}))");
const std::regex kMonthDayYear(R"(([A-Z][a-z]+) (\d{1,2}), (\d{4}))");
const std::regex kMonthYear(R"(([A-Z][a-z]+) (\d{4}))");
const std::regex kSlashMonthDay(R"((\d{1,2})/(\d{1,2}))");
const std::regex kYear(R"((\d{4}))");

std::string render_like(std::string_view original, const Ymd& d) {
  const std::string s(original);
  std::smatch m;
  auto num = [](int v, const std::string& like) { return like.size() == 2 ? pad2(v) : std::to_string(v); };
  const auto& months = phi_lexicon().months;
  if (std::regex_match(s, m, kSlashFull))
    return num(d.month, m[1]) + "/" + num(d.day, m[2]) + "/" + std::to_string(d.year);
  if (std::regex_match(s, m, kSlashShort))
    return num(d.month, m[1]) + "/" + num(d.day, m[2]) + "/" + pad2(d.year % 100);
  if (std::regex_match(s, m, kIso)) return std::to_string(d.year) + "-" + pad2(d.month) + "-" + pad2(d.day);
  if (std::regex_match(s, m, kMonthDayYear) && month_index(m[1].str()))
    return months[static_cast<std::size_t>(d.month - 1)] + " " + std::to_string(d.day) + ", " + std::to_string(d.year);
  if (std::regex_match(s, m, kMonthYear) && month_index(m[1].str()))
    return months[static_cast<std::size_t>(d.month - 1)] + " " + std::to_string(d.year);
  if (std::regex_match(s, m, kSlashMonthDay)) return num(d.month, m[1]) + "/" + num(d.day, m[2]);
  if (std::regex_match(s, m, kYear)) return std::to_string(d.year);
  return pad2(d.month) + "/" + pad2(d.day) + "/" + std::to_string(d.year);
}

std::string random_name(Rng& rng, bool full) {
  const auto& lex = phi_lexicon();
  return full ? pick(lex.first_names, rng) + " " + pick(lex.last_names, rng) : pick(lex.last_names, rng);
}

// Keeps punctuation/letters, redraws digits.
std::string redraw_digits(std::string_view original, Rng& rng) {
  std::string out(original);
  bool first = true;
  for (char& c : out) {
    if (c >= '0' && c <= '9') {
      c = static_cast<char>('0' + rand_int(rng, (first && c != '0') ? 1 : 0, 9));
      first = false;
    }
  }
  return out;
}

}  // namespace

const PhiLexicon& phi_lexicon() {
  static const PhiLexicon lex{
      {"James", "Mary", "Robert", "Patricia", "John", "Jennifer", "Michael", "Linda", "David", "Elizabeth",
       "William", "Barbara", "Richard", "Susan", "Joseph", "Jessica", "Thomas", "Sarah", "Charles", "Karen",
       "Daniel", "Nancy", "Matthew", "Lisa", "Anthony", "Betty", "Mark", "Margaret", "Donald", "Sandra",
       "Steven", "Ashley", "Paul", "Kimberly", "Andrew", "Emily", "Joshua", "Donna", "Kenneth", "Michelle",
       "Kevin", "Carol", "Brian", "Amanda", "George", "Melissa", "Edward", "Deborah", "Ronald", "Stephanie"},
      {"Smith", "Johnson", "Williams", "Brown", "Jones", "Garcia", "Miller", "Davis", "Rodriguez", "Martinez",
       "Hernandez", "Lopez", "Gonzalez", "Wilson", "Anderson", "Taylor", "Moore", "Jackson", "Martin", "Lee",
       "Perez", "Thompson", "White", "Harris", "Sanchez", "Clark", "Ramirez", "Lewis", "Robinson", "Walker",
       "Young", "Allen", "King", "Wright", "Scott", "Torres", "Nguyen", "Hill", "Flores", "Green", "Adams",
       "Nelson", "Baker", "Hall", "Rivera", "Campbell", "Mitchell", "Carter", "Roberts", "Kowalski"},
      {"Boston", "Springfield", "Worcester", "Lowell", "Cambridge", "Quincy", "Lynn", "Brockton", "Salem",
       "Framingham", "Chicago", "Denver", "Phoenix", "Portland", "Atlanta", "Houston", "Seattle", "Omaha",
       "Tucson", "Fresno", "Albany", "Dayton", "Akron", "Reno", "Tampa", "Austin", "Madison", "Raleigh"},
      {"Massachusetts", "Connecticut", "Vermont", "Maine", "Ohio", "Texas", "Oregon", "Georgia", "Arizona",
       "Nebraska", "Colorado", "Florida", "Virginia", "Michigan", "Nevada", "Utah"},
      {"Canada", "Mexico", "Ireland", "Italy", "Portugal", "Brazil", "India", "China", "Haiti", "Germany",
       "Poland", "Greece", "Kenya", "Vietnam"},
      {"Riverside", "Lakeview", "Mercy", "Hillcrest", "Fairview", "Brookside", "Northgate", "Westfield",
       "Greenwood", "Oakridge", "Pinecrest", "Bayview", "Sunnyvale", "Clearwater", "Redwood", "Stonebridge"},
      {"Maple", "Oak", "Elm", "Cedar", "Pine", "Washington", "Lincoln", "Highland", "Chestnut", "Walnut",
       "Spruce", "Willow", "Sycamore", "Birch"},
      {"Acme Logistics", "Northwind Traders", "Globex Industries", "Initech", "Vandelay Imports",
       "Stark Manufacturing", "Wayne Foods", "Umbrella Textiles", "Hooli", "Soylent Mills"},
      {"teacher", "electrician", "plumber", "accountant", "carpenter", "engineer", "lawyer", "firefighter",
       "mechanic", "librarian", "farmer", "chef", "pilot", "architect", "cashier", "welder"},
      {"January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
       "November", "December"},
  };
  return lex;
}

std::string generate_phi_value(PhiType type, Rng& rng) {
  const auto& lex = phi_lexicon();
  switch (type) {
    case PhiType::Patient: return random_name(rng, uniform01(rng) < 0.7);
    case PhiType::Doctor: return random_name(rng, uniform01(rng) < 0.5);
    case PhiType::Username:
      return ascii_lower(pick(lex.first_names, rng).substr(0, 1) + pick(lex.last_names, rng)) + digits(rng, 2, false);
    case PhiType::Profession: return pick(lex.professions, rng);
    case PhiType::Street: {
      static const std::array<std::string_view, 4> suffix{"Street", "Avenue", "Road", "Lane"};
      return std::to_string(rand_int(rng, 1, 999)) + " " + pick(lex.street_names, rng) + " " +
             std::string(suffix[uniform_index(rng, suffix.size())]);
    }
    case PhiType::City: return pick(lex.cities, rng);
    case PhiType::State: return pick(lex.states, rng);
    case PhiType::Country: return pick(lex.countries, rng);
    case PhiType::Zip: return digits(rng, 5, false);
    case PhiType::Hospital: {
      static const std::array<std::string_view, 4> suffix{"Hospital", "Medical Center", "General Hospital",
                                                          "Clinic"};
      return pick(lex.hospital_stems, rng) + " " + std::string(suffix[uniform_index(rng, suffix.size())]);
    }
    case PhiType::Organization: return pick(lex.organizations, rng);
    case PhiType::Age: return std::to_string(rand_int(rng, 18, 95));
    case PhiType::Date: {
      const Ymd d = random_date(rng);
      static const std::array<std::string_view, 5> layouts{"01/01/2000", "1/1/00", "2000-01-01", "January 1, 2000",
                                                           "01/01"};
      return render_like(layouts[uniform_index(rng, layouts.size())], d);
    }
    case PhiType::Phone:
    case PhiType::Fax:
      return uniform01(rng) < 0.5 ? "(" + digits(rng, 3) + ") " + digits(rng, 3) + "-" + digits(rng, 4, false)
                                  : digits(rng, 3) + "-" + digits(rng, 3) + "-" + digits(rng, 4, false);
    case PhiType::Email:
      return ascii_lower(pick(lex.first_names, rng) + "." + pick(lex.last_names, rng)) + "@mail.example.org";
    case PhiType::Url: return "www." + ascii_lower(pick(lex.hospital_stems, rng)) + "health.org";
    case PhiType::IpAddress:
      return std::to_string(rand_int(rng, 10, 223)) + "." + std::to_string(rand_int(rng, 0, 255)) + "." +
             std::to_string(rand_int(rng, 0, 255)) + "." + std::to_string(rand_int(rng, 1, 254));
    case PhiType::MedicalRecord:
      return uniform01(rng) < 0.5 ? digits(rng, 7) : digits(rng, 3) + "-" + digits(rng, 2, false) + "-" + digits(rng, 2, false);
    case PhiType::IdNum: return std::string(1, static_cast<char>('A' + rand_int(rng, 0, 25))) + digits(rng, 6, false);
    case PhiType::Ssn: return digits(rng, 3) + "-" + digits(rng, 2, false) + "-" + digits(rng, 4, false);
    case PhiType::LicenseNum: return "LIC" + digits(rng, 6);
  }
  return "REDACTED";
}

std::string surrogate_value(PhiType type, std::string_view original, Rng& rng) {
  switch (type) {
    case PhiType::Patient:
    case PhiType::Doctor: {
      const bool full = original.find(' ') != std::string_view::npos;
      return random_name(rng, full);
    }
    case PhiType::Age: {
      int age = 0;
      try {
        age = std::stoi(std::string(original));
      } catch (...) {
      }
      return std::to_string(age >= 90 ? rand_int(rng, 90, 99) : rand_int(rng, 18, 89));
    }
    case PhiType::Date: return render_like(original, random_date(rng));
    case PhiType::Phone:
    case PhiType::Fax:
    case PhiType::Zip:
    case PhiType::MedicalRecord:
    case PhiType::IdNum:
    case PhiType::Ssn:
    case PhiType::LicenseNum:
    case PhiType::IpAddress: {
      const bool has_digit = original.find_first_of("0123456789") != std::string_view::npos;
      return has_digit ? redraw_digits(original, rng) : generate_phi_value(type, rng);
    }
    default: return generate_phi_value(type, rng);
  }
}

bool is_valid_date_string(std::string_view original) {
  const std::string s(original);
  std::smatch m;
  auto i = [](const std::ssub_match& x) { return std::stoi(x.str()); };
  if (std::regex_match(s, m, kSlashFull)) return valid_ymd(i(m[3]), i(m[1]), i(m[2]));
  if (std::regex_match(s, m, kSlashShort)) return valid_ymd(2000 + i(m[3]), i(m[1]), i(m[2]));
  if (std::regex_match(s, m, kIso)) return valid_ymd(i(m[1]), i(m[2]), i(m[3]));
  if (std::regex_match(s, m, kMonthDayYear)) {
    const int mo = month_index(m[1].str());
    return mo != 0 && valid_ymd(i(m[3]), mo, i(m[2]));
  }
  if (std::regex_match(s, m, kMonthYear)) return month_index(m[1].str()) != 0;
  if (std::regex_match(s, m, kSlashMonthDay)) return valid_ymd(2000, i(m[1]), i(m[2]));
  if (std::regex_match(s, m, kYear)) return true;
  return false;
}

}  // namespace deid::corpus
