#include "deid/corpus/phi.hpp"

#include <utility>

#include "deid/common/text.hpp"

namespace deid::corpus {

namespace {

struct PhiRow {
  PhiType type;
  std::string_view label;
  HipaaCategory category;
};

constexpr std::array<PhiRow, kPhiTypeCount> kRows{{
    {PhiType::Patient, "PATIENT", HipaaCategory::Name},
    {PhiType::Doctor, "DOCTOR", HipaaCategory::Name},
    {PhiType::Username, "USERNAME", HipaaCategory::Name},
    {PhiType::Profession, "PROFESSION", HipaaCategory::Profession},
    {PhiType::Street, "STREET", HipaaCategory::Location},
    {PhiType::City, "CITY", HipaaCategory::Location},
    {PhiType::State, "STATE", HipaaCategory::Location},
    {PhiType::Country, "COUNTRY", HipaaCategory::Location},
    {PhiType::Zip, "ZIP", HipaaCategory::Location},
    {PhiType::Hospital, "HOSPITAL", HipaaCategory::Location},
    {PhiType::Organization, "ORGANIZATION", HipaaCategory::Location},
    {PhiType::Age, "AGE", HipaaCategory::Age},
    {PhiType::Date, "DATE", HipaaCategory::Date},
    {PhiType::Phone, "PHONE", HipaaCategory::Contact},
    {PhiType::Fax, "FAX", HipaaCategory::Contact},
    {PhiType::Email, "EMAIL", HipaaCategory::Contact},
    {PhiType::Url, "URL", HipaaCategory::Contact},
    {PhiType::IpAddress, "IPADDR", HipaaCategory::Contact},
    {PhiType::MedicalRecord, "MEDICALRECORD", HipaaCategory::Id},
    {PhiType::IdNum, "IDNUM", HipaaCategory::Id},
    {PhiType::Ssn, "SSN", HipaaCategory::Id},
    {PhiType::LicenseNum, "LICENSE", HipaaCategory::Id},
}};

const PhiRow& row(PhiType t) { return kRows[static_cast<std::size_t>(t)]; }

}  // namespace

const std::array<PhiType, kPhiTypeCount>& all_phi_types() {
  static const auto types = [] {
    std::array<PhiType, kPhiTypeCount> out{};
    for (std::size_t i = 0; i < kPhiTypeCount; ++i) out[i] = kRows[i].type;
    return out;
  }();
  return types;
}

const std::array<HipaaCategory, kHipaaCategoryCount>& all_hipaa_categories() {
  static constexpr std::array<HipaaCategory, kHipaaCategoryCount> cats{
      HipaaCategory::Name, HipaaCategory::Profession, HipaaCategory::Location, HipaaCategory::Age,
      HipaaCategory::Date, HipaaCategory::Contact,    HipaaCategory::Id};
  return cats;
}

HipaaCategory map_to_hipaa(PhiType type) { return row(type).category; }

std::string_view to_string(PhiType type) { return row(type).label; }

std::string_view to_string(HipaaCategory cat) {
  switch (cat) {
    case HipaaCategory::Name: return "NAME";
    case HipaaCategory::Profession: return "PROFESSION";
    case HipaaCategory::Location: return "LOCATION";
    case HipaaCategory::Age: return "AGE";
    case HipaaCategory::Date: return "DATE";
    case HipaaCategory::Contact: return "CONTACT";
    case HipaaCategory::Id: return "ID";
  }
  return "?";
}

std::optional<PhiType> parse_phi_type(std::string_view s) {
  std::string upper(s);
  for (char& c : upper)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (const auto& r : kRows)
    if (r.label == upper) return r.type;
  return std::nullopt;
}

std::optional<PhiType> phi_type_from_i2b2(std::string_view s) {
  if (auto t = parse_phi_type(s)) return t;
  std::string upper(s);
  for (char& c : upper)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  static const std::pair<std::string_view, PhiType> extra[] = {
      {"IPADDRESS", PhiType::IpAddress},  {"LICENSENUM", PhiType::LicenseNum},
      {"ROOM", PhiType::Hospital},        {"DEPARTMENT", PhiType::Hospital},
      {"LOCATION-OTHER", PhiType::City},  {"HEALTHPLAN", PhiType::IdNum},
      {"ACCOUNT", PhiType::IdNum},        {"VEHICLE", PhiType::IdNum},
      {"DEVICE", PhiType::IdNum},         {"BIOID", PhiType::IdNum},
      {"INITIAL", PhiType::Patient},      {"INITIALS", PhiType::Patient},
  };
  for (const auto& [label, type] : extra)
    if (label == upper) return type;
  return std::nullopt;
}

}  // namespace deid::corpus
