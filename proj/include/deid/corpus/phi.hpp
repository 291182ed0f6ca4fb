#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace deid::corpus {

/// Fine-grained i2b2 PHI types.
enum class PhiType {
  Patient,
  Doctor,
  Username,
  Profession,
  Street,
  City,
  State,
  Country,
  Zip,
  Hospital,
  Organization,
  Age,
  Date,
  Phone,
  Fax,
  Email,
  Url,
  IpAddress,
  MedicalRecord,
  IdNum,
  Ssn,
  LicenseNum,
};

inline constexpr std::size_t kPhiTypeCount = 22;

/// HIPAA Safe Harbor groups, in reporting order.
enum class HipaaCategory { Name, Profession, Location, Age, Date, Contact, Id };

inline constexpr std::size_t kHipaaCategoryCount = 7;

const std::array<PhiType, kPhiTypeCount>& all_phi_types();
const std::array<HipaaCategory, kHipaaCategoryCount>& all_hipaa_categories();

HipaaCategory map_to_hipaa(PhiType type);

/// Canonical upper-case label ("PATIENT", "MEDICALRECORD", ...), used in files and BIO tags.
std::string_view to_string(PhiType type);
std::string_view to_string(HipaaCategory cat);

/// Parses a canonical label (case-insensitive).
std::optional<PhiType> parse_phi_type(std::string_view s);

/// i2b2 TYPE attribute -> PhiType. Accepts the canonical labels plus the i2b2 2014
/// sub-types outside the 22-type set:
///   IPADDRESS -> IpAddress, LICENSE -> LicenseNum, ROOM/DEPARTMENT -> Hospital,
///   LOCATION-OTHER -> City, HEALTHPLAN/ACCOUNT/VEHICLE/DEVICE/BIOID -> IdNum,
///   INITIAL/INITIALS -> Patient.
std::optional<PhiType> phi_type_from_i2b2(std::string_view s);

}  // namespace deid::corpus
