#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

#include "phishdef/features.hpp"

namespace phishdef {

// Pre-collected registration and network metadata for one URL, keyed by the
// exact URL text. Stands in for live WHOIS / network-info queries.
struct ExternalRecord {
    std::string url_key;
    std::optional<std::string> primary_domain;
    std::optional<std::string> registrar;
    std::optional<std::string> registrant;
    std::optional<std::chrono::year_month_day> registration_date;
    std::optional<std::string> bgp_prefix;
    std::optional<long> as_number;
    std::optional<std::string> country_code;
    std::chrono::year_month_day observed_date{};
};

using ExternalMap = std::unordered_map<std::string, ExternalRecord>;

// Days a site has been registered saturate at ten years.
inline constexpr long kSiteAgeCapDays = 3650;

// Line-delimited sidecar: TAB-separated key=value fields, first field must
// be url=<exact url>; dates are ISO-8601. Later duplicates overwrite earlier
// ones; unknown keys are ignored. Throws IoError / ParseError.
ExternalMap load_sidecar(const std::filesystem::path& path);

// Binary features for each present categorical field (values lowercased and
// trimmed) plus the scaled site-age; a missing record yields the single
// marker feature "ext_missing".
ExternalFeatures extract_external(const ExternalRecord* record);

std::chrono::year_month_day parse_iso_date(std::string_view text);
std::string format_iso_date(std::chrono::year_month_day date);
long days_between(std::chrono::year_month_day from, std::chrono::year_month_day to);

} // namespace phishdef
