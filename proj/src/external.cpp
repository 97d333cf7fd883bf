#include "phishdef/external.hpp"

#include <charconv>
#include <fstream>

#include "phishdef/errors.hpp"

namespace phishdef {

namespace {

std::string trim_copy(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

std::string normalize_value(std::string_view s) {
    return to_lower(trim_copy(s));
}

} // namespace

std::chrono::year_month_day parse_iso_date(std::string_view text) {
    int y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        std::from_chars(text.data(), text.data() + 4, y).ec != std::errc{} ||
        std::from_chars(text.data() + 5, text.data() + 7, m).ec != std::errc{} ||
        std::from_chars(text.data() + 8, text.data() + 10, d).ec != std::errc{}) {
        throw std::invalid_argument("bad ISO date '" + std::string(text) + "'");
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw std::invalid_argument("bad ISO date '" + std::string(text) + "'");
    return ymd;
}

std::string format_iso_date(std::chrono::year_month_day date) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

long days_between(std::chrono::year_month_day from, std::chrono::year_month_day to) {
    return (std::chrono::sys_days(to) - std::chrono::sys_days(from)).count();
}

ExternalMap load_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sidecar file '" + path.string() + "'");

    ExternalMap map;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        ExternalRecord record;
        bool saw_observed = false;
        std::string_view rest = line;
        size_t field_no = 0;
        while (!rest.empty()) {
            size_t tab = rest.find('\t');
            std::string_view field = rest.substr(0, tab);
            rest = tab == std::string_view::npos ? std::string_view{} : rest.substr(tab + 1);
            if (field.empty()) continue;

            size_t eq = field.find('=');
            if (eq == std::string_view::npos)
                throw ParseError(line_no, "field without '=': '" + std::string(field) + "'");
            std::string_view key = field.substr(0, eq);
            std::string_view value = field.substr(eq + 1);

            if (field_no == 0 && key != "url")
                throw ParseError(line_no, "first field must be url=...");
            ++field_no;

            try {
                if (key == "url") {
                    record.url_key = trim_copy(value);
                } else if (key == "primary_domain") {
                    record.primary_domain = normalize_value(value);
                } else if (key == "registrar") {
                    record.registrar = normalize_value(value);
                } else if (key == "registrant") {
                    record.registrant = normalize_value(value);
                } else if (key == "registration_date") {
                    record.registration_date = parse_iso_date(trim_copy(value));
                } else if (key == "bgp_prefix") {
                    record.bgp_prefix = normalize_value(value);
                } else if (key == "as_number") {
                    long asn = 0;
                    std::string v = trim_copy(value);
                    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), asn);
                    if (ec != std::errc{} || p != v.data() + v.size())
                        throw ParseError(line_no, "bad as_number '" + v + "'");
                    record.as_number = asn;
                } else if (key == "country_code") {
                    record.country_code = normalize_value(value);
                } else if (key == "observed_date") {
                    record.observed_date = parse_iso_date(trim_copy(value));
                    saw_observed = true;
                }
                // unknown keys ignored
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
        }
        if (record.url_key.empty()) throw ParseError(line_no, "missing url key");
        if (!saw_observed) throw ParseError(line_no, "missing observed_date");
        if (record.registration_date &&
            days_between(*record.registration_date, record.observed_date) < 0) {
            throw ParseError(line_no, "registration_date after observed_date");
        }
        map[record.url_key] = std::move(record); // last record wins
    }
    return map;
}

ExternalFeatures extract_external(const ExternalRecord* record) {
    if (record == nullptr) return {{"ext_missing", 1.0}};

    ExternalFeatures features;
    auto add_binary = [&](const char* tag, const std::optional<std::string>& value) {
        if (value) features.emplace_back(std::string(tag) + "=" + *value, 1.0);
    };
    add_binary("primary_domain", record->primary_domain);
    add_binary("registrar", record->registrar);
    add_binary("registrant", record->registrant);
    add_binary("bgp", record->bgp_prefix);
    if (record->as_number) features.emplace_back("asn=" + std::to_string(*record->as_number), 1.0);
    add_binary("cc", record->country_code);
    if (record->registration_date) {
        long age = days_between(*record->registration_date, record->observed_date);
        features.emplace_back("site_age", scale(age, kSiteAgeCapDays));
    }
    return features;
}

} // namespace phishdef
