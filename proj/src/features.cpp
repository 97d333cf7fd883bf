#include "phishdef/features.hpp"

#include <algorithm>

#include "phishdef/errors.hpp"

namespace phishdef {

namespace {

long count_chars(std::string_view s, std::string_view chars) {
    long n = 0;
    for (char c : s)
        if (chars.find(c) != std::string_view::npos) ++n;
    return n;
}

} // namespace

Blacklist Blacklist::standard() {
    return Blacklist{{"confirm", "account", "banking", "secure", "ebayisapi", "webscr",
                      "login", "signin", "paypal", "free", "lucky", "bonus"}};
}

bool Blacklist::matches_url(const std::string& lowercased_url) const {
    for (const auto& w : words) {
        if (lowercased_url.find(w) != std::string::npos) return true;
    }
    return false;
}

const std::array<std::string, kNumOrFeatures>& or_feature_keys() {
    static const std::array<std::string, kNumOrFeatures> keys = {
        "or=url_len",         "or=url_n_dot",         "or=url_blacklist",
        "or=dom_len",         "or=dom_is_ip",         "or=dom_has_port",
        "or=dom_n_token",     "or=dom_n_hyphen",      "or=dom_max_token_len",
        "or=dir_len",         "or=dir_n_subdir",      "or=dir_max_subdir_len",
        "or=dir_max_dot",     "or=dir_max_delim",     "or=file_len",
        "or=file_n_dot",      "or=file_n_delim",      "or=arg_len",
        "or=arg_n_var",       "or=arg_max_value_len", "or=arg_max_delim"};
    return keys;
}

std::array<long, kNumOrCaps> ScalingCaps::as_array() const {
    return {url_len, url_n_dot, dom_len, dom_n_token, dom_n_hyphen, dom_max_token_len,
            dir_len, dir_n_subdir, dir_max_subdir_len, dir_max_dot, dir_max_delim,
            file_len, file_n_dot, file_n_delim, arg_len, arg_n_var, arg_max_value_len,
            arg_max_delim};
}

ScalingCaps ScalingCaps::from_array(const std::array<long, kNumOrCaps>& a) {
    ScalingCaps c;
    c.url_len = a[0];
    c.url_n_dot = a[1];
    c.dom_len = a[2];
    c.dom_n_token = a[3];
    c.dom_n_hyphen = a[4];
    c.dom_max_token_len = a[5];
    c.dir_len = a[6];
    c.dir_n_subdir = a[7];
    c.dir_max_subdir_len = a[8];
    c.dir_max_dot = a[9];
    c.dir_max_delim = a[10];
    c.file_len = a[11];
    c.file_n_dot = a[12];
    c.file_n_delim = a[13];
    c.arg_len = a[14];
    c.arg_n_var = a[15];
    c.arg_max_value_len = a[16];
    c.arg_max_delim = a[17];
    return c;
}

double scale(long value, long cap) {
    return static_cast<double>(std::min(value, cap)) / static_cast<double>(cap);
}

FeatureDictionary::FeatureDictionary() {
    for (const auto& key : or_feature_keys()) {
        entries_.emplace(key, next_index_++);
    }
}

std::optional<uint32_t> FeatureDictionary::lookup(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<uint32_t> FeatureDictionary::lookup_or_add(std::string_view key) {
    auto it = entries_.find(std::string(key));
    if (it != entries_.end()) return it->second;
    if (frozen_) return std::nullopt;
    uint32_t index = next_index_++;
    entries_.emplace(std::string(key), index);
    return index;
}

std::vector<std::pair<std::string, uint32_t>> FeatureDictionary::sorted_entries() const {
    std::vector<std::pair<std::string, uint32_t>> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

FeatureDictionary FeatureDictionary::from_entries(
    const std::vector<std::pair<std::string, uint32_t>>& entries) {
    FeatureDictionary dict;
    dict.entries_.clear();
    dict.next_index_ = 0;
    std::vector<bool> seen(entries.size(), false);
    for (const auto& [key, index] : entries) {
        if (index >= entries.size() || seen[index])
            throw ModelFormatError("dictionary indices not dense");
        seen[index] = true;
        if (!dict.entries_.emplace(key, index).second)
            throw ModelFormatError("duplicate dictionary key '" + key + "'");
    }
    dict.next_index_ = static_cast<uint32_t>(entries.size());
    dict.frozen_ = true;
    return dict;
}

double FeatureVector::value_at(uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, uint32_t i) { return e.first < i; });
    if (it == entries.end() || it->first != index) return 0.0;
    return it->second;
}

std::vector<std::string> extract_bag_of_words(const UrlParts& parts) {
    std::vector<std::string> keys;

    auto host_tokens = tokenize(parts.host);
    for (size_t i = 0; i + 1 < host_tokens.size(); ++i) keys.push_back("name=" + host_tokens[i]);
    if (!host_tokens.empty()) keys.push_back("tld=" + host_tokens.back());

    for (const auto& dir : parts.directories) {
        for (const auto& tok : tokenize(dir)) keys.push_back("dir=" + tok);
    }
    if (parts.file_name) {
        for (const auto& tok : tokenize(*parts.file_name)) keys.push_back("file=" + tok);
    }
    if (parts.file_extension) {
        for (const auto& tok : tokenize(*parts.file_extension)) keys.push_back("ext=" + tok);
    }
    if (parts.query) {
        for (const auto& tok : tokenize(*parts.query)) keys.push_back("arg=" + tok);
    }
    return keys;
}

OrFeatureSet extract_or_features(const UrlParts& parts, const Blacklist& blacklist) {
    OrFeatureSet f;

    const std::string url = parts.reassemble();
    f.url_len = static_cast<long>(url.size());
    f.url_n_dot = count_chars(url, ".");
    f.url_blacklist = blacklist.matches_url(to_lower(url));

    f.dom_len = static_cast<long>(parts.host.size());
    f.dom_is_ip = parts.host_is_ip;
    f.dom_has_port = parts.port.has_value();
    auto host_tokens = tokenize(parts.host);
    f.dom_n_token = static_cast<long>(host_tokens.size());
    f.dom_n_hyphen = count_chars(parts.host, "-");
    for (const auto& t : host_tokens)
        f.dom_max_token_len = std::max(f.dom_max_token_len, static_cast<long>(t.size()));

    if (!parts.directories.empty()) {
        // Length of the directory substring including its bounding slashes.
        long joined = 0;
        for (const auto& d : parts.directories) joined += static_cast<long>(d.size());
        f.dir_len = joined + static_cast<long>(parts.directories.size()) + 1;
        f.dir_n_subdir = static_cast<long>(parts.directories.size());
        for (const auto& d : parts.directories) {
            f.dir_max_subdir_len = std::max(f.dir_max_subdir_len, static_cast<long>(d.size()));
            f.dir_max_dot = std::max(f.dir_max_dot, count_chars(d, "."));
            f.dir_max_delim = std::max(f.dir_max_delim, count_chars(d, "_-"));
        }
    }

    if (parts.file_name) {
        std::string file = *parts.file_name;
        if (parts.file_extension) file += "." + *parts.file_extension;
        f.file_len = static_cast<long>(file.size());
        f.file_n_dot = count_chars(file, ".");
        f.file_n_delim = count_chars(file, "_-");
    }

    if (parts.query) {
        f.arg_len = static_cast<long>(parts.query->size()) + 1; // leading '?'
        std::string_view q = *parts.query;
        size_t start = 0;
        while (start <= q.size()) {
            size_t amp = q.find('&', start);
            std::string_view assignment =
                q.substr(start, amp == std::string_view::npos ? q.size() - start : amp - start);
            if (!assignment.empty()) {
                ++f.arg_n_var;
                if (size_t eq = assignment.find('='); eq != std::string_view::npos) {
                    std::string_view value = assignment.substr(eq + 1);
                    f.arg_max_value_len =
                        std::max(f.arg_max_value_len, static_cast<long>(value.size()));
                    f.arg_max_delim = std::max(f.arg_max_delim, count_chars(value, "._-"));
                }
            }
            if (amp == std::string_view::npos) break;
            start = amp + 1;
        }
    }

    return f;
}

FeatureVector vectorize(const std::vector<std::string>& bag_of_words,
                        const OrFeatureSet* or_set,
                        const ExternalFeatures* external,
                        const ScalingCaps& caps,
                        FeatureDictionary& dict) {
    std::vector<std::pair<uint32_t, double>> entries;

    if (or_set != nullptr) {
        const OrFeatureSet& f = *or_set;
        const std::array<double, kNumOrFeatures> values = {
            scale(f.url_len, caps.url_len),
            scale(f.url_n_dot, caps.url_n_dot),
            f.url_blacklist ? 1.0 : 0.0,
            scale(f.dom_len, caps.dom_len),
            f.dom_is_ip ? 1.0 : 0.0,
            f.dom_has_port ? 1.0 : 0.0,
            scale(f.dom_n_token, caps.dom_n_token),
            scale(f.dom_n_hyphen, caps.dom_n_hyphen),
            scale(f.dom_max_token_len, caps.dom_max_token_len),
            scale(f.dir_len, caps.dir_len),
            scale(f.dir_n_subdir, caps.dir_n_subdir),
            scale(f.dir_max_subdir_len, caps.dir_max_subdir_len),
            scale(f.dir_max_dot, caps.dir_max_dot),
            scale(f.dir_max_delim, caps.dir_max_delim),
            scale(f.file_len, caps.file_len),
            scale(f.file_n_dot, caps.file_n_dot),
            scale(f.file_n_delim, caps.file_n_delim),
            scale(f.arg_len, caps.arg_len),
            scale(f.arg_n_var, caps.arg_n_var),
            scale(f.arg_max_value_len, caps.arg_max_value_len),
            scale(f.arg_max_delim, caps.arg_max_delim)};
        for (uint32_t i = 0; i < kNumOrFeatures; ++i) {
            if (values[i] != 0.0) entries.emplace_back(i, values[i]);
        }
    }

    for (const auto& key : bag_of_words) {
        if (auto index = dict.lookup_or_add(key)) entries.emplace_back(*index, 1.0);
    }
    if (external != nullptr) {
        for (const auto& [key, value] : *external) {
            if (value == 0.0) continue;
            if (auto index = dict.lookup_or_add(key)) entries.emplace_back(*index, value);
        }
    }

    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  entries.end());
    return FeatureVector{std::move(entries)};
}

} // namespace phishdef
