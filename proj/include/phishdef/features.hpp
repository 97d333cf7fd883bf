#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phishdef/url.hpp"

namespace phishdef {

// Words whose presence anywhere in the lowercased URL flags the blacklist
// feature. The default set is user-extensible.
struct Blacklist {
    std::set<std::string> words;

    static Blacklist standard();
    bool matches_url(const std::string& lowercased_url) const;
};

// The 21 hand-selected counts, lengths and flags, grouped by URL part.
// Counts are raw (unscaled) non-negative integers; categories of absent
// parts stay all-zero.
struct OrFeatureSet {
    long url_len = 0;
    long url_n_dot = 0;
    bool url_blacklist = false;

    long dom_len = 0;
    bool dom_is_ip = false;
    bool dom_has_port = false;
    long dom_n_token = 0;
    long dom_n_hyphen = 0;
    long dom_max_token_len = 0;

    long dir_len = 0;
    long dir_n_subdir = 0;
    long dir_max_subdir_len = 0;
    long dir_max_dot = 0;
    long dir_max_delim = 0;

    long file_len = 0;
    long file_n_dot = 0;
    long file_n_delim = 0;

    long arg_len = 0;
    long arg_n_var = 0;
    long arg_max_value_len = 0;
    long arg_max_delim = 0;
};

inline constexpr uint32_t kNumOrFeatures = 21;
inline constexpr uint32_t kNumOrCaps = 18; // booleans are not scaled

// Canonical keys for the reserved feature slots 0..20, in OrFeatureSet order.
const std::array<std::string, kNumOrFeatures>& or_feature_keys();

// Saturation caps for the real-valued OR features, in slot order with the
// three boolean slots skipped. Fixed caps keep scaling streaming-safe and
// make model files portable.
struct ScalingCaps {
    long url_len = 256;
    long url_n_dot = 32;
    long dom_len = 128;
    long dom_n_token = 16;
    long dom_n_hyphen = 16;
    long dom_max_token_len = 64;
    long dir_len = 256;
    long dir_n_subdir = 16;
    long dir_max_subdir_len = 64;
    long dir_max_dot = 16;
    long dir_max_delim = 16;
    long file_len = 64;
    long file_n_dot = 8;
    long file_n_delim = 16;
    long arg_len = 256;
    long arg_n_var = 16;
    long arg_max_value_len = 128;
    long arg_max_delim = 16;

    std::array<long, kNumOrCaps> as_array() const;
    static ScalingCaps from_array(const std::array<long, kNumOrCaps>& a);
};

// min(value, cap) / cap. Requires cap > 0.
double scale(long value, long cap);

// Grow-only map from feature key to dense 0-based index. A fresh dictionary
// is pre-seeded with the 21 reserved OR keys, so dictionary-grown features
// start at index 21. Once frozen, unknown keys stop growing the map and
// lookups of them return nothing.
class FeatureDictionary {
public:
    FeatureDictionary();

    std::optional<uint32_t> lookup(std::string_view key) const;
    // Grows the dictionary when unfrozen; returns nothing for an unknown key
    // on a frozen dictionary.
    std::optional<uint32_t> lookup_or_add(std::string_view key);

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }
    uint32_t size() const { return next_index_; }

    // Entries ordered by index (dense 0..size-1).
    std::vector<std::pair<std::string, uint32_t>> sorted_entries() const;

    // Rebuilds a frozen dictionary from (key, index) pairs; indices must be
    // dense and unique. Throws ModelFormatError otherwise.
    static FeatureDictionary from_entries(const std::vector<std::pair<std::string, uint32_t>>& entries);

private:
    std::unordered_map<std::string, uint32_t> entries_;
    uint32_t next_index_ = 0;
    bool frozen_ = false;
};

// Sparse vector, entries sorted by index with values in [0, 1]. Zero-valued
// features are not stored.
struct FeatureVector {
    std::vector<std::pair<uint32_t, double>> entries;

    double value_at(uint32_t index) const;
    size_t size() const { return entries.size(); }
    bool operator==(const FeatureVector&) const = default;
};

// Part-tagged binary token features: "name="/"tld=" for host tokens,
// "dir=", "file=", "ext=", and "arg=" for query tokens. Identical tokens in
// different parts yield distinct keys.
std::vector<std::string> extract_bag_of_words(const UrlParts& parts);

OrFeatureSet extract_or_features(const UrlParts& parts, const Blacklist& blacklist);

using ExternalFeatures = std::vector<std::pair<std::string, double>>;

// Assembles the sparse vector: OR features at their reserved slots (scaled),
// bag-of-words keys as binary entries, optional external features appended.
// Unknown keys grow the dictionary, or are dropped when it is frozen.
FeatureVector vectorize(const std::vector<std::string>& bag_of_words,
                        const OrFeatureSet* or_set,
                        const ExternalFeatures* external,
                        const ScalingCaps& caps,
                        FeatureDictionary& dict);

} // namespace phishdef
