#pragma once

#include <string>
#include <vector>

#include "phishdef/features.hpp"
#include "phishdef/url.hpp"

namespace phishdef {

struct SimilarityConfig {
    long tau = 3; // shared-feature threshold, >= 0
};

// The binary lexical feature set of a URL: the distinct part-tagged tokens
// plus the boolean OR flags that are set (IP host, explicit port, blacklist
// word). Real-valued features are excluded.
std::vector<std::string> binary_lexical_features(const UrlParts& parts, const Blacklist& blacklist);

long shared_feature_count(const RawUrl& u, const RawUrl& v,
                          const Blacklist& blacklist = Blacklist::standard());

// Two URLs are similar when they share strictly more than tau binary
// features.
bool similar(const RawUrl& u, const RawUrl& v, long tau,
             const Blacklist& blacklist = Blacklist::standard());

// Per-URL gap to the nearest and farthest earlier similar URL, in stream
// positions. A URL with no similar predecessor gets the defaults (0, n+1).
struct DistanceStats {
    std::vector<long> delta_min;
    std::vector<long> delta_max;
    size_t n = 0;
};

DistanceStats compute_distances(const std::vector<RawUrl>& urls, long tau,
                                const Blacklist& blacklist = Blacklist::standard());

// Fraction of values strictly exceeding each distinct threshold
// (non-increasing) and fraction at or below each distinct threshold
// (non-decreasing). Throw EmptyInput on empty stats.
std::vector<std::pair<long, double>> ccdf(const std::vector<long>& values);
std::vector<std::pair<long, double>> cdf(const std::vector<long>& values);

} // namespace phishdef
