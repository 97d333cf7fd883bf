#include "phishdef/similarity.hpp"

#include <algorithm>
#include <unordered_map>

#include "phishdef/errors.hpp"

namespace phishdef {

std::vector<std::string> binary_lexical_features(const UrlParts& parts,
                                                 const Blacklist& blacklist) {
    std::vector<std::string> keys = extract_bag_of_words(parts);
    OrFeatureSet f = extract_or_features(parts, blacklist);
    if (f.dom_is_ip) keys.emplace_back("or=dom_is_ip");
    if (f.dom_has_port) keys.emplace_back("or=dom_has_port");
    if (f.url_blacklist) keys.emplace_back("or=url_blacklist");
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

namespace {

std::vector<std::string> features_of(const RawUrl& url, const Blacklist& blacklist) {
    return binary_lexical_features(parse_url(url), blacklist);
}

long intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    long count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

} // namespace

long shared_feature_count(const RawUrl& u, const RawUrl& v, const Blacklist& blacklist) {
    return intersection_size(features_of(u, blacklist), features_of(v, blacklist));
}

bool similar(const RawUrl& u, const RawUrl& v, long tau, const Blacklist& blacklist) {
    return shared_feature_count(u, v, blacklist) > tau;
}

DistanceStats compute_distances(const std::vector<RawUrl>& urls, long tau,
                                const Blacklist& blacklist) {
    const size_t n = urls.size();
    DistanceStats stats;
    stats.n = n;
    stats.delta_min.assign(n, 0);
    stats.delta_max.assign(n, static_cast<long>(n) + 1);

    // Inverted index feature -> earlier positions; shared counts accumulate
    // per candidate. Observable behaviour matches the naive pairwise rule.
    std::unordered_map<std::string, std::vector<size_t>> postings;
    std::unordered_map<size_t, long> shared;

    for (size_t i = 0; i < n; ++i) {
        auto features = features_of(urls[i], blacklist);
        shared.clear();
        for (const auto& key : features) {
            auto it = postings.find(key);
            if (it == postings.end()) continue;
            for (size_t j : it->second) ++shared[j];
        }
        size_t nearest = 0, farthest = 0;
        bool any = false;
        for (const auto& [j, count] : shared) {
            if (count <= tau) continue;
            if (!any) {
                nearest = farthest = j;
                any = true;
            } else {
                nearest = std::max(nearest, j);
                farthest = std::min(farthest, j);
            }
        }
        if (any) {
            stats.delta_min[i] = static_cast<long>(i - nearest);
            stats.delta_max[i] = static_cast<long>(i - farthest);
        }
        for (const auto& key : features) postings[key].push_back(i);
    }
    return stats;
}

namespace {

std::vector<long> sorted_distinct(const std::vector<long>& values) {
    std::vector<long> v = values;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

std::vector<std::pair<long, double>> ccdf(const std::vector<long>& values) {
    if (values.empty()) throw EmptyInput();
    std::vector<long> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<long, double>> series;
    for (long t : sorted_distinct(values)) {
        auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        series.emplace_back(t, static_cast<double>(above) / static_cast<double>(sorted.size()));
    }
    return series;
}

std::vector<std::pair<long, double>> cdf(const std::vector<long>& values) {
    if (values.empty()) throw EmptyInput();
    std::vector<long> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<long, double>> series;
    for (long t : sorted_distinct(values)) {
        auto below = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        series.emplace_back(t, static_cast<double>(below) / static_cast<double>(sorted.size()));
    }
    return series;
}

} // namespace phishdef
