#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phishdef/url.hpp"

namespace phishdef {

// Seeded synthetic corpus: benign URLs from directory-style templates,
// phishing URLs from the four obfuscation families (IP host, host hidden in
// the path of another domain, oversized deceptive host names, misspelled or
// unknown domains). Campaign vocabularies rotate across drift phases so the
// stream's token distribution shifts over time.
struct CorpusSpec {
    uint64_t seed = 1;
    size_t size = 8000;
    double phish_ratio = 0.5;
    std::array<double, 4> obfuscation_mix = {0.25, 0.25, 0.25, 0.25};
    int drift_phases = 8;
    // Fraction of phishing URLs drawn from the benign generator itself:
    // compromised ordinary sites, indistinguishable by URL alone.
    double overlap = 0.08;
    // Phishing URLs per campaign; a campaign shares hosts and path tokens,
    // then the vocabulary moves on.
    size_t campaign_len = 110;
    // Fraction of campaigns that resurrect one seen long before.
    double recurrent_campaigns = 0.25;
};

struct Corpus {
    std::vector<RawUrl> benign;
    std::vector<RawUrl> malicious;
};

Corpus generate_corpus(const CorpusSpec& spec);

// Synthetic registration/network sidecar records for every corpus URL, in
// the sidecar file format. Benign domains skew old, phishing domains skew
// freshly registered.
std::vector<std::string> generate_sidecar_lines(const Corpus& corpus, uint64_t seed);

} // namespace phishdef
