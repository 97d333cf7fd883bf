#include "phishdef/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "phishdef/rng.hpp"

namespace phishdef {

namespace {

const std::vector<std::string> kBenignWords = {
    "news",    "blog",    "shop",   "wiki",    "music",   "garden",  "recipes", "sports",
    "photo",   "travel",  "forum",  "weather", "health",  "library", "school",  "science",
    "art",     "history", "market", "store",   "design",  "media",   "game",    "movie",
    "book",    "code",    "cloud",  "kitchen", "coffee",  "nature",  "river",   "mountain",
    "city",    "home",    "world",  "daily",   "open",    "green",   "light",   "smart",
    "fresh",   "digital", "studio", "lab",     "works",   "group",   "press",   "paper",
    "radio",   "video",   "audio",  "data",    "search",  "mail",    "maps",    "docs",
    "drive",   "learn",   "play",   "read",    "write",   "share",   "social",  "local",
    "summer",  "winter",  "spring", "autumn",  "food",    "wine",    "tech",    "auto",
    "bike",    "run",     "walk",   "club",    "team",    "camp",    "park",    "farm",
    "sea",     "lake",    "wood",   "stone",   "gold",    "silver",  "star",    "moon",
    "sun",     "sky",     "rain",   "snow",    "wind",    "index",   "about",   "gallery",
    "archive", "events",  "projects", "notes", "guide",   "review",  "journal", "atlas"};

const std::vector<std::string> kBenignTlds = {"com", "org", "net", "edu", "gov", "info",
                                              "io",  "co",  "us",  "uk",  "de",  "fr"};

const std::vector<std::string> kBrands = {
    "paypal",    "ebay",       "amazon",    "apple",    "netflix", "chase",  "hsbc",
    "citibank",  "barclays",   "santander", "natwest",  "lloyds",  "visa",   "skype",
    "microsoft", "google",     "yahoo",     "facebook", "dropbox", "adobe",  "dhl",
    "fedex",     "wellsfargo", "sparkasse", "volksbank"};

const std::vector<std::string> kBrandTlds = {"com", "co.uk", "de", "net", "ca"};

const std::vector<std::string> kActionWords = {
    "login",   "signin", "signon",  "secure",   "account",  "update",   "verify",
    "confirm", "webscr", "banking", "service",  "support",  "customer", "center",
    "session", "token",  "auth",    "validate", "billing",  "recovery"};

const std::vector<std::string> kHostingTlds = {"cn", "ru", "biz", "info", "com",
                                               "net", "cc", "pw",  "top"};
const std::vector<std::string> kFileExts = {"html", "php", "htm", "asp", "aspx"};

std::string syllable_word(Rng& rng, int min_syllables, int max_syllables) {
    static const std::string consonants = "bcdfghjklmnprstvwz";
    static const std::string vowels = "aeiou";
    std::string word;
    long n = rng.range(min_syllables, max_syllables);
    for (long i = 0; i < n; ++i) {
        word += consonants[rng.below(consonants.size())];
        word += vowels[rng.below(vowels.size())];
    }
    return word;
}

std::string random_token(Rng& rng, int min_len, int max_len) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string out;
    long n = rng.range(min_len, max_len);
    for (long i = 0; i < n; ++i) out += alphabet[rng.below(alphabet.size())];
    return out;
}

std::string misspell(Rng& rng, const std::string& brand) {
    std::string out = brand;
    switch (rng.below(4)) {
    case 0: // leet substitution
        for (char& c : out) {
            if (c == 'o') { c = '0'; break; }
            if (c == 'l') { c = '1'; break; }
            if (c == 'e') { c = '3'; break; }
            if (c == 'i') { c = '1'; break; }
        }
        break;
    case 1: // doubled letter
        out.insert(out.begin() + static_cast<long>(rng.below(out.size())), out[rng.below(out.size())]);
        break;
    case 2: // dropped letter
        if (out.size() > 3) out.erase(out.begin() + static_cast<long>(rng.below(out.size())));
        break;
    default: // appended digit
        out += static_cast<char>('0' + rng.below(10));
        break;
    }
    return out;
}

template <typename T>
std::vector<T> sample(Rng& rng, const std::vector<T>& pool, size_t count) {
    std::vector<size_t> idx(pool.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    std::vector<T> out;
    count = std::min(count, pool.size());
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(pool[idx[i]]);
    return out;
}

// Per-phase campaign vocabularies. Campaigns reuse a small pool inside a
// phase and the pools rotate between phases, so the discriminative tokens
// keep shifting under the learners.
struct Phase {
    std::vector<std::string> compromised_hosts;
    std::vector<std::string> host_padding; // long-host obfuscation tokens
    std::vector<std::string> misspellings;
    std::vector<std::string> brands;      // the brands under attack this phase
    std::vector<std::string> actions;     // lure words in rotation
    std::vector<std::string> hosting_tlds;
    std::vector<std::string> benign_words; // topical benign vocabulary
};

Phase make_phase(Rng& rng, const std::vector<std::string>& benign_pool) {
    Phase p;
    p.hosting_tlds = sample(rng, kHostingTlds, 3);
    for (int i = 0; i < 12; ++i) {
        std::string host = syllable_word(rng, 2, 3);
        if (rng.uniform01() < 0.4) host += std::to_string(rng.range(1, 99));
        if (rng.uniform01() < 0.3) host += "-" + syllable_word(rng, 1, 2);
        host += "." + p.hosting_tlds[rng.below(p.hosting_tlds.size())];
        p.compromised_hosts.push_back(host);
    }
    for (int i = 0; i < 16; ++i) p.host_padding.push_back(syllable_word(rng, 2, 4));
    p.brands = sample(rng, kBrands, 6);
    p.actions = sample(rng, kActionWords, 8);
    for (int i = 0; i < 8; ++i)
        p.misspellings.push_back(misspell(rng, p.brands[rng.below(p.brands.size())]));
    p.benign_words = sample(rng, benign_pool, 60);
    for (int i = 0; i < 25; ++i) p.benign_words.push_back(syllable_word(rng, 2, 3));
    return p;
}

std::string random_ip(Rng& rng) {
    if (rng.uniform01() < 0.25) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "0x%02lx.0x%02lx.0x%02lx.0x%02lx", rng.range(1, 254),
                      rng.range(0, 255), rng.range(0, 255), rng.range(1, 254));
        return buf;
    }
    return std::to_string(rng.range(1, 254)) + "." + std::to_string(rng.range(0, 255)) + "." +
           std::to_string(rng.range(0, 255)) + "." + std::to_string(rng.range(1, 254));
}

const std::string& pick(Rng& rng, const std::vector<std::string>& pool) {
    return pool[rng.below(pool.size())];
}

std::string make_benign_url(Rng& rng, const Phase& phase) {
    auto word = [&]() -> const std::string& { return pick(rng, phase.benign_words); };

    std::string url;
    double host_style = rng.uniform01();
    if (host_style < 0.03) {
        url = "www." + pick(rng, kBrands) + ".com"; // the brand's legitimate site
    } else if (host_style < 0.04) {
        url = random_ip(rng); // intranet-style address
    } else if (host_style < 0.16) {
        // subdomain chain: longer hosts with more tokens
        url = word() + "." + word() + "." + word() + "." + pick(rng, kBenignTlds);
    } else if (host_style < 0.19) {
        url = word() + "." + pick(rng, kHostingTlds); // cheap hosting, same TLDs as campaigns
    } else {
        if (rng.uniform01() < 0.6) url = "www.";
        url += word();
        double style = rng.uniform01();
        if (style < 0.25) url += word();
        else if (style < 0.4) url += "-" + word();
        url += "." + pick(rng, kBenignTlds);
    }
    if (rng.uniform01() < 0.03) url += ":" + std::to_string(rng.range(3000, 9090));

    long depth = rng.range(0, 4);
    for (long i = 0; i < depth; ++i) url += "/" + word();
    // legitimate account/login pages carry listed words too
    if (rng.uniform01() < 0.08) url += "/" + pick(rng, kActionWords);
    if (rng.uniform01() < 0.45) {
        url += "/" + word() + "." + pick(rng, kFileExts);
    } else if (depth > 0) {
        url += "/";
    }
    if (rng.uniform01() < 0.18) {
        url += "?" + word() + "=" + word();
        if (rng.uniform01() < 0.3) url += "&id=" + std::to_string(rng.range(1, 9999));
        if (rng.uniform01() < 0.05) url += "&s=" + random_token(rng, 8, 20);
    }
    return url;
}

std::string brand_host(Rng& rng, const Phase& phase) {
    return pick(rng, phase.brands) + "." + pick(rng, kBrandTlds);
}

std::string make_phish_url(Rng& rng, const Phase& phase,
                           const std::vector<std::string>& recurrent_hosts, int type) {
    // a slice of campaigns hides in plain-looking URLs regardless of family
    if (rng.uniform01() < 0.12) {
        std::string url = pick(rng, phase.benign_words);
        if (rng.uniform01() < 0.5) url += syllable_word(rng, 1, 2);
        url += "." + std::string(rng.uniform01() < 0.55 ? "com" : "net");
        url += "/" + pick(rng, phase.benign_words);
        if (rng.uniform01() < 0.5) url += "/" + pick(rng, phase.brands);
        url += "/" + pick(rng, phase.actions) + "." + pick(rng, kFileExts);
        return url;
    }

    std::string url;
    switch (type) {
    case 0: { // host replaced by an IP address
        url = random_ip(rng);
        if (rng.uniform01() < 0.15) url += ":" + std::to_string(rng.range(1024, 9999));
        double style = rng.uniform01();
        if (style < 0.4) {
            url += "/~" + pick(rng, phase.host_padding);
            url += "/." + std::string("www.") + pick(rng, phase.brands) + ".com";
        } else if (style < 0.7) {
            url += "/." + pick(rng, phase.actions) + "." + brand_host(rng, phase);
        } else {
            url += "/" + brand_host(rng, phase);
        }
        url += "/" + pick(rng, phase.actions) + "." + (rng.uniform01() < 0.5 ? "html" : "php");
        break;
    }
    case 1: { // real host hidden in the path of a compromised domain
        const auto& pool = rng.uniform01() < 0.2 ? recurrent_hosts : phase.compromised_hosts;
        url = pick(rng, pool);
        url += "/";
        if (rng.uniform01() < 0.5) url += "www.";
        url += brand_host(rng, phase);
        if (rng.uniform01() < 0.3) url += "/" + pick(rng, phase.host_padding);
        std::string file =
            rng.uniform01() < 0.5 ? pick(rng, phase.actions) : pick(rng, phase.brands) + "isapi";
        url += "/" + file + "." + (rng.uniform01() < 0.6 ? "php" : "html");
        if (rng.uniform01() < 0.4) url += "?cmd=_" + pick(rng, phase.actions);
        break;
    }
    case 2: { // oversized deceptive host name
        url = pick(rng, phase.brands) + "." + pick(rng, kBrandTlds);
        long pads = rng.range(2, 5);
        for (long i = 0; i < pads; ++i) {
            url += (rng.uniform01() < 0.35 ? "-" : ".");
            url += pick(rng, phase.host_padding);
        }
        url += "." + pick(rng, phase.hosting_tlds);
        if (rng.uniform01() < 0.5) url += "/r" + std::to_string(rng.range(1, 9));
        if (rng.uniform01() < 0.3) url += "/" + pick(rng, phase.actions) + ".html";
        break;
    }
    default: { // unknown or misspelled domain
        url = pick(rng, phase.misspellings);
        if (rng.uniform01() < 0.5) url += "-" + pick(rng, phase.actions);
        url += "." + std::string(rng.uniform01() < 0.6 ? "com" : "net");
        if (rng.uniform01() < 0.5) url += "/" + pick(rng, phase.benign_words);
        if (rng.uniform01() < 0.6) url += "/" + pick(rng, phase.actions);
        url += "/" + pick(rng, phase.actions) + "." + pick(rng, kFileExts);
        if (rng.uniform01() < 0.3) {
            url += "?" + pick(rng, phase.actions) + "=" + random_token(rng, 10, 26);
            if (rng.uniform01() < 0.5) url += "&ref=" + random_token(rng, 8, 18);
        }
        break;
    }
    }
    return url;
}

} // namespace

Corpus generate_corpus(const CorpusSpec& spec) {
    Rng rng(spec.seed);
    const size_t n_phish = static_cast<size_t>(std::llround(spec.phish_ratio * spec.size));
    const size_t n_benign = spec.size - n_phish;
    const int phases = std::max(1, spec.drift_phases);

    // shared benign vocabulary: the curated words plus a synthetic long tail
    std::vector<std::string> benign_pool = kBenignWords;
    for (int i = 0; i < 300; ++i) benign_pool.push_back(syllable_word(rng, 2, 4));

    std::vector<std::string> recurrent_hosts;
    for (int i = 0; i < 10; ++i) {
        recurrent_hosts.push_back(syllable_word(rng, 2, 3) + "." + pick(rng, kHostingTlds));
    }
    std::vector<Phase> phase_pool;
    for (int i = 0; i < phases; ++i) phase_pool.push_back(make_phase(rng, benign_pool));

    Corpus corpus;
    corpus.benign.reserve(n_benign);
    corpus.malicious.reserve(n_phish);
    for (size_t i = 0; i < n_benign; ++i) {
        const Phase& phase = phase_pool[i * phases / std::max<size_t>(1, n_benign)];
        corpus.benign.emplace_back(make_benign_url(rng, phase));
    }
    for (size_t i = 0; i < n_phish; ++i) {
        const Phase& phase = phase_pool[i * phases / std::max<size_t>(1, n_phish)];
        int type = static_cast<int>(rng.weighted(spec.obfuscation_mix));
        corpus.malicious.emplace_back(make_phish_url(rng, phase, recurrent_hosts, type));
    }
    return corpus;
}

std::vector<std::string> generate_sidecar_lines(const Corpus& corpus, uint64_t seed) {
    Rng rng(seed);
    static const std::vector<std::string> kBenignRegistrars = {
        "networksolutions", "godaddy", "markmonitor", "gandi", "namecheap", "enom"};
    static const std::vector<std::string> kPhishRegistrars = {
        "bizcn", "regtime", "todaynic", "privyreg", "namecheap"};
    static const std::vector<std::string> kBenignCc = {"us", "de", "uk", "fr",
                                                       "jp", "ca", "nl", "au"};
    static const std::vector<std::string> kPhishCc = {"cn", "ru", "ua", "ro", "br", "tr", "us"};
    const std::string observed = "2024-06-30";

    auto record = [&](const RawUrl& url, bool phish) {
        if (rng.uniform01() < 0.07) return std::string(); // no record collected
        long age = phish ? rng.range(0, 120) : rng.range(730, 5400);
        std::chrono::year_month_day obs{std::chrono::year{2024}, std::chrono::month{6},
                                        std::chrono::day{30}};
        auto reg = std::chrono::year_month_day(std::chrono::sys_days(obs) - std::chrono::days(age));
        const auto& registrars = phish ? kPhishRegistrars : kBenignRegistrars;
        const auto& ccs = phish ? kPhishCc : kBenignCc;

        char reg_buf[16];
        std::snprintf(reg_buf, sizeof(reg_buf), "%04d-%02u-%02u", static_cast<int>(reg.year()),
                      static_cast<unsigned>(reg.month()), static_cast<unsigned>(reg.day()));

        std::string host = url.text().substr(0, url.text().find_first_of(":/?"));
        std::string line = "url=" + url.text();
        line += "\tprimary_domain=" + host;
        line += "\tregistrar=" + registrars[rng.below(registrars.size())];
        if (rng.uniform01() < 0.8)
            line += "\tregistrant=" + syllable_word(rng, 2, 3) + " " + syllable_word(rng, 2, 3);
        line += "\tregistration_date=" + std::string(reg_buf);
        line += "\tbgp_prefix=" + std::to_string(rng.range(1, 223)) + "." +
                std::to_string(rng.range(0, 255)) + ".0.0/16";
        line += "\tas_number=" +
                std::to_string(phish ? rng.range(40000, 60000) : rng.range(1000, 30000));
        line += "\tcountry_code=" + ccs[rng.below(ccs.size())];
        line += "\tobserved_date=" + observed;
        return line;
    };

    std::vector<std::string> lines;
    for (const auto& url : corpus.benign) {
        std::string line = record(url, false);
        if (!line.empty()) lines.push_back(std::move(line));
    }
    for (const auto& url : corpus.malicious) {
        std::string line = record(url, true);
        if (!line.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace phishdef
