#include "phishdef/url.hpp"

#include <algorithm>
#include <cctype>

namespace phishdef {

namespace {

constexpr std::string_view kDelimiters = "/?.=_&-";

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool iequals_prefix(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    }
    return true;
}

} // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

RawUrl::RawUrl(std::string_view text) {
    std::string_view t = trim(text);
    if (t.empty()) throw EmptyUrl();
    if (std::any_of(t.begin(), t.end(), is_space)) throw MalformedUrl("interior whitespace");
    text_ = std::string(t);
}

std::string UrlParts::reassemble() const {
    std::string out = host;
    if (port) {
        out += ':';
        out += std::to_string(*port);
    }
    for (const auto& d : directories) {
        out += '/';
        out += d;
    }
    if (file_name) {
        out += '/';
        out += *file_name;
        if (file_extension) {
            out += '.';
            out += *file_extension;
        }
    }
    if (trailing_slash) out += '/';
    if (query) {
        out += '?';
        out += *query;
    }
    return out;
}

UrlParts parse_url(const RawUrl& raw) {
    std::string_view s = raw.text();

    if (iequals_prefix(s, "http://")) {
        s.remove_prefix(7);
    } else if (iequals_prefix(s, "https://")) {
        s.remove_prefix(8);
    }

    // Fragment is dropped before anything else.
    if (auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);

    UrlParts parts;

    std::string_view head = s;
    if (auto pos = s.find('?'); pos != std::string_view::npos) {
        head = s.substr(0, pos);
        parts.query = std::string(s.substr(pos + 1));
    }

    std::string_view authority = head;
    std::string_view path;
    if (auto pos = head.find('/'); pos != std::string_view::npos) {
        authority = head.substr(0, pos);
        path = head.substr(pos);
    }

    // Userinfo is discarded, not recorded.
    if (auto pos = authority.rfind('@'); pos != std::string_view::npos) {
        authority = authority.substr(pos + 1);
    }

    std::string_view host = authority;
    if (auto pos = authority.find(':'); pos != std::string_view::npos) {
        host = authority.substr(0, pos);
        std::string_view port_text = authority.substr(pos + 1);
        if (port_text.empty() ||
            !std::all_of(port_text.begin(), port_text.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; }) ||
            port_text.size() > 5) {
            throw MalformedPort(std::string(port_text));
        }
        long value = std::stol(std::string(port_text));
        if (value < 1 || value > 65535) throw MalformedPort(std::string(port_text));
        parts.port = static_cast<int>(value);
    }
    if (host.empty()) throw MalformedUrl("empty host");
    parts.host = std::string(host);
    parts.host_is_ip = detect_ip_host(parts.host);

    if (!path.empty()) {
        parts.has_path = true;
        std::string_view rest = path.substr(1);
        if (!rest.empty()) {
            std::vector<std::string> segments;
            size_t start = 0;
            while (true) {
                size_t slash = rest.find('/', start);
                if (slash == std::string_view::npos) {
                    segments.emplace_back(rest.substr(start));
                    break;
                }
                segments.emplace_back(rest.substr(start, slash - start));
                start = slash + 1;
            }
            bool ends_with_slash = rest.back() == '/';
            if (ends_with_slash) segments.pop_back(); // final empty segment
            parts.trailing_slash = ends_with_slash;
            if (!segments.empty()) {
                const std::string& last = segments.back();
                bool is_file = last.find('.') != std::string::npos || !ends_with_slash;
                if (is_file) {
                    size_t dot = last.rfind('.');
                    if (dot == std::string::npos) {
                        parts.file_name = last;
                    } else {
                        parts.file_name = last.substr(0, dot);
                        parts.file_extension = last.substr(dot + 1);
                    }
                    segments.pop_back();
                }
            }
            parts.directories = std::move(segments);
        } else {
            parts.trailing_slash = true; // path was exactly "/"
        }
    }

    return parts;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (kDelimiters.find(c) != std::string_view::npos) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool detect_ip_host(std::string_view host) {
    std::string h = to_lower(host);
    std::vector<std::string_view> groups;
    std::string_view hv = h;
    size_t start = 0;
    while (true) {
        size_t dot = hv.find('.', start);
        if (dot == std::string_view::npos) {
            groups.push_back(hv.substr(start));
            break;
        }
        groups.push_back(hv.substr(start, dot - start));
        start = dot + 1;
    }
    if (groups.size() != 4) return false;

    auto all_decimal = [](std::string_view g) {
        if (g.empty() || g.size() > 3) return false;
        if (!std::all_of(g.begin(), g.end(), [](unsigned char c) { return std::isdigit(c) != 0; }))
            return false;
        return std::stoi(std::string(g)) <= 255;
    };
    auto hex_group = [](std::string_view g) {
        if (g.size() < 3 || g.substr(0, 2) != "0x") return false;
        std::string_view digits = g.substr(2);
        if (digits.size() > 2) return false; // value above 0xff
        return std::all_of(digits.begin(), digits.end(),
                           [](unsigned char c) { return std::isxdigit(c) != 0; });
    };

    if (std::all_of(groups.begin(), groups.end(), all_decimal)) return true;
    return std::all_of(groups.begin(), groups.end(), hex_group);
}

} // namespace phishdef
