#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phishdef/errors.hpp"

namespace phishdef {

// A URL as given, trimmed. The scheme is optional and an "http://" or
// "https://" prefix is ignored by the parser. Construction rejects empty
// input and interior whitespace.
class RawUrl {
public:
    explicit RawUrl(std::string_view text);

    const std::string& text() const { return text_; }

    friend bool operator==(const RawUrl& a, const RawUrl& b) { return a.text_ == b.text_; }

private:
    std::string text_;
};

// Structural decomposition of a URL. Original casing and separators are
// preserved so that reassemble() reproduces the scheme-stripped input
// (minus any fragment and userinfo, which are discarded up front).
struct UrlParts {
    std::string host;
    std::optional<int> port;
    std::vector<std::string> directories;
    std::optional<std::string> file_name;
    std::optional<std::string> file_extension;
    std::optional<std::string> query;
    bool host_is_ip = false;
    // Path ended with '/' (needed to reproduce the input exactly).
    bool trailing_slash = false;
    bool has_path = false;

    std::string reassemble() const;
};

// Splits a URL into host, port, directories, file name/extension and query.
// The last path segment counts as a file name iff it contains '.' or the
// path does not end with '/'. Throws EmptyUrl, MalformedUrl, MalformedPort.
UrlParts parse_url(const RawUrl& raw);

// Splits on {'/', '?', '.', '=', '_', '&', '-'}, drops empty tokens and
// lowercases the rest.
std::vector<std::string> tokenize(std::string_view text);

// True iff host is a dotted-decimal IPv4 (four 0-255 groups) or a dotted
// hexadecimal address in which every group starts with "0x".
bool detect_ip_host(std::string_view host);

std::string to_lower(std::string_view s);

} // namespace phishdef
