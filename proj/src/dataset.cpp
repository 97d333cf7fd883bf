#include "phishdef/dataset.hpp"

#include <fstream>

#include "phishdef/errors.hpp"

namespace phishdef {

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file '" + path.string() + "'");

    std::vector<DatasetRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(line_no, "expected <label>\\t<url>");
        std::string label_text = line.substr(0, tab);
        std::string url_text = line.substr(tab + 1);

        Label label;
        if (label_text == "+1" || label_text == "1" || label_text == "phish") {
            label = Label::malicious;
        } else if (label_text == "-1" || label_text == "benign") {
            label = Label::benign;
        } else {
            throw ParseError(line_no, "bad label '" + label_text + "'");
        }
        try {
            records.push_back({label, RawUrl(url_text)});
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return records;
}

void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        for (const auto& r : records) {
            out << (r.label == Label::malicious ? "+1" : "-1") << '\t' << r.url.text() << "\n";
        }
        if (!out.flush()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to '" + path.string() + "' failed: " + ec.message());
}

std::vector<RawUrl> urls_of(const std::vector<DatasetRecord>& records) {
    std::vector<RawUrl> urls;
    urls.reserve(records.size());
    for (const auto& r : records) urls.push_back(r.url);
    return urls;
}

std::vector<RawUrl> urls_with_label(const std::vector<DatasetRecord>& records, Label label) {
    std::vector<RawUrl> urls;
    for (const auto& r : records) {
        if (r.label == label) urls.push_back(r.url);
    }
    return urls;
}

} // namespace phishdef
