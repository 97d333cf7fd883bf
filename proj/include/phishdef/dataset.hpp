#pragma once

#include <filesystem>
#include <vector>

#include "phishdef/learners.hpp"
#include "phishdef/url.hpp"

namespace phishdef {

// One labeled URL per line: "<label>\t<url>" with label in
// {+1, 1, -1, phish, benign}. '#' lines and blank lines are skipped.
struct DatasetRecord {
    Label label;
    RawUrl url;
};

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path);
void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path);

std::vector<RawUrl> urls_of(const std::vector<DatasetRecord>& records);
std::vector<RawUrl> urls_with_label(const std::vector<DatasetRecord>& records, Label label);

} // namespace phishdef
