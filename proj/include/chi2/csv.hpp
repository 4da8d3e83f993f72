#pragma once

#include "chi2/materials.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace chi2 {

// %.9g
std::string fmt9(double v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> cells);
};

// "# chi2kit <version>", command, constants source and hash; a UTC stamp only on request
std::vector<std::string> provenance_lines(const std::string& command, const Constants& k,
                                          bool timestamp = false);

std::string render_csv(const std::vector<std::string>& comments, const CsvTable& table);

// write to a sibling temp file, then rename over the target
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace chi2
