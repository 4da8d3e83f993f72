#include "chi2/csv.hpp"

#include "chi2/errors.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

#ifndef CHI2_VERSION
#define CHI2_VERSION "dev"
#endif

namespace chi2 {

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(fmt9(v));
    add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) throw InvalidParam("csv row width does not match the header");
    rows.push_back(std::move(cells));
}

std::vector<std::string> provenance_lines(const std::string& command, const Constants& k,
                                          bool timestamp) {
    char hash[40];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(k.hash));
    std::vector<std::string> out{
        std::string("chi2kit ") + CHI2_VERSION,
        "command: " + command,
        "constants: " + k.source + " fnv1a64=" + hash,
    };
    if (timestamp) {
        std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out.push_back(std::string("generated: ") + buf);
    }
    return out;
}

std::string render_csv(const std::vector<std::string>& comments, const CsvTable& t) {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigInvalid("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw ConfigInvalid("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigInvalid("cannot rename onto " + path.string());
    }
}

} // namespace chi2
