#pragma once

#include "chi2/csv.hpp"
#include "chi2/ini.hpp"
#include "chi2/materials.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chi2::cli {

struct Context {
    Constants constants;
    std::optional<IniDoc> config;
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    bool timestamp = false;
    std::ostream* out = nullptr;

    const IniDoc& require_config(const char* command) const;
    void write_csv(const std::string& file, const std::string& command,
                   const std::vector<std::string>& extra_comments, const CsvTable& t) const;
};

struct IndexArgs {
    std::string material = "bbo";
    std::string ray = "o";
    double theta_deg = 90;
    double wavelength_nm = 0;
    double temperature_c = 20;
};

struct TuneArgs {
    std::optional<double> pump_nm, signal_nm;
    std::vector<double> sfg_nm;
};

void cmd_index(const Context& c, const IndexArgs& a);
void cmd_phasematch(const Context& c);
void cmd_sfg_curve(const Context& c);
void cmd_cavity(const Context& c, const std::string& action);
void cmd_shg_curve(const Context& c);
void cmd_tune(const Context& c, const TuneArgs& a);
void cmd_locksim(const Context& c);

} // namespace chi2::cli
