#include "chi2/cli.hpp"

#include "commands.hpp"

#include <CLI11.hpp>

#include <ostream>

#ifndef CHI2_VERSION
#define CHI2_VERSION "dev"
#endif

namespace chi2::cli {

int exit_code(ErrorClass c) {
    switch (c) {
    case ErrorClass::Usage: return 2;
    case ErrorClass::Numeric: return 3;
    case ErrorClass::Infeasible: return 4;
    }
    return 3;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonlinear-optics and enhancement-cavity design toolkit", "chi2kit"};
    app.set_version_flag("--version", CHI2_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, constants_path, out_dir = ".";
    std::uint64_t seed = 1;
    bool timestamp = false;
    app.add_option("--config", config_path, "Run configuration (key = value sections)");
    app.add_option("--out", out_dir, "Directory for CSV output");
    app.add_option("--seed", seed, "Seed for stochastic disturbances");
    app.add_option("--constants", constants_path, "Material constants file");
    app.add_flag("--timestamp", timestamp, "Add a generation time to CSV headers");

    IndexArgs ia;
    auto* index = app.add_subcommand("index", "Refractive index of one ray");
    index->add_option("--material", ia.material)->check(CLI::IsMember({"bbo", "congruent_linbo3"}));
    index->add_option("--ray", ia.ray, "o or e")->check(CLI::IsMember({"o", "e"}));
    index->add_option("--theta-deg", ia.theta_deg, "Angle from the optic axis (e ray)");
    index->add_option("--wavelength-nm", ia.wavelength_nm)->required();
    index->add_option("--temperature-c", ia.temperature_c);

    auto* pm = app.add_subcommand("phasematch", "Angle or quasi phase matching report");
    auto* sfg = app.add_subcommand("sfg-curve", "SFG output versus input power product");
    std::string action;
    auto* cav = app.add_subcommand("cavity", "Bow-tie cavity design, eigenmode solve or stability sweep");
    cav->add_option("action", action)->required()->check(CLI::IsMember({"design", "solve", "sweep"}));
    auto* shg = app.add_subcommand("shg-curve", "Resonant SHG output versus input power");
    TuneArgs ta;
    auto* tune = app.add_subcommand("tune", "SFG and UV wavelengths with detuning from the D1 line");
    tune->add_option("--pump-nm", ta.pump_nm);
    tune->add_option("--signal-nm", ta.signal_nm);
    tune->add_option("--sfg-nm", ta.sfg_nm, "One or more SFG wavelengths");
    auto* lock = app.add_subcommand("locksim", "Cavity lock and relock simulation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        Context ctx{constants_path.empty() ? default_constants() : load_constants(constants_path)};
        if (!config_path.empty()) ctx.config = IniDoc::from_file(config_path);
        ctx.out_dir = out_dir;
        ctx.seed = seed;
        ctx.timestamp = timestamp;
        ctx.out = &out;
        if (*index) cmd_index(ctx, ia);
        else if (*pm) cmd_phasematch(ctx);
        else if (*sfg) cmd_sfg_curve(ctx);
        else if (*cav) cmd_cavity(ctx, action);
        else if (*shg) cmd_shg_curve(ctx);
        else if (*tune) cmd_tune(ctx, ta);
        else if (*lock) cmd_locksim(ctx);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace chi2::cli
