#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace chi2 {

enum class MaterialId { BBO, CongruentLiNbO3 };
enum class ThermoModel { None, TemperatureDependentSellmeier };

// n^2 = a + b/(l^2 - c) - d l^2, l in um
struct EimerlTerms {
    double a, b, c, d;
};

// temperature-dependent form with f = (T - t_ref)(T + t_offset)
struct JundtTerms {
    double a1, a2, a3, a4, a5, a6;
    double b1, b2, b3, b4;
    double t_ref_c = 24.5;
    double t_offset_c = 570.82;
};

using SellmeierTerms = std::variant<EimerlTerms, JundtTerms>;

struct Material {
    MaterialId id;
    std::string name;
    ThermoModel thermo_model;
    std::optional<SellmeierTerms> sellmeier_ordinary;
    SellmeierTerms sellmeier_extraordinary;
    double band_min_nm;
    double band_max_nm;
    double temp_min_c;
    double temp_max_c;
};

struct NonlinearConstants {
    double d33_linbo3_pm_per_v;
    double d22_bbo_pm_per_v;

    // first-order QPM
    double d_qpm_pm_per_v() const;
    double d_eff_bbo_pm_per_v(double theta) const;
};

struct Constants {
    Material bbo;
    Material linbo3;
    NonlinearConstants nonlinear;
    std::string source;      // file path or "<builtin>"
    std::uint64_t hash = 0;  // FNV-1a of the source text

    const Material& material(MaterialId id) const;
};

std::uint64_t fnv1a64(std::string_view text);

Constants parse_constants(const std::string& text, const std::string& source_name);
Constants load_constants(const std::filesystem::path& path);
const Constants& default_constants();
const std::string& default_constants_text();

const char* to_string(MaterialId id);
MaterialId material_from_string(const std::string& name);

} // namespace chi2
