#include "chi2/materials.hpp"

#include "chi2/errors.hpp"
#include "chi2/ini.hpp"
#include "chi2/units.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace chi2 {

namespace {

constexpr const char* kBuiltinText =
#include "chi2/default_constants.inc"
    ;

EimerlTerms read_eimerl(const IniDoc& doc, const std::string& sec, const std::string& axis) {
    return {doc.number(sec, axis + "_a"), doc.number(sec, axis + "_b"),
            doc.number(sec, axis + "_c"), doc.number(sec, axis + "_d")};
}

void read_window(const IniDoc& doc, const std::string& sec, Material& m) {
    m.band_min_nm = doc.number(sec, "band_min_nm");
    m.band_max_nm = doc.number(sec, "band_max_nm");
    m.temp_min_c = doc.number(sec, "temp_min_c");
    m.temp_max_c = doc.number(sec, "temp_max_c");
    if (!(m.band_min_nm > 0 && m.band_max_nm > m.band_min_nm))
        throw ConfigInvalid(doc.source() + ": [" + sec + "] bad wavelength band");
    if (!(m.temp_max_c > m.temp_min_c))
        throw ConfigInvalid(doc.source() + ": [" + sec + "] bad temperature window");
}

} // namespace

double NonlinearConstants::d_qpm_pm_per_v() const { return 2.0 / pi * d33_linbo3_pm_per_v; }

double NonlinearConstants::d_eff_bbo_pm_per_v(double theta) const {
    return d22_bbo_pm_per_v * std::cos(theta);
}

const Material& Constants::material(MaterialId id) const {
    return id == MaterialId::BBO ? bbo : linbo3;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

Constants parse_constants(const std::string& text, const std::string& source_name) {
    IniDoc doc = IniDoc::from_text(text, source_name);
    Constants c;
    c.source = source_name;
    c.hash = fnv1a64(text);

    c.bbo.id = MaterialId::BBO;
    c.bbo.name = "BBO";
    c.bbo.thermo_model = ThermoModel::None;
    c.bbo.sellmeier_ordinary = read_eimerl(doc, "bbo", "ordinary");
    c.bbo.sellmeier_extraordinary = read_eimerl(doc, "bbo", "extraordinary");
    read_window(doc, "bbo", c.bbo);

    const std::string ln = "congruent_linbo3";
    JundtTerms j{};
    j.a1 = doc.number(ln, "extraordinary_a1");
    j.a2 = doc.number(ln, "extraordinary_a2");
    j.a3 = doc.number(ln, "extraordinary_a3");
    j.a4 = doc.number(ln, "extraordinary_a4");
    j.a5 = doc.number(ln, "extraordinary_a5");
    j.a6 = doc.number(ln, "extraordinary_a6");
    j.b1 = doc.number(ln, "extraordinary_b1");
    j.b2 = doc.number(ln, "extraordinary_b2");
    j.b3 = doc.number(ln, "extraordinary_b3");
    j.b4 = doc.number(ln, "extraordinary_b4");
    j.t_ref_c = doc.number(ln, "t_ref_c");
    j.t_offset_c = doc.number(ln, "t_offset_c");
    c.linbo3.id = MaterialId::CongruentLiNbO3;
    c.linbo3.name = "CongruentLiNbO3";
    c.linbo3.thermo_model = ThermoModel::TemperatureDependentSellmeier;
    c.linbo3.sellmeier_ordinary = std::nullopt;
    c.linbo3.sellmeier_extraordinary = j;
    read_window(doc, ln, c.linbo3);

    c.nonlinear.d33_linbo3_pm_per_v = doc.number("nonlinear", "d33_linbo3_pm_per_v");
    c.nonlinear.d22_bbo_pm_per_v = doc.number("nonlinear", "d22_bbo_pm_per_v");
    if (!(c.nonlinear.d33_linbo3_pm_per_v > 0 && c.nonlinear.d22_bbo_pm_per_v > 0))
        throw ConfigInvalid(source_name + ": nonlinear coefficients must be positive");
    return c;
}

Constants load_constants(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open constants file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_constants(ss.str(), path.string());
}

const std::string& default_constants_text() {
    static const std::string text = kBuiltinText;
    return text;
}

const Constants& default_constants() {
    static const Constants c = parse_constants(default_constants_text(), "<builtin>");
    return c;
}

const char* to_string(MaterialId id) {
    return id == MaterialId::BBO ? "BBO" : "CongruentLiNbO3";
}

MaterialId material_from_string(const std::string& name) {
    if (name == "BBO" || name == "bbo") return MaterialId::BBO;
    if (name == "CongruentLiNbO3" || name == "congruent_linbo3" || name == "linbo3" || name == "LiNbO3" ||
        name == "ppln")
        return MaterialId::CongruentLiNbO3;
    throw InvalidParam("unknown material '" + name + "'");
}

} // namespace chi2
