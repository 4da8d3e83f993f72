#include "chi2/ini.hpp"

#include "chi2/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace chi2 {

namespace pt = boost::property_tree;

IniDoc IniDoc::from_text(const std::string& text, const std::string& source_name) {
    IniDoc doc;
    doc.source_ = source_name;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, doc.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigInvalid(source_name + ": line " + std::to_string(e.line()) + ": " +
                            e.message());
    }
    return doc;
}

IniDoc IniDoc::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str(), path.string());
}

std::optional<std::string> IniDoc::raw(const std::string& section, const std::string& key) const {
    auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!sec) return std::nullopt;
    auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return *v;
}

bool IniDoc::has(const std::string& section, const std::string& key) const {
    return raw(section, key).has_value();
}

bool IniDoc::has_section(const std::string& section) const {
    return tree_.get_child_optional(pt::ptree::path_type(section, '\0')).has_value();
}

double IniDoc::number(const std::string& section, const std::string& key) const {
    auto v = raw(section, key);
    if (!v) throw ConfigInvalid(source_ + ": missing key [" + section + "] " + key);
    const std::string& s = *v;
    double out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigInvalid(source_ + ": [" + section + "] " + key + " is not a number: '" + s +
                            "'");
    return out;
}

double IniDoc::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

std::string IniDoc::text(const std::string& section, const std::string& key) const {
    auto v = raw(section, key);
    if (!v) throw ConfigInvalid(source_ + ": missing key [" + section + "] " + key);
    return *v;
}

std::string IniDoc::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    auto v = raw(section, key);
    return v ? *v : fallback;
}

} // namespace chi2
