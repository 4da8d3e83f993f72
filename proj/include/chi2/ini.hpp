#pragma once

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace chi2 {

// Sectioned key = value text. Missing or malformed keys raise ConfigInvalid naming the key.
class IniDoc {
public:
    static IniDoc from_text(const std::string& text, const std::string& source_name);
    static IniDoc from_file(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::string text_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const;

    const std::string& source() const { return source_; }

private:
    std::optional<std::string> raw(const std::string& section, const std::string& key) const;

    boost::property_tree::ptree tree_;
    std::string source_;
};

} // namespace chi2
