#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "srgc/sources.hpp"

namespace srgc::cli {

// Flat key-value file with [section] headers, ';' comments. Every lookup is
// recorded so that unknown keys (usually typos) can be reported.
class ConfigFile {
public:
    static ConfigFile load(const std::string& path);
    static ConfigFile parse(std::istream& in, const std::string& origin = "<config>");

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::string text(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    std::uint64_t count(const std::string& section, const std::string& key) const;
    std::uint64_t count(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;

    /// Values from `key` (comma list) or `key_min`/`key_max`/`key_points` (uniform grid).
    std::vector<double> axis(const std::string& section, const std::string& key) const;

    /// Throws ConfigError listing keys that were never read.
    void reject_unused() const;

private:
    std::optional<std::string> raw(const std::string& section, const std::string& key) const;

    boost::property_tree::ptree tree_;
    std::string origin_;
    mutable std::set<std::string> used_;
};

SourceSpec load_source(const ConfigFile& cfg);

}  // namespace srgc::cli
