#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "srgc/errors.hpp"

namespace srgc::cli {

namespace {

std::string dotted(const std::string& section, const std::string& key)
{
    return section + "." + key;
}

double parse_double(const std::string& text, const std::string& where)
{
    const std::string t = boost::trim_copy(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(where + ": expected a number, got '" + text + "'");
    }
    return v;
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, path);
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin)
{
    ConfigFile cfg;
    cfg.origin_ = origin;
    try {
        boost::property_tree::ini_parser::read_ini(in, cfg.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(origin + ": line " + std::to_string(e.line()) + ": " + e.message());
    }
    return cfg;
}

std::optional<std::string> ConfigFile::raw(const std::string& section, const std::string& key) const
{
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(boost::property_tree::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    used_.insert(dotted(section, key));
    return boost::trim_copy(*v);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const
{
    const auto sec = tree_.get_child_optional(section);
    return sec && sec->find(key) != sec->not_found();
}

bool ConfigFile::has_section(const std::string& section) const
{
    return tree_.find(section) != tree_.not_found();
}

std::string ConfigFile::text(const std::string& section, const std::string& key) const
{
    const auto v = raw(section, key);
    if (!v) throw ConfigError(origin_ + ": missing required key " + dotted(section, key));
    return *v;
}

std::string ConfigFile::text(const std::string& section, const std::string& key,
                             const std::string& fallback) const
{
    return raw(section, key).value_or(fallback);
}

double ConfigFile::number(const std::string& section, const std::string& key) const
{
    return parse_double(text(section, key), dotted(section, key));
}

double ConfigFile::number(const std::string& section, const std::string& key, double fallback) const
{
    const auto v = raw(section, key);
    return v ? parse_double(*v, dotted(section, key)) : fallback;
}

std::uint64_t ConfigFile::count(const std::string& section, const std::string& key) const
{
    const std::string t = text(section, key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(dotted(section, key) + ": expected a non-negative integer, got '" + t + "'");
    }
    return v;
}

std::uint64_t ConfigFile::count(const std::string& section, const std::string& key,
                                std::uint64_t fallback) const
{
    return has(section, key) ? count(section, key) : fallback;
}

std::vector<double> ConfigFile::numbers(const std::string& section, const std::string& key) const
{
    const std::string t = text(section, key);
    std::vector<std::string> parts;
    boost::split(parts, t, boost::is_any_of(","));
    std::vector<double> out;
    for (const auto& p : parts) {
        if (boost::trim_copy(p).empty()) continue;
        out.push_back(parse_double(p, dotted(section, key)));
    }
    return out;
}

std::vector<double> ConfigFile::axis(const std::string& section, const std::string& key) const
{
    if (has(section, key)) return numbers(section, key);
    const double lo = number(section, key + "_min");
    const double hi = number(section, key + "_max");
    const auto points = count(section, key + "_points");
    if (points == 0) throw ConfigError(dotted(section, key) + "_points: empty grid");
    if (points == 1) return {lo};
    std::vector<double> out(points);
    for (std::uint64_t i = 0; i < points; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

void ConfigFile::reject_unused() const
{
    std::vector<std::string> unknown;
    for (const auto& [section, body] : tree_) {
        for (const auto& [key, value] : body) {
            if (!used_.count(dotted(section, key))) unknown.push_back(dotted(section, key));
        }
    }
    if (!unknown.empty()) {
        throw ConfigError(origin_ + ": unknown keys: " + boost::join(unknown, ", "));
    }
}

SourceSpec load_source(const ConfigFile& cfg)
{
    const std::string family = cfg.text("source", "family", "gaussian");
    if (family == "gaussian") return SourceSpec::gaussian(cfg.number("source", "variance", 1.0));
    if (family == "uniform") return SourceSpec::uniform(cfg.number("source", "half_width"));
    if (family == "laplace") return SourceSpec::laplace(cfg.number("source", "scale"));
    if (family == "two_point") return SourceSpec::two_point(cfg.number("source", "c"));
    if (family == "discrete") {
        const bool center = cfg.text("source", "center", "false") == "true";
        return SourceSpec::discrete(cfg.numbers("source", "values"), cfg.numbers("source", "probs"),
                                    center);
    }
    throw ConfigError("source.family: unknown family '" + family +
                      "' (gaussian, uniform, laplace, two_point, discrete)");
}

}  // namespace srgc::cli
