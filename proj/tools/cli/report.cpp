#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "srgc/errors.hpp"

namespace srgc::cli {

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw std::logic_error("table " + name + ": row width does not match header");
    }
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& text)
{
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ConfigError("unknown output format '" + text + "' (csv, json)");
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    // snprintf's decimal point follows LC_NUMERIC; the CLI never calls setlocale.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_cell(const Cell& c)
{
    struct {
        std::string operator()(const std::string& s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) {
                if (ch == '"') q += '"';
                q += ch;
            }
            return q + "\"";
        }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "1" : "0"; }
    } visitor;
    return std::visit(visitor, c);
}

nlohmann::ordered_json json_cell(const Cell& c)
{
    struct {
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(double v) const
        {
            if (std::isnan(v)) return nullptr;
            if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
            // Round-trip through the 12-digit text so both formats agree.
            return std::stod(format_number(v));
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
    } visitor;
    return std::visit(visitor, c);
}

}  // namespace

void write_csv(std::ostream& out, const Report& report)
{
    const bool labelled = report.tables.size() > 1;
    for (std::size_t t = 0; t < report.tables.size(); ++t) {
        const auto& table = report.tables[t];
        if (t > 0) out << '\n';
        if (labelled) out << "# " << table.name << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
    }
}

void write_json(std::ostream& out, const Report& report)
{
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    for (const auto& table : report.tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
            rows.push_back(std::move(obj));
        }
        doc[table.name] = std::move(rows);
    }
    out << doc.dump(2) << '\n';
}

void write_report(std::ostream& out, const Report& report, Format format)
{
    if (format == Format::csv) write_csv(out, report);
    else write_json(out, report);
}

}  // namespace srgc::cli
