#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace srgc::cli {

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct Report {
    std::string command;
    std::vector<Table> tables;
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Numbers use 12 significant digits with '.' decimals regardless of locale.
std::string format_number(double v);

// CSV: one header + rows per table, tables separated by a blank line and
// preceded by "# <name>" when there is more than one.
void write_csv(std::ostream& out, const Report& report);

// JSON: {"command": ..., "<table>": [{column: value, ...}, ...], ...}.
// NaN becomes null and infinities the strings "inf"/"-inf".
void write_json(std::ostream& out, const Report& report);

void write_report(std::ostream& out, const Report& report, Format format);

}  // namespace srgc::cli
