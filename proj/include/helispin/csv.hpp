#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

// Tabular results and their CSV form. Data rows go to the file; metadata is
// echoed on the report stream and never mixed into the table.

namespace helispin {

using Cell = std::variant<double, long, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void append_row(std::vector<Cell> row);  // width must match columns
};

std::string format_cell(const Cell& cell);  // numbers at 12 significant digits

// RFC-4180 quoting: fields with commas, quotes, or line breaks are quoted,
// embedded quotes doubled
std::string csv_escape(const std::string& field);

std::string to_csv(const ResultTable& table);  // header row always present

// writes to a temporary sibling then renames, so failures leave no partial file
void write_csv_file(const ResultTable& table, const std::string& path);

}  // namespace helispin
