#include "helispin/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace helispin {

void ResultTable::append_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("row width " + std::to_string(row.size()) +
                                    " does not match " + std::to_string(columns.size()) +
                                    " columns");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto* l = std::get_if<long>(&cell)) return std::to_string(*l);
    return std::get<std::string>(cell);
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(table.columns[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_escape(format_cell(row[i]));
        }
        out += "\n";
    }
    return out;
}

void write_csv_file(const ResultTable& table, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f << to_csv(table);
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move results into '" + path + "'");
    }
}

}  // namespace helispin
