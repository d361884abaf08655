// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fas {

namespace {

std::vector<std::string> split_cells(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

bool starts_with(const std::string& s, std::string_view prefix)
{
    return s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_number(long long v)
{
    return std::to_string(v);
}

void CsvDocument::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns.size())
        throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, expected "
                          + std::to_string(columns.size()));
    rows.push_back(std::move(cells));
}

void CsvDocument::add_result(const std::string& name, const std::string& value)
{
    results.emplace_back(name, value);
}

std::size_t CsvDocument::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw ConfigError("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

double CsvDocument::number(std::size_t row, const std::string& name) const
{
    const std::string& cell = rows.at(row).at(column(name));
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw ConfigError("CSV cell '" + cell + "' in column '" + name + "' is not a number");
    return v;
}

const std::string& CsvDocument::result(const std::string& name) const
{
    for (const auto& [k, v] : results)
        if (k == name)
            return v;
    throw ConfigError("CSV has no result '" + name + "'");
}

void write_csv(std::ostream& out, const CsvDocument& doc)
{
    out << "# fasvbcm " << doc.version << '\n';
    out << "# command " << doc.command << '\n';
    for (const std::string& line : doc.config.echo())
        out << "# config " << line << '\n';
    for (const std::string& note : doc.notes)
        out << "# note " << note << '\n';
    for (const auto& [k, v] : doc.results)
        out << "# result " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < doc.columns.size(); ++i)
        out << (i ? "," : "") << doc.columns[i];
    out << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

CsvDocument read_csv(std::istream& in)
{
    CsvDocument doc;
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (starts_with(line, "# fasvbcm ")) {
                doc.version = line.substr(10);
            } else if (starts_with(line, "# command ")) {
                doc.command = line.substr(10);
            } else if (starts_with(line, "# config ")) {
                const std::string kv = line.substr(9);
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("CSV config line without '=': " + line);
                doc.config.set(kv.substr(0, eq), kv.substr(eq + 1));
            } else if (starts_with(line, "# note ")) {
                doc.notes.push_back(line.substr(7));
            } else if (starts_with(line, "# result ")) {
                const std::string kv = line.substr(9);
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("CSV result line without '=': " + line);
                doc.add_result(kv.substr(0, eq), kv.substr(eq + 1));
            }
            continue;
        }
        if (!have_columns) {
            doc.columns = split_cells(line);
            have_columns = true;
        } else {
            doc.add_row(split_cells(line));
        }
    }
    if (!have_columns)
        throw ConfigError("CSV has no column row");
    return doc;
}

}  // namespace fas
