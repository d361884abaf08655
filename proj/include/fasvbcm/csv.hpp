// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fasvbcm/config.hpp"

namespace fas {

/// One CSV artifact: '#' header lines (tool version, command, resolved config, notes,
/// scalar results), a column row, then data rows.
///
///   # fasvbcm <version>
///   # command <name>
///   # config <section.key>=<value>
///   # note <free text>
///   # result <name>=<value>
///   col_a,col_b,...
///   1.00000000,2.5,...
struct CsvDocument {
    std::string version;
    std::string command;
    RunConfig config;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Appends a row; the cell count must match the columns.
    void add_row(std::vector<std::string> cells);
    void add_result(const std::string& name, const std::string& value);

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, const std::string& name) const;
    [[nodiscard]] const std::string& result(const std::string& name) const;
};

/// Nine significant digits.
std::string format_number(double v);
std::string format_number(long long v);

void write_csv(std::ostream& out, const CsvDocument& doc);
CsvDocument read_csv(std::istream& in);

}  // namespace fas
