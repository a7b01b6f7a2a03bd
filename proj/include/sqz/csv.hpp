// Minimal numeric CSV I/O. All files carry a header row naming the columns;
// values are written with 17 significant digits so identical runs produce
// byte-identical files.
#pragma once

#include <string>
#include <vector>

namespace sqz::csv {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // row-major, rows[i].size() == columns.size()

    std::size_t column_index(const std::string& name) const; // throws if absent
};

// Parses a headered numeric CSV. Throws std::runtime_error naming the line on
// ragged rows or non-numeric fields; tolerates trailing newline and CRLF.
Table read_file(const std::string& path);

void write_file(const std::string& path, const Table& table);

// 17-significant-digit representation used across all text output.
std::string format_double(double v);

} // namespace sqz::csv
