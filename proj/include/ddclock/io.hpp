#pragma once

#include <string>
#include <vector>

namespace ddclock {

// Fixed 17-significant-digit formatting so repeated runs produce byte-identical
// CSV output.
std::string format_g17(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_text() const;
};

std::string csv_cell(double value);
std::string csv_cell(int value);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace ddclock
