#pragma once

#include "mcor/kernels.hpp"
#include "mcor/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mcor {

struct CsvTable {
    std::vector<std::string> header;
    Matrix values;
};

// Strict numeric CSV reader: one header row, rectangular body, 64-bit float
// cells. Ragged rows, empty/NA/non-numeric cells are rejected with the file
// line and column in the message.
CsvTable ingest_csv(const std::filesystem::path& path);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Numeric table writer; output is byte-stable for identical input.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values);

// Generic string table writer for report files.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

// Partition syntax "1,2|3": components separated by '|', 1-based column
// indices separated by ','. Must cover every dataset column exactly once.
ComponentPartition parse_partition(const std::string& text, std::size_t dataset_cols,
                                   const KernelSpec& kernel);

} // namespace mcor
