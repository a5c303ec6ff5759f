#pragma once

#include <string>
#include <vector>

namespace shapbench {

// Shortest decimal representation that round-trips the exact double; keeps
// CSV output byte-stable across runs.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

// Minimal CSV table: first row is the header. Quoting is not supported; the
// datasets this tool consumes and emits are plain numeric tables.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

// Writes content to `path` via a temp file plus rename, so readers never see
// a partially written file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace shapbench
