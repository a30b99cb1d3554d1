#pragma once

#include <string>
#include <vector>

namespace metasel::csv {

// RFC-4180 style field quoting: quote when the value contains a comma,
// quote, or newline; embedded quotes are doubled.
std::string escape(const std::string& field);

std::string join_row(const std::vector<std::string>& fields);

// Splits one logical CSV record. The input must contain a full record
// (read_records handles quoted embedded newlines).
std::vector<std::string> split_row(const std::string& line);

// Reads all records from a file, honoring quoted newlines. Returns rows of
// fields, including the header row.
std::vector<std::vector<std::string>> read_records(const std::string& path);

}  // namespace metasel::csv
