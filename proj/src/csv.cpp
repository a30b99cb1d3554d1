#include "metasel/csv.hpp"

#include <fstream>
#include <stdexcept>

namespace metasel::csv {

std::string escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    return out;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c == '\r') {
            // swallow CR from CRLF files
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<std::vector<std::string>> read_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string record;
    std::string line;
    bool in_quotes = false;
    while (std::getline(in, line)) {
        record += line;
        // A record continues past the newline if we are inside quotes.
        size_t quotes = 0;
        for (char c : record)
            if (c == '"') ++quotes;
        in_quotes = (quotes % 2) != 0;
        if (in_quotes) {
            record += '\n';
            continue;
        }
        if (!record.empty()) rows.push_back(split_row(record));
        record.clear();
    }
    if (!record.empty()) rows.push_back(split_row(record));
    return rows;
}

}  // namespace metasel::csv
