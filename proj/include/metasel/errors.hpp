#pragma once

#include <stdexcept>
#include <string>

namespace metasel {

// File-level ingest failure (bad JSON/CSV). Carries the 1-based line number.
class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& msg, size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

// A query that tokenized or filtered down to nothing.
class EmptyQueryError : public std::runtime_error {
public:
    explicit EmptyQueryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Term-vector query requested for a document that is not in the index.
class NotIndexedError : public std::runtime_error {
public:
    explicit NotIndexedError(const std::string& doc_id)
        : std::runtime_error("document not indexed: " + doc_id) {}
};

// Feature vector does not match a model's training schema.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model training diverged or failed.
class TrainError : public std::runtime_error {
public:
    explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace metasel
