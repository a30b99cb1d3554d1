#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace metasel {

// One corpus item. `abstract_text` is optional: a document without an
// abstract is legal and distinct from one with an empty abstract.
struct Document {
    std::string doc_id;
    std::string title;
    std::optional<std::string> abstract_text;
    std::string collection_id;
};

// Per-researcher relevance judgments. `relevant_doc_ids` is kept sorted and
// duplicate-free.
struct JudgmentSet {
    std::string researcher_id;
    std::vector<std::string> relevant_doc_ids;
};

struct CorpusStats {
    size_t doc_count = 0;
    size_t abstract_count = 0;
    size_t collection_count = 0;
    size_t rejected_count = 0;
};

struct JudgmentStats {
    size_t researcher_count = 0;
    size_t pair_count = 0;
    size_t dropped_unresolvable = 0;
};

enum class CorpusFormat { Jsonl, Csv };

// Holds the ingested corpus and judgments. Built single-writer, then
// immutable; reads are safe from any number of threads.
class CorpusStore {
public:
    // Replaces the store contents with the file's valid rows. Rows with a
    // missing/empty doc_id or title, or a duplicate doc_id, are rejected and
    // counted. A line that fails to parse raises IngestError with its line
    // number.
    CorpusStats ingest_corpus(const std::string& path, CorpusFormat format = CorpusFormat::Jsonl);

    // Judgments CSV with header `researcher_id,doc_id`. Pairs naming unknown
    // documents are dropped and counted, not fatal.
    JudgmentStats ingest_judgments(const std::string& path);

    std::optional<Document> get_document(const std::string& doc_id) const;
    std::optional<size_t> doc_index(const std::string& doc_id) const;

    const std::vector<Document>& documents() const { return docs_; }
    const std::vector<JudgmentSet>& judgments() const { return judgments_; }

    // Canonical re-serialization; ingest -> export -> ingest -> export is
    // byte-stable.
    void export_corpus_jsonl(const std::string& path) const;
    void export_judgments_csv(const std::string& path) const;

    // Persists corpus.jsonl + judgments.csv + manifest.json into `dir`.
    void save(const std::string& dir) const;
    static CorpusStore load(const std::string& dir);

    CorpusStats corpus_stats() const;
    JudgmentStats judgment_stats() const { return judgment_stats_; }

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, size_t> id_to_index_;
    std::vector<JudgmentSet> judgments_;
    size_t rejected_rows_ = 0;
    JudgmentStats judgment_stats_;
};

}  // namespace metasel
