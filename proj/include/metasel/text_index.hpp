#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "metasel/analyzer.hpp"
#include "metasel/corpus_store.hpp"

namespace metasel {

enum class Field { Title, Abstract };

struct Posting {
    size_t doc;      // dense document index into the corpus
    int term_freq;   // >= 1
};

// Per-field inverted index with the statistics TF-IDF scoring needs.
// `doc_count` counts documents that possess the field (every document has a
// title; only documents with an abstract are counted for the abstract
// index).
struct FieldIndex {
    Field field = Field::Title;
    std::unordered_map<std::string, std::vector<Posting>> postings;
    std::vector<int> doc_lengths;  // token count per dense doc index (0 = no content)
    size_t doc_count = 0;

    int doc_freq(const std::string& term) const {
        auto it = postings.find(term);
        return it == postings.end() ? 0 : static_cast<int>(it->second.size());
    }

    int term_freq(const std::string& term, size_t doc) const;
};

struct IndexPair {
    FieldIndex title;
    FieldIndex abstract_field;
    AnalyzerConfig analyzer;

    const FieldIndex& field(Field f) const {
        return f == Field::Title ? title : abstract_field;
    }
};

// idf = 1 + ln(N / (df + 1)); df = 0 for unseen terms. N must be >= 1.
double idf(const std::string& term, const FieldIndex& index);

// tf weight = sqrt(freq); 0 -> 0.
double tf_weight(int freq);

// Builds both field indexes over the corpus. Documents without abstracts
// contribute nothing to the abstract index.
IndexPair build_index(const CorpusStore& store, const AnalyzerConfig& config = {});

// Versioned JSON snapshot; round-trip stable.
void save_index(const IndexPair& index, const std::string& path);
IndexPair load_index(const std::string& path);

}  // namespace metasel
