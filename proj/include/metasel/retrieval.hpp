#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metasel/algorithm_id.hpp"
#include "metasel/corpus_store.hpp"
#include "metasel/text_index.hpp"

namespace metasel {

struct QueryTerm {
    std::string term;
    double boost = 1.0;
};

struct Query {
    std::vector<QueryTerm> terms;  // distinct terms
    FieldSet field_set = FieldSet::Title;
};

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
};

// Ranked retrieval result: strictly non-increasing scores, no duplicates,
// never contains the excluded document.
struct RankedList {
    std::vector<ScoredDoc> entries;
};

struct MltParams {
    int max_query_terms = 25;
    int min_term_freq = 1;
    int min_doc_freq = 1;
};

// One query term per distinct title token, boost 1. The query text is always
// the title; the field set only controls which document fields are searched.
Query build_standard_query(const std::string& title, FieldSet field_set,
                           const AnalyzerConfig& analyzer = {});

// Term-vector query: per selected field of the indexed document, each term's
// interestingness is tf_weight(freq) * idf summed across fields; the top
// max_query_terms terms by that score are kept (ties lexicographic) with the
// score as boost.
Query build_mlt_query(const Document& doc, size_t doc_index, FieldSet field_set,
                      const IndexPair& index, const MltParams& params = {});

// TF-IDF ranked retrieval:
//   score(q,d) = coord(q,d) * sum_f sum_t boost(t) * tf_weight(freq(t,d,f))
//                * idf(t,f)^2 / sqrt(doc_length(d,f))
// coord = matched query terms / total query terms. Zero-score documents are
// omitted; ties break by ascending doc_id; the excluded document is removed
// before truncation to k.
RankedList execute_query(const CorpusStore& store, const IndexPair& index,
                         const Query& query, int k,
                         std::optional<size_t> exclude_doc = std::nullopt);

struct RecommendRequest {
    std::optional<std::string> doc_id;
    std::string title;
};

struct RecommendResult {
    RankedList ranked;
    AlgorithmId executed;   // algorithm that actually produced the list
    bool fallback = false;  // term-vector request without an indexed doc
};

// Dispatches to the requested algorithm. A term-vector request whose
// document is unknown or unindexed falls back to the standard query over the
// title, with the fallback flag set.
RecommendResult recommend(const CorpusStore& store, const IndexPair& index,
                          const RecommendRequest& request, AlgorithmId algorithm,
                          int k, const MltParams& params = {});

}  // namespace metasel
