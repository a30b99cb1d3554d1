#include "metasel/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "metasel/errors.hpp"

namespace metasel {

Query build_standard_query(const std::string& title, FieldSet field_set,
                           const AnalyzerConfig& analyzer) {
    auto tokens = tokenize(title, analyzer);
    if (tokens.empty()) throw EmptyQueryError("title tokenizes to nothing");
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    Query q;
    q.field_set = field_set;
    for (const auto& t : distinct) q.terms.push_back({t, 1.0});
    return q;
}

Query build_mlt_query(const Document& doc, size_t doc_index, FieldSet field_set,
                      const IndexPair& index, const MltParams& params) {
    if (doc_index >= index.title.doc_lengths.size())
        throw NotIndexedError(doc.doc_id);

    std::vector<Field> fields{Field::Title};
    if (field_set == FieldSet::TitleAbstract) fields.push_back(Field::Abstract);

    // interestingness per term, summed over the selected fields
    std::map<std::string, double> interest;
    for (Field f : fields) {
        const FieldIndex& fi = index.field(f);
        if (fi.doc_count == 0) continue;
        const std::string* text = nullptr;
        if (f == Field::Title) text = &doc.title;
        else if (doc.abstract_text) text = &*doc.abstract_text;
        if (!text) continue;
        // The doc's own term vector, re-derived with the index analyzer;
        // identical to the indexed frequencies by construction.
        std::map<std::string, int> freqs;
        for (const auto& t : tokenize(*text, index.analyzer)) ++freqs[t];
        for (const auto& [term, freq] : freqs) {
            if (freq < params.min_term_freq) continue;
            if (fi.doc_freq(term) < params.min_doc_freq) continue;
            interest[term] += tf_weight(freq) * idf(term, fi);
        }
    }
    if (interest.empty()) throw EmptyQueryError("all term-vector terms filtered");

    std::vector<std::pair<std::string, double>> ranked(interest.begin(), interest.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(ranked.size()) > params.max_query_terms)
        ranked.resize(static_cast<size_t>(params.max_query_terms));

    // canonical term order within the query: lexicographic
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Query q;
    q.field_set = field_set;
    for (const auto& [term, score] : ranked) q.terms.push_back({term, score});
    return q;
}

RankedList execute_query(const CorpusStore& store, const IndexPair& index,
                         const Query& query, int k,
                         std::optional<size_t> exclude_doc) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    std::vector<Field> fields{Field::Title};
    if (query.field_set == FieldSet::TitleAbstract) fields.push_back(Field::Abstract);

    size_t n_docs = store.documents().size();
    std::vector<double> scores(n_docs, 0.0);
    std::vector<uint8_t> matched_terms_mask;  // per (doc, term) coord accounting
    std::vector<int> matched_terms(n_docs, 0);
    matched_terms_mask.assign(n_docs * query.terms.size(), 0);

    for (Field f : fields) {
        const FieldIndex& fi = index.field(f);
        if (fi.doc_count == 0) continue;
        for (size_t ti = 0; ti < query.terms.size(); ++ti) {
            const auto& qt = query.terms[ti];
            auto it = fi.postings.find(qt.term);
            if (it == fi.postings.end()) continue;
            double term_idf = idf(qt.term, fi);
            for (const Posting& p : it->second) {
                int len = fi.doc_lengths[p.doc];
                if (len <= 0) continue;
                scores[p.doc] += qt.boost * tf_weight(p.term_freq) * term_idf * term_idf /
                                 std::sqrt(static_cast<double>(len));
                uint8_t& seen = matched_terms_mask[p.doc * query.terms.size() + ti];
                if (!seen) {
                    seen = 1;
                    ++matched_terms[p.doc];
                }
            }
        }
    }

    std::vector<ScoredDoc> hits;
    const auto& docs = store.documents();
    for (size_t d = 0; d < n_docs; ++d) {
        if (exclude_doc && *exclude_doc == d) continue;
        if (matched_terms[d] == 0) continue;
        double coord = static_cast<double>(matched_terms[d]) /
                       static_cast<double>(query.terms.size());
        double s = coord * scores[d];
        if (s <= 0.0) continue;
        hits.push_back({docs[d].doc_id, s});
    }
    std::sort(hits.begin(), hits.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (static_cast<int>(hits.size()) > k) hits.resize(static_cast<size_t>(k));
    return RankedList{std::move(hits)};
}

RecommendResult recommend(const CorpusStore& store, const IndexPair& index,
                          const RecommendRequest& request, AlgorithmId algorithm,
                          int k, const MltParams& params) {
    RecommendResult result;
    result.executed = algorithm;

    std::optional<size_t> doc_idx;
    std::optional<Document> doc;
    if (request.doc_id) {
        doc_idx = store.doc_index(*request.doc_id);
        if (doc_idx) doc = store.documents()[*doc_idx];
    }

    std::string title = request.title;
    if (title.empty() && doc) title = doc->title;

    if (algorithm.strategy == Strategy::TermVectorQuery) {
        if (doc_idx) {
            Query q = build_mlt_query(*doc, *doc_idx, algorithm.field_set, index, params);
            result.ranked = execute_query(store, index, q, k, doc_idx);
            return result;
        }
        // fallback: standard query over the title
        result.fallback = true;
        result.executed = AlgorithmId{Strategy::StandardQuery, FieldSet::Title};
        Query q = build_standard_query(title, FieldSet::Title, index.analyzer);
        result.ranked = execute_query(store, index, q, k, std::nullopt);
        return result;
    }

    Query q = build_standard_query(title, algorithm.field_set, index.analyzer);
    result.ranked = execute_query(store, index, q, k, doc_idx);
    return result;
}

}  // namespace metasel
