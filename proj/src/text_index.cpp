#include "metasel/text_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace metasel {

using nlohmann::json;

int FieldIndex::term_freq(const std::string& term, size_t doc) const {
    auto it = postings.find(term);
    if (it == postings.end()) return 0;
    const auto& list = it->second;
    auto pos = std::lower_bound(list.begin(), list.end(), doc,
                                [](const Posting& p, size_t d) { return p.doc < d; });
    if (pos != list.end() && pos->doc == doc) return pos->term_freq;
    return 0;
}

double idf(const std::string& term, const FieldIndex& index) {
    if (index.doc_count == 0) throw std::runtime_error("idf over an empty index");
    int df = index.doc_freq(term);
    return 1.0 + std::log(static_cast<double>(index.doc_count) / (df + 1.0));
}

double tf_weight(int freq) { return std::sqrt(static_cast<double>(freq)); }

namespace {

void index_text(FieldIndex& fi, size_t doc, const std::string& text,
                const AnalyzerConfig& config) {
    auto tokens = tokenize(text, config);
    std::map<std::string, int> freqs;
    for (const auto& t : tokens) ++freqs[t];
    for (const auto& [term, freq] : freqs)
        fi.postings[term].push_back({doc, freq});
    fi.doc_lengths[doc] = static_cast<int>(tokens.size());
}

json field_to_json(const FieldIndex& fi) {
    json j;
    j["doc_count"] = fi.doc_count;
    j["doc_lengths"] = fi.doc_lengths;
    // Sorted term order keeps the snapshot deterministic.
    std::map<std::string, const std::vector<Posting>*> sorted;
    for (const auto& [term, list] : fi.postings) sorted[term] = &list;
    json postings = json::object();
    for (const auto& [term, list] : sorted) {
        json entries = json::array();
        for (const auto& p : *list) entries.push_back({p.doc, p.term_freq});
        postings[term] = std::move(entries);
    }
    j["postings"] = std::move(postings);
    return j;
}

FieldIndex field_from_json(const json& j, Field f) {
    FieldIndex fi;
    fi.field = f;
    fi.doc_count = j.at("doc_count").get<size_t>();
    fi.doc_lengths = j.at("doc_lengths").get<std::vector<int>>();
    for (const auto& [term, entries] : j.at("postings").items()) {
        std::vector<Posting> list;
        for (const auto& e : entries)
            list.push_back({e[0].get<size_t>(), e[1].get<int>()});
        fi.postings[term] = std::move(list);
    }
    return fi;
}

}  // namespace

IndexPair build_index(const CorpusStore& store, const AnalyzerConfig& config) {
    IndexPair pair;
    pair.analyzer = config;
    const auto& docs = store.documents();

    pair.title.field = Field::Title;
    pair.title.doc_lengths.assign(docs.size(), 0);
    pair.title.doc_count = docs.size();

    pair.abstract_field.field = Field::Abstract;
    pair.abstract_field.doc_lengths.assign(docs.size(), 0);

    for (size_t i = 0; i < docs.size(); ++i) {
        index_text(pair.title, i, docs[i].title, config);
        if (docs[i].abstract_text) {
            index_text(pair.abstract_field, i, *docs[i].abstract_text, config);
            ++pair.abstract_field.doc_count;
        }
    }
    return pair;
}

void save_index(const IndexPair& index, const std::string& path) {
    json j;
    j["version"] = 1;
    j["analyzer"] = {{"remove_stopwords", index.analyzer.remove_stopwords},
                     {"stem", index.analyzer.stem}};
    j["title"] = field_to_json(index.title);
    j["abstract"] = field_to_json(index.abstract_field);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write index snapshot: " + path);
    out << j.dump() << '\n';
}

IndexPair load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open index snapshot: " + path);
    json j = json::parse(in);
    if (j.at("version").get<int>() != 1)
        throw std::runtime_error("unsupported index snapshot version");
    IndexPair pair;
    pair.analyzer.remove_stopwords = j.at("analyzer").at("remove_stopwords").get<bool>();
    pair.analyzer.stem = j.at("analyzer").at("stem").get<bool>();
    pair.title = field_from_json(j.at("title"), Field::Title);
    pair.abstract_field = field_from_json(j.at("abstract"), Field::Abstract);
    return pair;
}

}  // namespace metasel
