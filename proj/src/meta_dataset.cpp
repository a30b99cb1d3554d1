#include "metasel/meta_dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "metasel/csv.hpp"
#include "metasel/errors.hpp"

namespace metasel {

std::string schema_name(FeatureSchema s) {
    return s == FeatureSchema::Offline ? "offline" : "online";
}

FeatureSchema schema_from_name(const std::string& name) {
    if (name == "offline") return FeatureSchema::Offline;
    if (name == "online") return FeatureSchema::Online;
    throw std::runtime_error("unknown feature schema: " + name);
}

int count_unicode_chars(const std::string& s) {
    int n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;  // skip UTF-8 continuation bytes
    return n;
}

int count_words(const std::string& s) {
    int n = 0;
    bool in_word = false;
    for (unsigned char c : s) {
        bool ws = std::isspace(c) != 0;
        if (!ws && !in_word) ++n;
        in_word = !ws;
    }
    return n;
}

FeatureVector extract_meta_features(const Document& doc, std::optional<int> hour_of_day) {
    FeatureVector f;
    f.collection_id = doc.collection_id;
    f.title_chars = count_unicode_chars(doc.title);
    f.title_words = count_words(doc.title);
    f.hour_of_day = hour_of_day;
    return f;
}

std::optional<MetaInstance> label_instance(const CorpusStore& store,
                                           const IndexPair& index,
                                           const JudgmentSet& researcher,
                                           const std::string& doc_id, int k,
                                           const MltParams& params) {
    auto doc_idx = store.doc_index(doc_id);
    if (!doc_idx) return std::nullopt;
    const Document& doc = store.documents()[*doc_idx];

    std::set<std::string> relevant(researcher.relevant_doc_ids.begin(),
                                   researcher.relevant_doc_ids.end());
    relevant.erase(doc_id);
    if (relevant.empty()) return std::nullopt;  // recall undefined

    MetaInstance inst;
    inst.researcher_id = researcher.researcher_id;
    inst.doc_id = doc_id;
    inst.features = extract_meta_features(doc);

    bool any_retrieved = false;
    for (auto id : all_algorithms()) {
        RankedList ranked;
        if (id.strategy == Strategy::TermVectorQuery) {
            try {
                Query q = build_mlt_query(doc, *doc_idx, id.field_set, index, params);
                ranked = execute_query(store, index, q, k, doc_idx);
            } catch (const EmptyQueryError&) {
                // no usable terms: counts as an empty result
            }
        } else {
            try {
                Query q = build_standard_query(doc.title, id.field_set, index.analyzer);
                ranked = execute_query(store, index, q, k, doc_idx);
            } catch (const EmptyQueryError&) {
            }
        }
        if (!ranked.entries.empty()) any_retrieved = true;
        std::set<std::string> retrieved;
        for (const auto& e : ranked.entries) retrieved.insert(e.doc_id);
        inst.scores[static_cast<size_t>(algorithm_index(id))] = prf1(retrieved, relevant);
    }
    if (!any_retrieved) return std::nullopt;  // all-zero row is removed

    int best = 0;
    for (int a = 1; a < kAlgorithmCount; ++a) {
        double fa = inst.scores[static_cast<size_t>(a)].f1;
        double fb = inst.scores[static_cast<size_t>(best)].f1;
        if (fa > fb || (fa == fb && tie_break_rank(algorithm_from_index(a)) <
                                        tie_break_rank(algorithm_from_index(best))))
            best = a;
    }
    inst.best = best;
    return inst;
}

MetaDataset build_meta_dataset(const CorpusStore& store, const IndexPair& index,
                               int k, const MltParams& params) {
    MetaDataset ds;
    ds.schema = FeatureSchema::Offline;

    std::vector<const JudgmentSet*> researchers;
    for (const auto& js : store.judgments()) researchers.push_back(&js);
    std::sort(researchers.begin(), researchers.end(),
              [](const JudgmentSet* a, const JudgmentSet* b) {
                  return a->researcher_id < b->researcher_id;
              });

    for (const JudgmentSet* js : researchers) {
        std::vector<std::string> docs = js->relevant_doc_ids;
        std::sort(docs.begin(), docs.end());
        for (const auto& doc_id : docs) {
            auto inst = label_instance(store, index, *js, doc_id, k, params);
            if (inst) ds.instances.push_back(std::move(*inst));
            else ++ds.dropped_rows;
        }
    }
    return ds;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void export_rows(const MetaDataset& dataset, const std::string& path, bool full) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write dataset CSV: " + path);

    std::string header =
        "researcher_id,doc_id,collection_id,title_chars,title_words,"
        "f1_mlt_title,f1_mlt_title_abstract,f1_std_title,f1_std_title_abstract,best";
    if (full) {
        for (auto id : all_algorithms())
            header += ",p_" + algorithm_name(id) + ",r_" + algorithm_name(id);
    }
    out << header << '\n';

    for (const auto& inst : dataset.instances) {
        std::vector<std::string> fields = {
            inst.researcher_id,
            inst.doc_id,
            inst.features.collection_id,
            std::to_string(inst.features.title_chars),
            std::to_string(inst.features.title_words),
        };
        for (int a = 0; a < kAlgorithmCount; ++a)
            fields.push_back(fmt_double(inst.scores[static_cast<size_t>(a)].f1));
        fields.push_back(algorithm_name(algorithm_from_index(inst.best)));
        if (full) {
            for (int a = 0; a < kAlgorithmCount; ++a) {
                fields.push_back(fmt_double(inst.scores[static_cast<size_t>(a)].precision));
                fields.push_back(fmt_double(inst.scores[static_cast<size_t>(a)].recall));
            }
        }
        out << csv::join_row(fields) << '\n';
    }
}

}  // namespace

void export_meta_csv(const MetaDataset& dataset, const std::string& path) {
    export_rows(dataset, path, false);
}

void export_meta_csv_full(const MetaDataset& dataset, const std::string& path) {
    export_rows(dataset, path, true);
}

MetaDataset load_meta_csv(const std::string& path) {
    auto records = csv::read_records(path);
    if (records.empty()) throw std::runtime_error("empty dataset CSV: " + path);
    const auto& header = records[0];
    auto col = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };

    MetaDataset ds;
    int c_hour = col("hour_of_day");
    ds.schema = c_hour >= 0 ? FeatureSchema::Online : FeatureSchema::Offline;

    int c_res = col("researcher_id"), c_doc = col("doc_id"), c_coll = col("collection_id");
    int c_chars = col("title_chars"), c_words = col("title_words"), c_best = col("best");
    if (c_chars < 0 || c_words < 0 || c_best < 0)
        throw std::runtime_error("dataset CSV missing required columns: " + path);

    std::array<int, kAlgorithmCount> c_f1{}, c_p{}, c_r{};
    bool has_f1 = true, has_pr = true;
    for (int a = 0; a < kAlgorithmCount; ++a) {
        std::string name = algorithm_name(algorithm_from_index(a));
        c_f1[static_cast<size_t>(a)] = col("f1_" + name);
        c_p[static_cast<size_t>(a)] = col("p_" + name);
        c_r[static_cast<size_t>(a)] = col("r_" + name);
        if (c_f1[static_cast<size_t>(a)] < 0) has_f1 = false;
        if (c_p[static_cast<size_t>(a)] < 0 || c_r[static_cast<size_t>(a)] < 0) has_pr = false;
    }

    for (size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        auto field = [&](int c) -> std::string {
            return (c >= 0 && static_cast<size_t>(c) < row.size()) ? row[c] : "";
        };
        MetaInstance inst;
        inst.researcher_id = field(c_res);
        inst.doc_id = field(c_doc);
        inst.features.collection_id = field(c_coll);
        inst.features.title_chars = std::stoi(field(c_chars));
        inst.features.title_words = std::stoi(field(c_words));
        if (c_hour >= 0) inst.features.hour_of_day = std::stoi(field(c_hour));
        inst.best = algorithm_index(algorithm_from_name(field(c_best)));
        inst.has_scores = has_f1;
        if (has_f1) {
            for (int a = 0; a < kAlgorithmCount; ++a) {
                auto& s = inst.scores[static_cast<size_t>(a)];
                s.f1 = std::stod(field(c_f1[static_cast<size_t>(a)]));
                if (has_pr) {
                    s.precision = std::stod(field(c_p[static_cast<size_t>(a)]));
                    s.recall = std::stod(field(c_r[static_cast<size_t>(a)]));
                }
            }
        }
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace metasel
