#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metasel/algorithm_id.hpp"
#include "metasel/corpus_store.hpp"
#include "metasel/metrics.hpp"
#include "metasel/retrieval.hpp"

namespace metasel {

// Which meta-features a dataset (and any model trained on it) carries.
// Offline: collection id + title lengths. Online: title lengths + hour of
// the day the request arrived.
enum class FeatureSchema { Offline, Online };

std::string schema_name(FeatureSchema s);
FeatureSchema schema_from_name(const std::string& name);

struct FeatureVector {
    std::string collection_id;
    int title_chars = 0;  // Unicode scalar values in the raw title, spaces included
    int title_words = 0;  // whitespace-separated runs
    std::optional<int> hour_of_day;  // [0, 23], present for the online schema
};

// Number of Unicode scalar values in a UTF-8 string.
int count_unicode_chars(const std::string& s);
// Number of whitespace-separated runs.
int count_words(const std::string& s);

// Derives features from a document title. `hour_of_day` is filled only when
// a timestamp is supplied.
FeatureVector extract_meta_features(const Document& doc,
                                    std::optional<int> hour_of_day = std::nullopt);

// One training row: features, per-algorithm retrieval scores, and the
// best-algorithm label (argmax F1; ties broken by tie_break_rank).
struct MetaInstance {
    std::string researcher_id;
    std::string doc_id;
    FeatureVector features;
    std::array<PRF1, kAlgorithmCount> scores{};  // indexed by algorithm_index
    int best = 0;                                // class index of the best algorithm
    bool has_scores = true;  // online click exports carry labels but no scores
};

struct MetaDataset {
    FeatureSchema schema = FeatureSchema::Offline;
    std::vector<MetaInstance> instances;
    size_t dropped_rows = 0;
};

// Labels one (researcher, doc) pair: runs all four algorithms with the
// querying document excluded, scores them against the researcher's remaining
// relevant set, and picks the best. Returns nullopt when the instance is
// dropped (empty relevant set after exclusion, or all algorithms returned
// nothing).
std::optional<MetaInstance> label_instance(const CorpusStore& store,
                                           const IndexPair& index,
                                           const JudgmentSet& researcher,
                                           const std::string& doc_id, int k,
                                           const MltParams& params = {});

// One labeling attempt per (researcher, relevant doc) pair, in deterministic
// (researcher_id, doc_id) order.
MetaDataset build_meta_dataset(const CorpusStore& store, const IndexPair& index,
                               int k, const MltParams& params = {});

// Table-1-shaped CSV: the fixed 10 spec columns.
void export_meta_csv(const MetaDataset& dataset, const std::string& path);
// Same rows with per-algorithm precision/recall columns appended after
// `best`; this is the file the offline evaluator consumes.
void export_meta_csv_full(const MetaDataset& dataset, const std::string& path);
// Accepts either export (and online click exports); precision/recall are
// zero-filled when the file carries only F1 columns.
MetaDataset load_meta_csv(const std::string& path);

}  // namespace metasel
