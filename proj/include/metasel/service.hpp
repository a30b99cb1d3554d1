#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "metasel/corpus_store.hpp"
#include "metasel/impressions.hpp"
#include "metasel/learners.hpp"
#include "metasel/retrieval.hpp"
#include "metasel/rng.hpp"

namespace metasel {

struct ServiceConfig {
    uint64_t seed = 0;
    double arm_split = 0.5;  // probability of the meta arm
    int max_items = 7;
    int tz_offset_minutes = 0;  // hour_of_day derivation
    std::string log_path;       // empty = in-memory only
    MltParams mlt;
};

struct ServedItem {
    std::string doc_id;
    std::string title;
    int position = 0;  // 1-based
};

struct RecommendResponse {
    std::string request_id;
    Arm arm = Arm::Random;
    AlgorithmId algorithm;  // algorithm that produced the list
    bool fallback = false;
    std::vector<ServedItem> items;
};

enum class ServiceStatus { Ok, EmptyQuery, NoModel, NotFound, BadRequest };

struct ClickOutcome {
    ServiceStatus status = ServiceStatus::Ok;
    std::string message;
};

// The online recommender: routes each request to the meta or random arm,
// retrieves, and logs one impression per delivered list. Index and model are
// immutable after load; the impression log is the only mutable state and its
// writes are serialized.
class RecommendService {
public:
    RecommendService(const CorpusStore& store, const IndexPair& index,
                     std::optional<TrainedModel> model, const ServiceConfig& config);

    // Clock injection point; defaults to the wall clock. Simulations install
    // a deterministic clock.
    void set_clock(std::function<int64_t()> clock) { clock_ = std::move(clock); }

    struct RecommendOutcome {
        ServiceStatus status = ServiceStatus::Ok;
        std::string message;
        RecommendResponse response;
    };

    RecommendOutcome handle_recommend(const std::string& title,
                                      const std::optional<std::string>& doc_id, int limit);
    ClickOutcome record_click(const std::string& request_id, int position);

    CtrReport report(std::optional<int64_t> since = std::nullopt) const;
    std::vector<ImpressionRecord> log_snapshot() const;
    uint64_t click_rejects() const { return click_rejects_; }

    // Clicked impressions only: a dataset-compatible CSV with the online
    // schema (title_chars, title_words, hour_of_day) labeled by the
    // algorithm that generated the list.
    void export_clicked_csv(const std::string& path) const;

    int hour_of_day(int64_t timestamp) const;

private:
    const CorpusStore& store_;
    const IndexPair& index_;
    std::optional<TrainedModel> model_;
    ServiceConfig config_;
    std::function<int64_t()> clock_;

    mutable std::mutex mutex_;
    Rng arm_rng_;
    uint64_t next_request_ = 0;
    std::vector<ImpressionRecord> records_;
    std::unordered_map<std::string, size_t> record_by_id_;
    struct ClickFeatureRow {
        int title_chars;
        int title_words;
        int hour;
        int algorithm;
        std::string request_id;
    };
    std::vector<ClickFeatureRow> feature_rows_;  // parallel to records_
    std::unique_ptr<std::ofstream> log_file_;
    uint64_t click_rejects_ = 0;
};

}  // namespace metasel
