#include "metasel/service.hpp"

#include <chrono>
#include <fstream>

#include "metasel/csv.hpp"
#include "metasel/errors.hpp"
#include "metasel/meta_dataset.hpp"

namespace metasel {

RecommendService::RecommendService(const CorpusStore& store, const IndexPair& index,
                                   std::optional<TrainedModel> model,
                                   const ServiceConfig& config)
    : store_(store), index_(index), model_(std::move(model)), config_(config),
      arm_rng_(0) {
    arm_rng_ = Rng::stream(config.seed, 0);
    clock_ = [] {
        return static_cast<int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count());
    };
    if (!config_.log_path.empty()) {
        log_file_ = std::make_unique<std::ofstream>(config_.log_path,
                                                    std::ios::binary | std::ios::app);
        if (!*log_file_)
            throw std::runtime_error("cannot open impression log for append: " +
                                     config_.log_path);
    }
}

int RecommendService::hour_of_day(int64_t timestamp) const {
    int64_t shifted = timestamp + static_cast<int64_t>(config_.tz_offset_minutes) * 60;
    int64_t hour = (shifted / 3600) % 24;
    if (hour < 0) hour += 24;
    return static_cast<int>(hour);
}

RecommendService::RecommendOutcome RecommendService::handle_recommend(
    const std::string& title, const std::optional<std::string>& doc_id, int limit) {
    RecommendOutcome out;
    if (!model_) {
        out.status = ServiceStatus::NoModel;
        out.message = "no model loaded";
        return out;
    }
    if (limit < 1) {
        out.status = ServiceStatus::BadRequest;
        out.message = "limit must be >= 1";
        return out;
    }
    int k = std::min(limit, config_.max_items);

    std::lock_guard<std::mutex> lock(mutex_);
    int64_t now = clock_();

    // Feature source: the stored document when known, else a title-derived
    // surrogate with an unknown collection.
    Document subject;
    if (doc_id) {
        if (auto stored = store_.get_document(*doc_id)) subject = *stored;
    }
    if (subject.doc_id.empty()) {
        subject.title = title;
    }
    std::string query_title = title.empty() ? subject.title : title;

    Arm arm = arm_rng_.bernoulli(config_.arm_split) ? Arm::Meta : Arm::Random;
    AlgorithmId selected;
    FeatureVector features;
    if (arm == Arm::Meta) {
        std::optional<int> hour;
        if (model_->encoder.schema == FeatureSchema::Online) hour = hour_of_day(now);
        features = extract_meta_features(subject, hour);
        selected = algorithm_from_index(model_->predict(features).best);
    } else {
        selected = algorithm_from_index(
            static_cast<int>(arm_rng_.uniform_int(kAlgorithmCount)));
        features = extract_meta_features(subject);
    }

    RecommendRequest request;
    request.doc_id = doc_id;
    request.title = query_title;
    RecommendResult result;
    try {
        result = recommend(store_, index_, request, selected, k, config_.mlt);
    } catch (const EmptyQueryError& e) {
        out.status = ServiceStatus::EmptyQuery;
        out.message = e.what();
        return out;
    }

    ImpressionRecord rec;
    rec.request_id = "r" + std::to_string(++next_request_);
    rec.timestamp = now;
    rec.arm = arm;
    rec.algorithm = result.executed;
    rec.fallback = result.fallback;
    rec.delivered = static_cast<int>(result.ranked.entries.size());

    out.response.request_id = rec.request_id;
    out.response.arm = arm;
    out.response.algorithm = result.executed;
    out.response.fallback = result.fallback;
    int position = 0;
    for (const auto& entry : result.ranked.entries) {
        auto doc = store_.get_document(entry.doc_id);
        out.response.items.push_back({entry.doc_id, doc ? doc->title : "", ++position});
    }

    record_by_id_[rec.request_id] = records_.size();
    if (log_file_) {
        *log_file_ << impression_event_json(rec) << '\n';
        log_file_->flush();
    }
    feature_rows_.push_back({count_unicode_chars(subject.title), count_words(subject.title),
                             hour_of_day(now), algorithm_index(result.executed),
                             rec.request_id});
    records_.push_back(std::move(rec));
    return out;
}

ClickOutcome RecommendService::record_click(const std::string& request_id, int position) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = record_by_id_.find(request_id);
    if (it == record_by_id_.end()) {
        ++click_rejects_;
        return {ServiceStatus::NotFound, "unknown request_id"};
    }
    ImpressionRecord& rec = records_[it->second];
    if (position < 1 || position > rec.delivered) {
        ++click_rejects_;
        return {ServiceStatus::BadRequest, "position outside delivered range"};
    }
    // idempotent: re-click of the same position is one click
    if (rec.clicks.insert(position).second && log_file_) {
        *log_file_ << click_event_json(request_id, position, clock_()) << '\n';
        log_file_->flush();
    }
    return {ServiceStatus::Ok, ""};
}

CtrReport RecommendService::report(std::optional<int64_t> since) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return ctr_report(records_, since);
}

std::vector<ImpressionRecord> RecommendService::log_snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return records_;
}

void RecommendService::export_clicked_csv(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write click export: " + path);
    out << "request_id,title_chars,title_words,hour_of_day,best\n";
    for (size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].clicks.empty()) continue;
        const auto& row = feature_rows_[i];
        out << csv::join_row({row.request_id, std::to_string(row.title_chars),
                              std::to_string(row.title_words), std::to_string(row.hour),
                              algorithm_name(algorithm_from_index(row.algorithm))})
            << '\n';
    }
}

}  // namespace metasel
