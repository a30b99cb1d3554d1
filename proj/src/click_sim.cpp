#include "metasel/click_sim.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace metasel {

using nlohmann::json;

std::set<int> simulate_session(const std::vector<ServedItem>& items,
                               const std::set<std::string>& relevant,
                               const ClickModel& model, Rng& rng) {
    std::set<int> clicked;
    double decay = 1.0;
    for (size_t i = 0; i < items.size(); ++i) {
        bool is_relevant = relevant.count(items[i].doc_id) > 0;
        double p = (is_relevant ? model.base_click_prob : model.noise_click_prob) * decay;
        if (rng.bernoulli(p)) clicked.insert(static_cast<int>(i) + 1);
        decay *= model.position_decay;
    }
    return clicked;
}

SimReport run_online_sim(RecommendService& service, const CorpusStore& store,
                         const SimConfig& config) {
    // request population: every (researcher, relevant doc) pair
    struct Pair {
        const JudgmentSet* researcher;
        std::string doc_id;
    };
    std::vector<Pair> pairs;
    for (const auto& js : store.judgments())
        for (const auto& doc_id : js.relevant_doc_ids) pairs.push_back({&js, doc_id});
    if (pairs.empty() && config.n_requests > 0)
        throw std::runtime_error("simulation needs ingested judgments");

    SimReport report;
    report.planted_truth = config.planted_truth;

    // Deterministic virtual clock: requests arrive 37 s apart so hour_of_day
    // sweeps the full day across a long run.
    int64_t virtual_time = 1'700'000'000;
    service.set_clock([&virtual_time] { return virtual_time; });

    for (uint64_t i = 0; i < config.n_requests; ++i) {
        virtual_time += 37;
        // per-request RNG stream: aggregate counts do not depend on how the
        // driving loop is batched
        Rng rng = Rng::stream(config.seed, i);
        const Pair& pair = pairs[rng.uniform_int(pairs.size())];
        auto doc = store.get_document(pair.doc_id);
        if (!doc) continue;

        auto outcome = service.handle_recommend(doc->title, pair.doc_id, config.limit);
        if (outcome.status != ServiceStatus::Ok) {
            ++report.requests_failed;
            continue;
        }
        ++report.requests_issued;

        std::set<std::string> relevant(pair.researcher->relevant_doc_ids.begin(),
                                       pair.researcher->relevant_doc_ids.end());
        relevant.erase(pair.doc_id);

        ClickModel click = config.click;
        Rng click_rng = Rng::stream(config.click.seed ^ config.seed, i);
        for (int position : simulate_session(outcome.response.items, relevant, click, click_rng)) {
            auto ack = service.record_click(outcome.response.request_id, position);
            if (ack.status == ServiceStatus::Ok) ++report.clicks;
        }
    }

    report.ctr = service.report();
    return report;
}

void write_sim_report_json(const SimReport& report, const std::string& path) {
    json j;
    j["requests_issued"] = report.requests_issued;
    j["requests_failed"] = report.requests_failed;
    j["clicks"] = report.clicks;
    j["ctr"] = json::parse(ctr_report_json_string(report.ctr));
    j["planted_truth"] = report.planted_truth;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write sim report: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace metasel
