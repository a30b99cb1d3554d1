#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "metasel/rng.hpp"
#include "metasel/service.hpp"

namespace metasel {

// Independent-position Bernoulli click model: a relevant item at position i
// (1-based) is clicked with probability p * decay^(i-1), an irrelevant one
// with noise * decay^(i-1).
struct ClickModel {
    double base_click_prob = 0.2;
    double position_decay = 0.7;
    double noise_click_prob = 0.002;
    uint64_t seed = 0;
};

std::set<int> simulate_session(const std::vector<ServedItem>& items,
                               const std::set<std::string>& relevant,
                               const ClickModel& model, Rng& rng);

struct SimConfig {
    uint64_t n_requests = 0;
    ClickModel click;
    uint64_t seed = 0;
    int limit = 7;
    std::string planted_truth;  // optional regime note copied into the report
};

struct SimReport {
    uint64_t requests_issued = 0;
    uint64_t requests_failed = 0;
    uint64_t clicks = 0;
    CtrReport ctr;
    std::string planted_truth;
};

// Replays the online experiment through the service: requests are drawn
// uniformly from the (researcher, relevant doc) pairs, clicks are sampled
// from the model against the researcher's relevant set, and the final CTR
// report is returned. Deterministic in (service seed, sim seed).
SimReport run_online_sim(RecommendService& service, const CorpusStore& store,
                         const SimConfig& config);

void write_sim_report_json(const SimReport& report, const std::string& path);

}  // namespace metasel
