#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metasel/algorithm_id.hpp"
#include "metasel/stats.hpp"

namespace metasel {

enum class Arm { Meta, Random };

std::string arm_name(Arm arm);
Arm arm_from_name(const std::string& name);

// One delivered recommendation list and its click events. CTR accounting is
// per recommendation item: `delivered` items, `clicks.size()` clicked.
struct ImpressionRecord {
    std::string request_id;
    int64_t timestamp = 0;  // epoch seconds
    Arm arm = Arm::Random;
    AlgorithmId algorithm;  // algorithm that produced the list
    bool fallback = false;
    int delivered = 0;       // [0, 7]
    std::set<int> clicks;    // 1-based positions, subset of [1, delivered]
};

struct CtrCellKey {
    Arm arm;
    int algorithm_index;
    bool fallback;
    auto operator<=>(const CtrCellKey&) const = default;
};

struct CtrCell {
    uint64_t delivered = 0;
    uint64_t clicks = 0;
    double ctr() const {
        return delivered == 0 ? 0.0 : static_cast<double>(clicks) / static_cast<double>(delivered);
    }
};

struct CtrReport {
    std::map<CtrCellKey, CtrCell> cells;
    CtrCell meta_total;
    CtrCell random_total;
    bool meta_defined = false;    // false when the arm delivered nothing
    bool random_defined = false;
    Chi2Result chi2;              // arm x {clicked, not clicked}, item granularity
    bool test_skipped = false;
};

// Aggregates a log snapshot. `since` filters impressions by timestamp.
CtrReport ctr_report(const std::vector<ImpressionRecord>& records,
                     std::optional<int64_t> since = std::nullopt);

// Newline-delimited JSON event stream: impression events and click events
// keyed by request_id. Replaying a log prefix reproduces the exact report
// for that prefix.
std::string impression_event_json(const ImpressionRecord& record);
std::string click_event_json(const std::string& request_id, int position, int64_t timestamp);
std::vector<ImpressionRecord> load_impression_log(const std::string& path);

void write_ctr_csv(const CtrReport& report, const std::string& path);
void write_ctr_json(const CtrReport& report, const std::string& path);
std::string ctr_report_json_string(const CtrReport& report, int indent = -1);

}  // namespace metasel
