#include "metasel/impressions.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "metasel/csv.hpp"

namespace metasel {

using nlohmann::json;

std::string arm_name(Arm arm) { return arm == Arm::Meta ? "meta" : "random"; }

Arm arm_from_name(const std::string& name) {
    if (name == "meta") return Arm::Meta;
    if (name == "random") return Arm::Random;
    throw std::runtime_error("unknown arm: " + name);
}

CtrReport ctr_report(const std::vector<ImpressionRecord>& records,
                     std::optional<int64_t> since) {
    CtrReport report;
    for (const auto& rec : records) {
        if (since && rec.timestamp < *since) continue;
        CtrCellKey key{rec.arm, algorithm_index(rec.algorithm), rec.fallback};
        auto& cell = report.cells[key];
        cell.delivered += static_cast<uint64_t>(rec.delivered);
        cell.clicks += rec.clicks.size();
        auto& total = rec.arm == Arm::Meta ? report.meta_total : report.random_total;
        total.delivered += static_cast<uint64_t>(rec.delivered);
        total.clicks += rec.clicks.size();
    }
    report.meta_defined = report.meta_total.delivered > 0;
    report.random_defined = report.random_total.delivered > 0;
    if (report.meta_defined && report.random_defined) {
        report.chi2 = chi2_2x2(report.meta_total.clicks,
                               report.meta_total.delivered - report.meta_total.clicks,
                               report.random_total.clicks,
                               report.random_total.delivered - report.random_total.clicks);
    } else {
        report.test_skipped = true;
    }
    return report;
}

std::string impression_event_json(const ImpressionRecord& record) {
    json j;
    j["type"] = "impression";
    j["request_id"] = record.request_id;
    j["ts"] = record.timestamp;
    j["arm"] = arm_name(record.arm);
    j["algorithm"] = algorithm_name(record.algorithm);
    j["fallback"] = record.fallback;
    j["delivered"] = record.delivered;
    return j.dump();
}

std::string click_event_json(const std::string& request_id, int position, int64_t timestamp) {
    json j;
    j["type"] = "click";
    j["request_id"] = request_id;
    j["position"] = position;
    j["ts"] = timestamp;
    return j.dump();
}

std::vector<ImpressionRecord> load_impression_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open impression log: " + path);

    std::vector<ImpressionRecord> records;
    std::map<std::string, size_t> by_id;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line);
        std::string type = j.at("type").get<std::string>();
        if (type == "impression") {
            ImpressionRecord rec;
            rec.request_id = j.at("request_id").get<std::string>();
            rec.timestamp = j.at("ts").get<int64_t>();
            rec.arm = arm_from_name(j.at("arm").get<std::string>());
            rec.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
            rec.fallback = j.at("fallback").get<bool>();
            rec.delivered = j.at("delivered").get<int>();
            by_id[rec.request_id] = records.size();
            records.push_back(std::move(rec));
        } else if (type == "click") {
            auto it = by_id.find(j.at("request_id").get<std::string>());
            if (it == by_id.end())
                throw std::runtime_error("click for unknown impression at log line " +
                                         std::to_string(lineno));
            int position = j.at("position").get<int>();
            records[it->second].clicks.insert(position);
        } else {
            throw std::runtime_error("unknown event type at log line " + std::to_string(lineno));
        }
    }
    return records;
}

void write_ctr_csv(const CtrReport& report, const std::string& path) {
    std::string out = "arm,algorithm,fallback,delivered,clicks,ctr\n";
    auto fmt = [](double v) {
        char buf[64];
        snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
    };
    for (const auto& [key, cell] : report.cells) {
        out += csv::join_row({arm_name(key.arm),
                              algorithm_name(algorithm_from_index(key.algorithm_index)),
                              key.fallback ? "true" : "false",
                              std::to_string(cell.delivered), std::to_string(cell.clicks),
                              fmt(cell.ctr())});
        out += '\n';
    }
    out += csv::join_row({"meta", "all", "", std::to_string(report.meta_total.delivered),
                          std::to_string(report.meta_total.clicks),
                          report.meta_defined ? fmt(report.meta_total.ctr()) : "undefined"});
    out += '\n';
    out += csv::join_row({"random", "all", "", std::to_string(report.random_total.delivered),
                          std::to_string(report.random_total.clicks),
                          report.random_defined ? fmt(report.random_total.ctr()) : "undefined"});
    out += '\n';
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write CTR CSV: " + path);
    f << out;
}

namespace {

json cell_json(const CtrCell& cell, bool defined) {
    json j;
    j["delivered"] = cell.delivered;
    j["clicks"] = cell.clicks;
    if (defined) j["ctr"] = cell.ctr();
    else j["ctr"] = nullptr;
    return j;
}

json ctr_report_to_json(const CtrReport& report) {
    json j;
    json cells = json::array();
    for (const auto& [key, cell] : report.cells) {
        json c = cell_json(cell, cell.delivered > 0);
        c["arm"] = arm_name(key.arm);
        c["algorithm"] = algorithm_name(algorithm_from_index(key.algorithm_index));
        c["fallback"] = key.fallback;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    j["meta_total"] = cell_json(report.meta_total, report.meta_defined);
    j["random_total"] = cell_json(report.random_total, report.random_defined);
    j["chi2"] = {{"statistic", report.chi2.statistic},
                 {"p", report.chi2.p},
                 {"valid", report.chi2.valid},
                 {"skipped", report.test_skipped}};
    return j;
}

}  // namespace

std::string ctr_report_json_string(const CtrReport& report, int indent) {
    return ctr_report_to_json(report).dump(indent);
}

void write_ctr_json(const CtrReport& report, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write CTR JSON: " + path);
    f << ctr_report_json_string(report, 2) << '\n';
}

}  // namespace metasel
