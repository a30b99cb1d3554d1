#include "metasel/corpus_store.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "metasel/csv.hpp"
#include "metasel/errors.hpp"

namespace metasel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Returns nullopt for rows that fail validation (missing doc_id/title).
std::optional<Document> document_from_json(const json& j) {
    if (!j.is_object()) return std::nullopt;
    Document d;
    if (!j.contains("doc_id") || !j["doc_id"].is_string()) return std::nullopt;
    d.doc_id = j["doc_id"].get<std::string>();
    if (d.doc_id.empty()) return std::nullopt;
    if (!j.contains("title") || !j["title"].is_string()) return std::nullopt;
    d.title = j["title"].get<std::string>();
    if (trim(d.title).empty()) return std::nullopt;
    if (j.contains("abstract") && j["abstract"].is_string())
        d.abstract_text = j["abstract"].get<std::string>();
    if (j.contains("collection_id") && j["collection_id"].is_string())
        d.collection_id = j["collection_id"].get<std::string>();
    return d;
}

}  // namespace

CorpusStats CorpusStore::ingest_corpus(const std::string& path, CorpusFormat format) {
    std::vector<Document> rows;
    size_t rejected = 0;

    if (format == CorpusFormat::Jsonl) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open corpus file: " + path);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (trim(line).empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw IngestError(std::string("malformed JSONL: ") + e.what(), lineno);
            }
            auto d = document_from_json(j);
            if (d) rows.push_back(std::move(*d));
            else ++rejected;
        }
    } else {
        auto records = csv::read_records(path);
        if (records.empty()) {
            // empty file: zero documents, not an error
        } else {
            const auto& header = records[0];
            auto col = [&](const std::string& name) -> int {
                for (size_t i = 0; i < header.size(); ++i)
                    if (header[i] == name) return static_cast<int>(i);
                return -1;
            };
            int c_id = col("doc_id"), c_title = col("title");
            int c_abs = col("abstract"), c_coll = col("collection_id");
            if (c_id < 0 || c_title < 0)
                throw IngestError("corpus CSV header must contain doc_id and title", 1);
            for (size_t r = 1; r < records.size(); ++r) {
                const auto& row = records[r];
                auto field = [&](int c) -> std::string {
                    return (c >= 0 && static_cast<size_t>(c) < row.size()) ? row[c] : "";
                };
                Document d;
                d.doc_id = field(c_id);
                d.title = field(c_title);
                if (d.doc_id.empty() || trim(d.title).empty()) {
                    ++rejected;
                    continue;
                }
                std::string a = field(c_abs);
                if (!a.empty()) d.abstract_text = a;
                d.collection_id = field(c_coll);
                rows.push_back(std::move(d));
            }
        }
    }

    docs_.clear();
    id_to_index_.clear();
    judgments_.clear();
    judgment_stats_ = {};
    for (auto& d : rows) {
        if (id_to_index_.count(d.doc_id)) {
            ++rejected;  // duplicate id: first row wins
            continue;
        }
        id_to_index_[d.doc_id] = docs_.size();
        docs_.push_back(std::move(d));
    }
    rejected_rows_ = rejected;
    return corpus_stats();
}

CorpusStats CorpusStore::corpus_stats() const {
    CorpusStats s;
    s.doc_count = docs_.size();
    std::set<std::string> collections;
    for (const auto& d : docs_) {
        if (d.abstract_text) ++s.abstract_count;
        collections.insert(d.collection_id);
    }
    s.collection_count = docs_.empty() ? 0 : collections.size();
    s.rejected_count = rejected_rows_;
    return s;
}

JudgmentStats CorpusStore::ingest_judgments(const std::string& path) {
    auto records = csv::read_records(path);
    JudgmentStats stats;

    std::vector<std::pair<std::string, std::string>> pairs;
    size_t start = 0;
    if (!records.empty() && records[0].size() >= 2 && records[0][0] == "researcher_id")
        start = 1;
    for (size_t r = start; r < records.size(); ++r) {
        const auto& row = records[r];
        if (row.size() < 2) throw IngestError("judgments row needs researcher_id,doc_id", r + 1);
        if (row[0].empty() && row[1].empty()) continue;
        pairs.emplace_back(row[0], row[1]);
    }

    std::map<std::string, std::set<std::string>> by_researcher;
    for (const auto& [researcher, doc] : pairs) {
        if (!id_to_index_.count(doc)) {
            ++stats.dropped_unresolvable;
            continue;
        }
        by_researcher[researcher].insert(doc);
    }

    judgments_.clear();
    for (const auto& [researcher, docs] : by_researcher) {
        JudgmentSet js;
        js.researcher_id = researcher;
        js.relevant_doc_ids.assign(docs.begin(), docs.end());
        stats.pair_count += js.relevant_doc_ids.size();
        judgments_.push_back(std::move(js));
    }
    stats.researcher_count = judgments_.size();
    judgment_stats_ = stats;
    return stats;
}

std::optional<Document> CorpusStore::get_document(const std::string& doc_id) const {
    auto it = id_to_index_.find(doc_id);
    if (it == id_to_index_.end()) return std::nullopt;
    return docs_[it->second];
}

std::optional<size_t> CorpusStore::doc_index(const std::string& doc_id) const {
    auto it = id_to_index_.find(doc_id);
    if (it == id_to_index_.end()) return std::nullopt;
    return it->second;
}

void CorpusStore::export_corpus_jsonl(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    for (const auto& d : docs_) {
        json j;
        j["doc_id"] = d.doc_id;
        j["title"] = d.title;
        if (d.abstract_text) j["abstract"] = *d.abstract_text;
        else j["abstract"] = nullptr;
        j["collection_id"] = d.collection_id;
        out << j.dump() << '\n';
    }
}

void CorpusStore::export_judgments_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write judgments file: " + path);
    out << "researcher_id,doc_id\n";
    for (const auto& js : judgments_)
        for (const auto& doc : js.relevant_doc_ids)
            out << csv::join_row({js.researcher_id, doc}) << '\n';
}

void CorpusStore::save(const std::string& dir) const {
    fs::create_directories(dir);
    export_corpus_jsonl((fs::path(dir) / "corpus.jsonl").string());
    export_judgments_csv((fs::path(dir) / "judgments.csv").string());
    auto cs = corpus_stats();
    json manifest;
    manifest["version"] = 1;
    manifest["doc_count"] = cs.doc_count;
    manifest["abstract_count"] = cs.abstract_count;
    manifest["collection_count"] = cs.collection_count;
    manifest["researcher_count"] = judgment_stats_.researcher_count;
    manifest["pair_count"] = judgment_stats_.pair_count;
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
}

CorpusStore CorpusStore::load(const std::string& dir) {
    CorpusStore store;
    auto corpus_path = fs::path(dir) / "corpus.jsonl";
    if (!fs::exists(corpus_path))
        throw std::runtime_error("store directory has no corpus.jsonl: " + dir);
    store.ingest_corpus(corpus_path.string(), CorpusFormat::Jsonl);
    auto judgments_path = fs::path(dir) / "judgments.csv";
    if (fs::exists(judgments_path)) store.ingest_judgments(judgments_path.string());
    return store;
}

}  // namespace metasel
