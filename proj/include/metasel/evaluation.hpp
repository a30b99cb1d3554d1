#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metasel/learners.hpp"
#include "metasel/meta_dataset.hpp"
#include "metasel/stats.hpp"

namespace metasel {

// Stratified k-fold assignment: per-label counts across folds differ by at
// most one; deterministic in the seed. Returns fold index per instance.
std::vector<int> stratified_kfold(const MetaDataset& dataset, int k, uint64_t seed);

// Uniform pick among the four algorithms, deterministic in (seed, index).
AlgorithmId random_select(uint64_t seed, uint64_t instance_index);

struct MetricRow {
    PRF1 metrics;
    size_t count = 0;  // instances contributing to the mean
};

struct ModelEvalResult {
    bool trained = false;
    std::string error;  // set when training failed
    MetricRow overall;
    std::array<MetricRow, kAlgorithmCount> per_algorithm;  // meta-selected rows
    PairedTTest t_test;  // per-algorithm F1 deltas, meta-selected vs arbitrary
};

struct EvalReport {
    uint64_t seed = 0;
    int folds = 0;
    std::vector<int> fold_assignment;
    std::array<MetricRow, kAlgorithmCount> arbitrary;  // fixed-algorithm baselines
    MetricRow oracle;
    MetricRow random_baseline;
    std::map<std::string, ModelEvalResult> models;  // key: model kind name
};

struct EvalConfig {
    std::vector<ModelKind> model_kinds{ModelKind::RandomForest, ModelKind::Gbm, ModelKind::Glm};
    int k_folds = 4;
    uint64_t seed = 0;
    RandomForestParams rf;
    GbmParams gbm;
    GlmParams glm;
    DecisionTreeParams tree;
};

// Cross-validated offline evaluation: per fold, trains each model on the
// remaining folds and scores the predicted algorithm on every validation
// instance; arbitrary/oracle/random rows are computed over all instances.
// All means are unweighted means over instances.
EvalReport run_offline_eval(const MetaDataset& dataset, const EvalConfig& config);

// Table-shaped CSV (one row per algorithm x selection mode plus the summary
// rows), JSON dump, and a long-format CSV for plotting.
void write_eval_csv(const EvalReport& report, const std::string& path);
void write_eval_json(const EvalReport& report, const std::string& path);
void write_plot_csv(const EvalReport& report, const std::string& path);

}  // namespace metasel
