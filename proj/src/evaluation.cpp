#include "metasel/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "metasel/csv.hpp"
#include "metasel/rng.hpp"

namespace metasel {

using nlohmann::json;

std::vector<int> stratified_kfold(const MetaDataset& dataset, int k, uint64_t seed) {
    size_t n = dataset.instances.size();
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    if (n < static_cast<size_t>(k))
        throw std::invalid_argument("k-fold needs at least k instances");

    // Group instance indexes by label, shuffle each group, then deal them
    // round-robin with a single rolling fold counter so per-label and total
    // fold sizes both differ by at most one.
    std::array<std::vector<size_t>, kAlgorithmCount> by_label;
    for (size_t i = 0; i < n; ++i)
        by_label[static_cast<size_t>(dataset.instances[i].best)].push_back(i);

    std::vector<int> assignment(n, 0);
    int fold = 0;
    for (int label = 0; label < kAlgorithmCount; ++label) {
        auto& group = by_label[static_cast<size_t>(label)];
        Rng rng = Rng::stream(seed, static_cast<uint64_t>(label));
        rng.shuffle(group);
        for (size_t idx : group) {
            assignment[idx] = fold;
            fold = (fold + 1) % k;
        }
    }
    return assignment;
}

AlgorithmId random_select(uint64_t seed, uint64_t instance_index) {
    Rng rng = Rng::stream(seed, instance_index);
    return algorithm_from_index(static_cast<int>(rng.uniform_int(kAlgorithmCount)));
}

namespace {

struct Accumulator {
    double p = 0.0, r = 0.0, f1 = 0.0;
    size_t count = 0;
    std::vector<double> f1_values;

    void add(const PRF1& m) {
        p += m.precision;
        r += m.recall;
        f1 += m.f1;
        f1_values.push_back(m.f1);
        ++count;
    }

    MetricRow row() const {
        MetricRow out;
        out.count = count;
        if (count > 0) {
            out.metrics.precision = p / static_cast<double>(count);
            out.metrics.recall = r / static_cast<double>(count);
            out.metrics.f1 = f1 / static_cast<double>(count);
        }
        return out;
    }
};

TrainedModel train_kind(ModelKind kind, const EncodedMatrix& data, const EvalConfig& cfg) {
    switch (kind) {
        case ModelKind::DecisionTree: return train_decision_tree_model(data, cfg.tree);
        case ModelKind::RandomForest: {
            RandomForestParams p = cfg.rf;
            p.seed = cfg.seed;
            return train_random_forest(data, p);
        }
        case ModelKind::Gbm: {
            GbmParams p = cfg.gbm;
            p.seed = cfg.seed;
            return train_gbm(data, p);
        }
        default: return train_glm(data, cfg.glm);
    }
}

}  // namespace

EvalReport run_offline_eval(const MetaDataset& dataset, const EvalConfig& config) {
    if (dataset.instances.empty()) throw std::invalid_argument("empty dataset");
    for (const auto& inst : dataset.instances)
        if (!inst.has_scores)
            throw std::invalid_argument("offline evaluation needs per-algorithm scores");

    EvalReport report;
    report.seed = config.seed;
    report.folds = config.k_folds;
    report.fold_assignment = stratified_kfold(dataset, config.k_folds, config.seed);

    const auto& instances = dataset.instances;
    size_t n = instances.size();

    Accumulator oracle_acc, random_acc;
    std::array<Accumulator, kAlgorithmCount> arbitrary_acc;
    for (size_t i = 0; i < n; ++i) {
        const auto& inst = instances[i];
        oracle_acc.add(inst.scores[static_cast<size_t>(inst.best)]);
        AlgorithmId pick = random_select(config.seed, i);
        random_acc.add(inst.scores[static_cast<size_t>(algorithm_index(pick))]);
        for (int a = 0; a < kAlgorithmCount; ++a)
            arbitrary_acc[static_cast<size_t>(a)].add(inst.scores[static_cast<size_t>(a)]);
    }
    report.oracle = oracle_acc.row();
    report.random_baseline = random_acc.row();
    for (int a = 0; a < kAlgorithmCount; ++a)
        report.arbitrary[static_cast<size_t>(a)] = arbitrary_acc[static_cast<size_t>(a)].row();

    for (ModelKind kind : config.model_kinds) {
        ModelEvalResult result;
        Accumulator overall;
        std::array<Accumulator, kAlgorithmCount> per_alg;

        bool failed = false;
        for (int fold = 0; fold < config.k_folds && !failed; ++fold) {
            MetaDataset train_split;
            train_split.schema = dataset.schema;
            std::vector<size_t> validation;
            for (size_t i = 0; i < n; ++i) {
                if (report.fold_assignment[i] == fold) validation.push_back(i);
                else train_split.instances.push_back(instances[i]);
            }
            TrainedModel model;
            try {
                model = train_kind(kind, encode_dataset(train_split), config);
            } catch (const std::exception& e) {
                result.trained = false;
                result.error = e.what();
                failed = true;
                break;
            }
            for (size_t i : validation) {
                int predicted = model.predict(instances[i].features).best;
                const PRF1& score = instances[i].scores[static_cast<size_t>(predicted)];
                overall.add(score);
                per_alg[static_cast<size_t>(predicted)].add(score);
            }
        }
        if (!failed) {
            result.trained = true;
            result.overall = overall.row();
            std::vector<double> meta_f1, arb_f1;
            for (int a = 0; a < kAlgorithmCount; ++a) {
                result.per_algorithm[static_cast<size_t>(a)] =
                    per_alg[static_cast<size_t>(a)].row();
                meta_f1.push_back(result.per_algorithm[static_cast<size_t>(a)].metrics.f1);
                arb_f1.push_back(report.arbitrary[static_cast<size_t>(a)].metrics.f1);
            }
            result.t_test = paired_t_test(meta_f1, arb_f1);
        }
        report.models[model_kind_name(kind)] = std::move(result);
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void append_row(std::string& out, const std::string& label, const std::string& mode,
                const MetricRow& row) {
    out += csv::join_row({label, mode, fmt(row.metrics.precision), fmt(row.metrics.recall),
                          fmt(row.metrics.f1), std::to_string(row.count)});
    out += '\n';
}

}  // namespace

void write_eval_csv(const EvalReport& report, const std::string& path) {
    std::string out = "algorithm,selection,precision,recall,f1,instances\n";
    for (int a = 0; a < kAlgorithmCount; ++a) {
        std::string name = algorithm_name(algorithm_from_index(a));
        append_row(out, name, "arbitrary", report.arbitrary[static_cast<size_t>(a)]);
        for (const auto& [kind, result] : report.models) {
            if (!result.trained) continue;
            append_row(out, name, kind, result.per_algorithm[static_cast<size_t>(a)]);
        }
    }
    append_row(out, "oracle", "oracle", report.oracle);
    append_row(out, "random", "random", report.random_baseline);
    for (const auto& [kind, result] : report.models) {
        if (!result.trained) continue;
        append_row(out, "overall", kind, result.overall);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write eval CSV: " + path);
    f << out;
}

namespace {

json row_to_json(const MetricRow& row) {
    return {{"precision", row.metrics.precision},
            {"recall", row.metrics.recall},
            {"f1", row.metrics.f1},
            {"instances", row.count}};
}

}  // namespace

void write_eval_json(const EvalReport& report, const std::string& path) {
    json j;
    j["seed"] = report.seed;
    j["folds"] = report.folds;
    j["fold_assignment"] = report.fold_assignment;
    json arb = json::object();
    for (int a = 0; a < kAlgorithmCount; ++a)
        arb[algorithm_name(algorithm_from_index(a))] =
            row_to_json(report.arbitrary[static_cast<size_t>(a)]);
    j["arbitrary"] = std::move(arb);
    j["oracle"] = row_to_json(report.oracle);
    j["random"] = row_to_json(report.random_baseline);
    json models = json::object();
    for (const auto& [kind, result] : report.models) {
        json m;
        m["trained"] = result.trained;
        if (!result.trained) {
            m["error"] = result.error;
        } else {
            m["overall"] = row_to_json(result.overall);
            json per = json::object();
            for (int a = 0; a < kAlgorithmCount; ++a)
                per[algorithm_name(algorithm_from_index(a))] =
                    row_to_json(result.per_algorithm[static_cast<size_t>(a)]);
            m["per_algorithm"] = std::move(per);
            m["t_test"] = {{"t", result.t_test.t},
                           {"p", result.t_test.p},
                           {"dof", result.t_test.dof},
                           {"valid", result.t_test.valid}};
        }
        models[kind] = std::move(m);
    }
    j["models"] = std::move(models);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write eval JSON: " + path);
    f << j.dump(2) << '\n';
}

void write_plot_csv(const EvalReport& report, const std::string& path) {
    std::string out = "algorithm,selection,metric,value\n";
    auto emit = [&](const std::string& alg, const std::string& sel, const MetricRow& row) {
        out += csv::join_row({alg, sel, "precision", fmt(row.metrics.precision)}) + "\n";
        out += csv::join_row({alg, sel, "recall", fmt(row.metrics.recall)}) + "\n";
        out += csv::join_row({alg, sel, "f1", fmt(row.metrics.f1)}) + "\n";
    };
    for (int a = 0; a < kAlgorithmCount; ++a) {
        std::string name = algorithm_name(algorithm_from_index(a));
        emit(name, "arbitrary", report.arbitrary[static_cast<size_t>(a)]);
        for (const auto& [kind, result] : report.models)
            if (result.trained) emit(name, kind, result.per_algorithm[static_cast<size_t>(a)]);
    }
    emit("oracle", "oracle", report.oracle);
    emit("random", "random", report.random_baseline);
    for (const auto& [kind, result] : report.models)
        if (result.trained) emit("overall", kind, result.overall);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write plot CSV: " + path);
    f << out;
}

}  // namespace metasel
