#include <fstream>

#include <nlohmann/json.hpp>

#include "metasel/learners.hpp"

namespace metasel {

using nlohmann::json;

namespace {

json nodes_to_json(const std::vector<TreeNode>& nodes, bool classification) {
    json arr = json::array();
    for (const auto& n : nodes) {
        json j;
        j["leaf"] = n.leaf;
        if (!n.leaf) {
            j["feature"] = n.feature;
            j["threshold"] = n.threshold;
            j["left"] = n.left;
            j["right"] = n.right;
        }
        if (classification) j["counts"] = n.class_counts;
        else j["value"] = n.value;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<TreeNode> nodes_from_json(const json& arr, bool classification) {
    std::vector<TreeNode> nodes;
    for (const auto& j : arr) {
        TreeNode n;
        n.leaf = j.at("leaf").get<bool>();
        if (!n.leaf) {
            n.feature = j.at("feature").get<int>();
            n.threshold = j.at("threshold").get<double>();
            n.left = j.at("left").get<int>();
            n.right = j.at("right").get<int>();
        }
        if (classification) n.class_counts = j.at("counts").get<std::array<int, kAlgorithmCount>>();
        else n.value = j.at("value").get<double>();
        nodes.push_back(n);
    }
    return nodes;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
    if (rows.empty()) return {};
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows[0].size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>();
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = arr[static_cast<size_t>(i)].get<double>();
    return v;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    json j;
    j["version"] = 1;
    j["kind"] = model_kind_name(model.kind);
    j["seed"] = model.seed;
    j["schema"] = {{"name", schema_name(model.encoder.schema)},
                   {"collection_categories", model.encoder.collection_categories}};

    switch (model.kind) {
        case ModelKind::DecisionTree:
            j["params"] = {{"max_depth", model.tree_params.max_depth},
                           {"min_leaf", model.tree_params.min_leaf}};
            j["tree"] = nodes_to_json(model.trees[0].nodes, true);
            break;
        case ModelKind::RandomForest: {
            j["params"] = {{"n_trees", model.forest_params.n_trees},
                           {"max_depth", model.forest_params.max_depth},
                           {"min_leaf", model.forest_params.min_leaf},
                           {"features_per_split", model.forest_params.features_per_split}};
            json trees = json::array();
            for (const auto& t : model.trees) trees.push_back(nodes_to_json(t.nodes, true));
            j["trees"] = std::move(trees);
            break;
        }
        case ModelKind::Gbm: {
            j["params"] = {{"n_rounds", model.gbm_params.n_rounds},
                           {"learning_rate", model.gbm_params.learning_rate},
                           {"max_depth", model.gbm_params.max_depth}};
            json rounds = json::array();
            for (const auto& round : model.gbm_rounds) {
                json per_class = json::array();
                for (const auto& t : round) per_class.push_back(nodes_to_json(t.nodes, false));
                rounds.push_back(std::move(per_class));
            }
            j["rounds"] = std::move(rounds);
            j["loss_trace"] = model.gbm_loss_trace;
            break;
        }
        case ModelKind::Glm:
            j["params"] = {{"l2", model.glm_params.l2},
                           {"epochs", model.glm_params.epochs},
                           {"step", model.glm_params.step}};
            j["weights"] = matrix_to_json(model.glm_weights);
            j["feature_means"] = vector_to_json(model.feature_means);
            j["feature_stds"] = vector_to_json(model.feature_stds);
            break;
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump() << '\n';
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    json j = json::parse(in);
    if (j.at("version").get<int>() != 1)
        throw std::runtime_error("unsupported model file version");

    TrainedModel m;
    m.kind = model_kind_from_name(j.at("kind").get<std::string>());
    m.seed = j.at("seed").get<uint64_t>();
    m.encoder.schema = schema_from_name(j.at("schema").at("name").get<std::string>());
    m.encoder.collection_categories =
        j.at("schema").at("collection_categories").get<std::vector<std::string>>();

    const json& params = j.at("params");
    switch (m.kind) {
        case ModelKind::DecisionTree:
            m.tree_params.max_depth = params.at("max_depth").get<int>();
            m.tree_params.min_leaf = params.at("min_leaf").get<int>();
            m.trees.push_back({nodes_from_json(j.at("tree"), true)});
            break;
        case ModelKind::RandomForest:
            m.forest_params.n_trees = params.at("n_trees").get<int>();
            m.forest_params.max_depth = params.at("max_depth").get<int>();
            m.forest_params.min_leaf = params.at("min_leaf").get<int>();
            m.forest_params.features_per_split = params.at("features_per_split").get<int>();
            m.forest_params.seed = m.seed;
            for (const auto& t : j.at("trees")) m.trees.push_back({nodes_from_json(t, true)});
            break;
        case ModelKind::Gbm:
            m.gbm_params.n_rounds = params.at("n_rounds").get<int>();
            m.gbm_params.learning_rate = params.at("learning_rate").get<double>();
            m.gbm_params.max_depth = params.at("max_depth").get<int>();
            m.gbm_params.seed = m.seed;
            for (const auto& round : j.at("rounds")) {
                std::array<RegressionTree, kAlgorithmCount> per_class;
                for (int c = 0; c < kAlgorithmCount; ++c)
                    per_class[static_cast<size_t>(c)] =
                        RegressionTree{nodes_from_json(round[static_cast<size_t>(c)], false)};
                m.gbm_rounds.push_back(std::move(per_class));
            }
            m.gbm_loss_trace = j.value("loss_trace", std::vector<double>{});
            break;
        case ModelKind::Glm:
            m.glm_params.l2 = params.at("l2").get<double>();
            m.glm_params.epochs = params.at("epochs").get<int>();
            m.glm_params.step = params.at("step").get<double>();
            m.glm_weights = matrix_from_json(j.at("weights"));
            m.feature_means = vector_from_json(j.at("feature_means"));
            m.feature_stds = vector_from_json(j.at("feature_stds"));
            break;
    }
    return m;
}

}  // namespace metasel
