#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "metasel/decision_tree.hpp"
#include "metasel/encoding.hpp"

namespace metasel {

enum class ModelKind { DecisionTree, RandomForest, Gbm, Glm };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct RandomForestParams {
    int n_trees = 100;
    int max_depth = 20;
    int min_leaf = 1;
    int features_per_split = 0;  // 0 = ceil(sqrt(p))
    uint64_t seed = 0;
};

struct GbmParams {
    int n_rounds = 100;
    double learning_rate = 0.1;
    int max_depth = 3;
    uint64_t seed = 0;
};

struct GlmParams {
    double l2 = 1e-3;
    int epochs = 500;
    double step = 0.1;
};

struct Prediction {
    int best = 0;  // class index; maps to AlgorithmId by canonical order
    std::array<double, kAlgorithmCount> probs{};
};

// A trained meta-learner. Serializes to versioned JSON and round-trips
// losslessly; predict is a pure function of (model, features).
struct TrainedModel {
    ModelKind kind = ModelKind::DecisionTree;
    FeatureEncoder encoder;
    uint64_t seed = 0;

    // decision tree / random forest
    std::vector<DecisionTree> trees;
    DecisionTreeParams tree_params;
    RandomForestParams forest_params;

    // gbm: per round, one regression tree per class
    std::vector<std::array<RegressionTree, kAlgorithmCount>> gbm_rounds;
    GbmParams gbm_params;
    std::vector<double> gbm_loss_trace;  // training log-loss after each round

    // glm: class weight matrix (p+1 columns, bias last) + standardization
    Eigen::MatrixXd glm_weights;
    GlmParams glm_params;
    Eigen::VectorXd feature_means;
    Eigen::VectorXd feature_stds;

    Prediction predict_encoded(const Eigen::VectorXd& row) const;
    Prediction predict(const FeatureVector& features) const;
};

TrainedModel train_decision_tree_model(const EncodedMatrix& data,
                                       const DecisionTreeParams& params);
TrainedModel train_random_forest(const EncodedMatrix& data, const RandomForestParams& params);
TrainedModel train_gbm(const EncodedMatrix& data, const GbmParams& params);
TrainedModel train_glm(const EncodedMatrix& data, const GlmParams& params);

// GLM loss and gradient on already standardized rows with a bias column
// appended; exposed for gradient checking.
double glm_loss(const Eigen::MatrixXd& design, const std::vector<int>& labels,
                const Eigen::MatrixXd& weights, double l2);
Eigen::MatrixXd glm_gradient(const Eigen::MatrixXd& design, const std::vector<int>& labels,
                             const Eigen::MatrixXd& weights, double l2);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace metasel
