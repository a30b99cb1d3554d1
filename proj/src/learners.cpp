#include "metasel/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metasel/errors.hpp"
#include "metasel/rng.hpp"

namespace metasel {

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::DecisionTree: return "decision_tree";
        case ModelKind::RandomForest: return "random_forest";
        case ModelKind::Gbm: return "gbm";
        default: return "glm";
    }
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "decision_tree" || name == "tree") return ModelKind::DecisionTree;
    if (name == "random_forest" || name == "rf") return ModelKind::RandomForest;
    if (name == "gbm") return ModelKind::Gbm;
    if (name == "glm") return ModelKind::Glm;
    throw std::runtime_error("unknown model kind: " + name);
}

namespace {

std::array<double, kAlgorithmCount> softmax(const std::array<double, kAlgorithmCount>& scores) {
    double mx = *std::max_element(scores.begin(), scores.end());
    std::array<double, kAlgorithmCount> out{};
    double sum = 0.0;
    for (int c = 0; c < kAlgorithmCount; ++c) {
        out[static_cast<size_t>(c)] = std::exp(scores[static_cast<size_t>(c)] - mx);
        sum += out[static_cast<size_t>(c)];
    }
    for (auto& v : out) v /= sum;
    return out;
}

int argmax_lowest(const std::array<double, kAlgorithmCount>& v) {
    int best = 0;
    for (int c = 1; c < kAlgorithmCount; ++c)
        if (v[static_cast<size_t>(c)] > v[static_cast<size_t>(best)]) best = c;
    return best;
}

struct SubsetCtx {
    Rng* rng;
    int features_per_split;
};

std::vector<int> draw_feature_subset(void* ctx_ptr, int p) {
    auto* ctx = static_cast<SubsetCtx*>(ctx_ptr);
    int m = std::min(ctx->features_per_split, p);
    // partial Fisher-Yates over feature indices
    std::vector<int> all(static_cast<size_t>(p));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < m; ++i) {
        size_t j = static_cast<size_t>(i) +
                   static_cast<size_t>(ctx->rng->uniform_int(static_cast<uint64_t>(p - i)));
        std::swap(all[static_cast<size_t>(i)], all[j]);
    }
    all.resize(static_cast<size_t>(m));
    return all;
}

}  // namespace

TrainedModel train_decision_tree_model(const EncodedMatrix& data,
                                       const DecisionTreeParams& params) {
    TrainedModel m;
    m.kind = ModelKind::DecisionTree;
    m.encoder = data.encoder;
    m.tree_params = params;
    m.trees.push_back(train_decision_tree(data.rows, data.labels, params));
    return m;
}

TrainedModel train_random_forest(const EncodedMatrix& data, const RandomForestParams& params) {
    TrainedModel m;
    m.kind = ModelKind::RandomForest;
    m.encoder = data.encoder;
    m.forest_params = params;
    m.seed = params.seed;

    int p = static_cast<int>(data.rows.cols());
    int per_split = params.features_per_split > 0
                        ? params.features_per_split
                        : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p))));
    size_t n = data.labels.size();

    DecisionTreeParams tp{params.max_depth, params.min_leaf};
    for (int t = 0; t < params.n_trees; ++t) {
        // Per-tree RNG stream derived by counter: the forest is identical
        // whether trees are grown sequentially or in parallel.
        Rng rng = Rng::stream(params.seed, static_cast<uint64_t>(t));
        std::vector<int> sample(n);
        for (size_t i = 0; i < n; ++i)
            sample[i] = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(n)));
        SubsetCtx ctx{&rng, per_split};
        m.trees.push_back(
            train_decision_tree(data.rows, data.labels, sample, tp, draw_feature_subset, &ctx));
    }
    return m;
}

TrainedModel train_gbm(const EncodedMatrix& data, const GbmParams& params) {
    TrainedModel m;
    m.kind = ModelKind::Gbm;
    m.encoder = data.encoder;
    m.gbm_params = params;
    m.seed = params.seed;

    const Eigen::Index n = data.rows.rows();
    Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, kAlgorithmCount);

    constexpr double kNewtonFactor =
        (kAlgorithmCount - 1.0) / kAlgorithmCount;  // 3/4 for four classes
    constexpr double kEps = 1e-12;

    auto log_loss = [&]() {
        double loss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::array<double, kAlgorithmCount> row{};
            for (int c = 0; c < kAlgorithmCount; ++c) row[static_cast<size_t>(c)] = scores(i, c);
            auto probs = softmax(row);
            double py = probs[static_cast<size_t>(data.labels[static_cast<size_t>(i)])];
            loss -= std::log(std::max(py, kEps));
        }
        return loss / static_cast<double>(n);
    };

    for (int round = 0; round < params.n_rounds; ++round) {
        // residuals: one-hot(label) - softmax(scores)
        Eigen::MatrixXd residuals(n, kAlgorithmCount);
        for (Eigen::Index i = 0; i < n; ++i) {
            std::array<double, kAlgorithmCount> row{};
            for (int c = 0; c < kAlgorithmCount; ++c) row[static_cast<size_t>(c)] = scores(i, c);
            auto probs = softmax(row);
            for (int c = 0; c < kAlgorithmCount; ++c) {
                double y = data.labels[static_cast<size_t>(i)] == c ? 1.0 : 0.0;
                residuals(i, c) = y - probs[static_cast<size_t>(c)];
            }
        }

        std::array<RegressionTree, kAlgorithmCount> round_trees;
        for (int c = 0; c < kAlgorithmCount; ++c) {
            std::vector<double> target(static_cast<size_t>(n));
            for (Eigen::Index i = 0; i < n; ++i)
                target[static_cast<size_t>(i)] = residuals(i, c);
            RegressionTree tree = train_regression_tree(data.rows, target, params.max_depth, 1);

            // Newton step per leaf: factor * sum(r) / sum(|r| (1 - |r|)).
            std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
            for (Eigen::Index i = 0; i < n; ++i) {
                int leaf = tree.leaf_id(data.rows.row(i));
                double r = residuals(i, c);
                num[static_cast<size_t>(leaf)] += r;
                den[static_cast<size_t>(leaf)] += std::fabs(r) * (1.0 - std::fabs(r));
            }
            for (size_t nd = 0; nd < tree.nodes.size(); ++nd) {
                if (!tree.nodes[nd].leaf) continue;
                tree.nodes[nd].value =
                    kNewtonFactor * num[nd] / std::max(den[nd], kEps);
            }
            for (Eigen::Index i = 0; i < n; ++i)
                scores(i, c) += params.learning_rate * tree.predict(data.rows.row(i));
            round_trees[static_cast<size_t>(c)] = std::move(tree);
        }
        m.gbm_rounds.push_back(std::move(round_trees));
        m.gbm_loss_trace.push_back(log_loss());
    }
    return m;
}

double glm_loss(const Eigen::MatrixXd& design, const std::vector<int>& labels,
                const Eigen::MatrixXd& weights, double l2) {
    const Eigen::Index n = design.rows();
    Eigen::MatrixXd logits = design * weights.transpose();  // n x K
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double mx = logits.row(i).maxCoeff();
        double lse = std::log((logits.row(i).array() - mx).exp().sum()) + mx;
        loss += lse - logits(i, labels[static_cast<size_t>(i)]);
    }
    loss /= static_cast<double>(n);
    // bias column (last) is not regularized
    loss += 0.5 * l2 * weights.leftCols(weights.cols() - 1).squaredNorm();
    return loss;
}

Eigen::MatrixXd glm_gradient(const Eigen::MatrixXd& design, const std::vector<int>& labels,
                             const Eigen::MatrixXd& weights, double l2) {
    const Eigen::Index n = design.rows();
    Eigen::MatrixXd logits = design * weights.transpose();
    Eigen::MatrixXd probs(n, weights.rows());
    for (Eigen::Index i = 0; i < n; ++i) {
        double mx = logits.row(i).maxCoeff();
        Eigen::ArrayXd e = (logits.row(i).array() - mx).exp();
        probs.row(i) = (e / e.sum()).matrix();
    }
    for (Eigen::Index i = 0; i < n; ++i)
        probs(i, labels[static_cast<size_t>(i)]) -= 1.0;
    Eigen::MatrixXd grad = probs.transpose() * design / static_cast<double>(n);
    grad.leftCols(grad.cols() - 1) += l2 * weights.leftCols(weights.cols() - 1);
    return grad;
}

TrainedModel train_glm(const EncodedMatrix& data, const GlmParams& params) {
    TrainedModel m;
    m.kind = ModelKind::Glm;
    m.encoder = data.encoder;
    m.glm_params = params;

    const Eigen::Index n = data.rows.rows();
    const Eigen::Index p = data.rows.cols();

    // Standardize numeric columns; one-hot columns pass through.
    m.feature_means = Eigen::VectorXd::Zero(p);
    m.feature_stds = Eigen::VectorXd::Ones(p);
    int numeric_start = data.encoder.numeric_start();
    for (Eigen::Index c = numeric_start; c < p; ++c) {
        double mu = data.rows.col(c).mean();
        double var = (data.rows.col(c).array() - mu).square().sum() / std::max<double>(1.0, n - 1.0);
        double sd = std::sqrt(var);
        m.feature_means[c] = mu;
        m.feature_stds[c] = sd > 1e-12 ? sd : 1.0;
    }

    Eigen::MatrixXd design(n, p + 1);
    for (Eigen::Index c = 0; c < p; ++c)
        design.col(c) = (data.rows.col(c).array() - m.feature_means[c]) / m.feature_stds[c];
    design.col(p).setOnes();

    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(kAlgorithmCount, p + 1);
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        Eigen::MatrixXd grad = glm_gradient(design, data.labels, weights, params.l2);
        weights -= params.step * grad;
        if (!weights.allFinite()) {
            throw TrainError("glm training diverged at epoch " + std::to_string(epoch));
        }
    }
    double final_loss = glm_loss(design, data.labels, weights, params.l2);
    if (!std::isfinite(final_loss))
        throw TrainError("glm training produced a non-finite loss");

    m.glm_weights = std::move(weights);
    return m;
}

Prediction TrainedModel::predict_encoded(const Eigen::VectorXd& row) const {
    Prediction pred;
    switch (kind) {
        case ModelKind::DecisionTree: {
            pred.probs = trees[0].leaf_distribution(row);
            pred.best = trees[0].predict_class(row);
            break;
        }
        case ModelKind::RandomForest: {
            std::array<int, kAlgorithmCount> votes{};
            for (const auto& tree : trees) ++votes[static_cast<size_t>(tree.predict_class(row))];
            for (int c = 0; c < kAlgorithmCount; ++c)
                pred.probs[static_cast<size_t>(c)] =
                    static_cast<double>(votes[static_cast<size_t>(c)]) /
                    static_cast<double>(trees.size());
            int best = 0;
            for (int c = 1; c < kAlgorithmCount; ++c)
                if (votes[static_cast<size_t>(c)] > votes[static_cast<size_t>(best)]) best = c;
            pred.best = best;
            break;
        }
        case ModelKind::Gbm: {
            std::array<double, kAlgorithmCount> scores{};
            for (const auto& round : gbm_rounds)
                for (int c = 0; c < kAlgorithmCount; ++c)
                    scores[static_cast<size_t>(c)] +=
                        gbm_params.learning_rate * round[static_cast<size_t>(c)].predict(row);
            pred.probs = softmax(scores);
            pred.best = argmax_lowest(pred.probs);
            break;
        }
        case ModelKind::Glm: {
            Eigen::VectorXd design(row.size() + 1);
            for (Eigen::Index c = 0; c < row.size(); ++c)
                design[c] = (row[c] - feature_means[c]) / feature_stds[c];
            design[row.size()] = 1.0;
            Eigen::VectorXd logits = glm_weights * design;
            std::array<double, kAlgorithmCount> scores{};
            for (int c = 0; c < kAlgorithmCount; ++c) scores[static_cast<size_t>(c)] = logits[c];
            pred.probs = softmax(scores);
            pred.best = argmax_lowest(pred.probs);
            break;
        }
    }
    return pred;
}

Prediction TrainedModel::predict(const FeatureVector& features) const {
    return predict_encoded(encoder.encode(features));
}

}  // namespace metasel
