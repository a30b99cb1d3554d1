#include "metasel/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace metasel {

double gini_impurity(const std::array<int, kAlgorithmCount>& counts) {
    int total = 0;
    for (int c : counts) total += c;
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (int c : counts) {
        double p = static_cast<double>(c) / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = -std::numeric_limits<double>::infinity();
};

// Candidate thresholds for one feature over the node sample: midpoints
// between consecutive distinct sorted values.
std::vector<double> midpoints(const Eigen::MatrixXd& rows, const std::vector<int>& sample,
                              int feature) {
    std::vector<double> values;
    values.reserve(sample.size());
    for (int i : sample) values.push_back(rows(i, feature));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> out;
    for (size_t i = 0; i + 1 < values.size(); ++i)
        out.push_back((values[i] + values[i + 1]) / 2.0);
    return out;
}

int majority_class(const std::array<int, kAlgorithmCount>& counts) {
    int best = 0;
    for (int c = 1; c < kAlgorithmCount; ++c)
        if (counts[static_cast<size_t>(c)] > counts[static_cast<size_t>(best)]) best = c;
    return best;  // ties resolve to the lowest class index
}

class ClassificationBuilder {
public:
    ClassificationBuilder(const Eigen::MatrixXd& rows, const std::vector<int>& labels,
                          const DecisionTreeParams& params, FeatureSubsetFn subset_fn,
                          void* subset_ctx)
        : rows_(rows), labels_(labels), params_(params), subset_fn_(subset_fn),
          subset_ctx_(subset_ctx) {}

    int build(std::vector<TreeNode>& nodes, const std::vector<int>& sample, int depth) {
        std::array<int, kAlgorithmCount> counts{};
        for (int i : sample) ++counts[static_cast<size_t>(labels_[static_cast<size_t>(i)])];

        int node_id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<size_t>(node_id)].class_counts = counts;

        double impurity = gini_impurity(counts);
        if (impurity == 0.0 || depth >= params_.max_depth ||
            static_cast<int>(sample.size()) < 2 * params_.min_leaf) {
            return node_id;
        }

        auto choice = best_split(sample, counts, impurity);
        if (!choice.found) return node_id;

        std::vector<int> left, right;
        for (int i : sample) {
            if (rows_(i, choice.feature) <= choice.threshold) left.push_back(i);
            else right.push_back(i);
        }
        int left_id = build(nodes, left, depth + 1);
        int right_id = build(nodes, right, depth + 1);
        TreeNode& node = nodes[static_cast<size_t>(node_id)];
        node.leaf = false;
        node.feature = choice.feature;
        node.threshold = choice.threshold;
        node.left = left_id;
        node.right = right_id;
        return node_id;
    }

private:
    SplitChoice best_split(const std::vector<int>& sample,
                           const std::array<int, kAlgorithmCount>& counts,
                           double parent_impurity) {
        std::vector<int> features;
        if (subset_fn_) {
            features = subset_fn_(subset_ctx_, static_cast<int>(rows_.cols()));
            std::sort(features.begin(), features.end());
        } else {
            features.resize(static_cast<size_t>(rows_.cols()));
            std::iota(features.begin(), features.end(), 0);
        }

        SplitChoice best;
        double n = static_cast<double>(sample.size());
        for (int f : features) {
            for (double thr : midpoints(rows_, sample, f)) {
                std::array<int, kAlgorithmCount> lc{};
                int ln = 0;
                for (int i : sample) {
                    if (rows_(i, f) <= thr) {
                        ++lc[static_cast<size_t>(labels_[static_cast<size_t>(i)])];
                        ++ln;
                    }
                }
                int rn = static_cast<int>(sample.size()) - ln;
                if (ln < params_.min_leaf || rn < params_.min_leaf) continue;
                std::array<int, kAlgorithmCount> rc{};
                for (int c = 0; c < kAlgorithmCount; ++c)
                    rc[static_cast<size_t>(c)] =
                        counts[static_cast<size_t>(c)] - lc[static_cast<size_t>(c)];
                double decrease = parent_impurity -
                                  (ln / n) * gini_impurity(lc) - (rn / n) * gini_impurity(rc);
                // Zero-decrease splits are admitted on impure nodes (an XOR
                // pattern needs them); ties break by lowest feature index,
                // then lowest threshold, via first-wins iteration order.
                if (decrease > best.score + 1e-15) {
                    best = {true, f, thr, decrease};
                }
            }
        }
        return best;
    }

    const Eigen::MatrixXd& rows_;
    const std::vector<int>& labels_;
    const DecisionTreeParams& params_;
    FeatureSubsetFn subset_fn_;
    void* subset_ctx_;
};

}  // namespace

const TreeNode& DecisionTree::leaf_for(const Eigen::VectorXd& row) const {
    int id = 0;
    while (!nodes[static_cast<size_t>(id)].leaf) {
        const TreeNode& n = nodes[static_cast<size_t>(id)];
        id = row[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<size_t>(id)];
}

int DecisionTree::predict_class(const Eigen::VectorXd& row) const {
    return majority_class(leaf_for(row).class_counts);
}

std::array<double, kAlgorithmCount> DecisionTree::leaf_distribution(
    const Eigen::VectorXd& row) const {
    const TreeNode& leaf = leaf_for(row);
    std::array<double, kAlgorithmCount> dist{};
    int total = 0;
    for (int c : leaf.class_counts) total += c;
    if (total > 0)
        for (int c = 0; c < kAlgorithmCount; ++c)
            dist[static_cast<size_t>(c)] =
                static_cast<double>(leaf.class_counts[static_cast<size_t>(c)]) / total;
    return dist;
}

DecisionTree train_decision_tree(const Eigen::MatrixXd& rows, const std::vector<int>& labels,
                                 const std::vector<int>& sample,
                                 const DecisionTreeParams& params,
                                 FeatureSubsetFn feature_subset, void* subset_ctx) {
    DecisionTree tree;
    ClassificationBuilder builder(rows, labels, params, feature_subset, subset_ctx);
    builder.build(tree.nodes, sample, 0);
    return tree;
}

DecisionTree train_decision_tree(const Eigen::MatrixXd& rows, const std::vector<int>& labels,
                                 const DecisionTreeParams& params) {
    std::vector<int> sample(static_cast<size_t>(rows.rows()));
    std::iota(sample.begin(), sample.end(), 0);
    return train_decision_tree(rows, labels, sample, params, nullptr, nullptr);
}

namespace {

class RegressionBuilder {
public:
    RegressionBuilder(const Eigen::MatrixXd& rows, const std::vector<double>& targets,
                      int max_depth, int min_leaf)
        : rows_(rows), targets_(targets), max_depth_(max_depth), min_leaf_(min_leaf) {}

    int build(std::vector<TreeNode>& nodes, const std::vector<int>& sample, int depth) {
        double sum = 0.0, sum_sq = 0.0;
        for (int i : sample) {
            double t = targets_[static_cast<size_t>(i)];
            sum += t;
            sum_sq += t * t;
        }
        double n = static_cast<double>(sample.size());
        double node_sse = sum_sq - sum * sum / n;

        int node_id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<size_t>(node_id)].value = sum / n;

        if (depth >= max_depth_ || static_cast<int>(sample.size()) < 2 * min_leaf_ ||
            node_sse <= 1e-12) {
            return node_id;
        }

        SplitChoice best;
        for (int f = 0; f < rows_.cols(); ++f) {
            for (double thr : midpoints(rows_, sample, f)) {
                double lsum = 0.0, lsq = 0.0;
                int ln = 0;
                for (int i : sample) {
                    if (rows_(i, f) <= thr) {
                        double t = targets_[static_cast<size_t>(i)];
                        lsum += t;
                        lsq += t * t;
                        ++ln;
                    }
                }
                int rn = static_cast<int>(sample.size()) - ln;
                if (ln < min_leaf_ || rn < min_leaf_) continue;
                double rsum = sum - lsum, rsq = sum_sq - lsq;
                double sse = (lsq - lsum * lsum / ln) + (rsq - rsum * rsum / rn);
                double decrease = node_sse - sse;
                if (decrease > best.score + 1e-15) best = {true, f, thr, decrease};
            }
        }
        if (!best.found || best.score <= 1e-12) return node_id;

        std::vector<int> left, right;
        for (int i : sample) {
            if (rows_(i, best.feature) <= best.threshold) left.push_back(i);
            else right.push_back(i);
        }
        int left_id = build(nodes, left, depth + 1);
        int right_id = build(nodes, right, depth + 1);
        TreeNode& node = nodes[static_cast<size_t>(node_id)];
        node.leaf = false;
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = left_id;
        node.right = right_id;
        return node_id;
    }

private:
    const Eigen::MatrixXd& rows_;
    const std::vector<double>& targets_;
    int max_depth_;
    int min_leaf_;
};

}  // namespace

double RegressionTree::predict(const Eigen::VectorXd& row) const {
    return nodes[static_cast<size_t>(leaf_id(row))].value;
}

int RegressionTree::leaf_id(const Eigen::VectorXd& row) const {
    int id = 0;
    while (!nodes[static_cast<size_t>(id)].leaf) {
        const TreeNode& n = nodes[static_cast<size_t>(id)];
        id = row[n.feature] <= n.threshold ? n.left : n.right;
    }
    return id;
}

RegressionTree train_regression_tree(const Eigen::MatrixXd& rows,
                                     const std::vector<double>& targets,
                                     int max_depth, int min_leaf) {
    RegressionTree tree;
    std::vector<int> sample(static_cast<size_t>(rows.rows()));
    std::iota(sample.begin(), sample.end(), 0);
    RegressionBuilder builder(rows, targets, max_depth, min_leaf);
    builder.build(tree.nodes, sample, 0);
    return tree;
}

}  // namespace metasel
