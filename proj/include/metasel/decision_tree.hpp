#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "metasel/algorithm_id.hpp"

namespace metasel {

// Flat node storage; children reference node ids. Leaves carry the class
// histogram (classification) or the fitted value (regression).
struct TreeNode {
    bool leaf = true;
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::array<int, kAlgorithmCount> class_counts{};
    double value = 0.0;
};

struct DecisionTreeParams {
    int max_depth = 64;
    int min_leaf = 1;
};

// CART-style classification tree: greedy splits minimizing weighted Gini
// impurity; numeric thresholds are midpoints between sorted distinct values;
// split ties break by lowest feature index, then lowest threshold.
struct DecisionTree {
    std::vector<TreeNode> nodes;

    int predict_class(const Eigen::VectorXd& row) const;
    const TreeNode& leaf_for(const Eigen::VectorXd& row) const;
    std::array<double, kAlgorithmCount> leaf_distribution(const Eigen::VectorXd& row) const;
};

double gini_impurity(const std::array<int, kAlgorithmCount>& counts);

// `rows` may be a subset given by `sample` (indexes into the matrix, with
// repetitions allowed for bootstrap draws). `feature_subset` is consulted at
// every split when non-null (random forests); nullptr means all features.
using FeatureSubsetFn = std::vector<int> (*)(void*, int);

DecisionTree train_decision_tree(const Eigen::MatrixXd& rows, const std::vector<int>& labels,
                                 const std::vector<int>& sample,
                                 const DecisionTreeParams& params,
                                 FeatureSubsetFn feature_subset = nullptr,
                                 void* subset_ctx = nullptr);

DecisionTree train_decision_tree(const Eigen::MatrixXd& rows, const std::vector<int>& labels,
                                 const DecisionTreeParams& params);

// Regression tree fitted to real targets with variance-reduction splits;
// leaf `value` holds the mean target. Used as the GBM base learner (the
// caller replaces leaf values with Newton steps).
struct RegressionTree {
    std::vector<TreeNode> nodes;
    double predict(const Eigen::VectorXd& row) const;
    // Leaf id reached by a row; lets the caller recompute leaf values.
    int leaf_id(const Eigen::VectorXd& row) const;
};

RegressionTree train_regression_tree(const Eigen::MatrixXd& rows,
                                     const std::vector<double>& targets,
                                     int max_depth, int min_leaf);

}  // namespace metasel
