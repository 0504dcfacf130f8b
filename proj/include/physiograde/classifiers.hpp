#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "physiograde/features.hpp"

namespace physio {

// ---------------------------------------------------------------------------
// Specs

struct KnnSpec {
    int k = 5;
};

/// gamma for the RBF kernel: either the "scale" rule
/// 1 / (d * population variance over all training feature entries)
/// or a fixed positive value.
struct GammaRule {
    enum class Kind { Scale, Fixed };
    Kind kind = Kind::Scale;
    double value = 0.0;

    static GammaRule scale() { return {}; }
    static GammaRule fixed(double v) { return {Kind::Fixed, v}; }
};

struct SvmSpec {
    double c = 1.0;
    GammaRule gamma{};
    double tol = 1e-3;
    int max_passes = 100;
};

struct SgdSpec {
    double learning_rate = 0.01;
    int epochs = 100;
    double l2 = 1e-4;
};

inline constexpr int kUnlimitedDepth = -1;

struct RfGrid {
    std::vector<int> tree_counts = {50, 100, 200};
    std::vector<int> max_depths = {2, 4, 8, kUnlimitedDepth};
};

struct RfSpec {
    RfGrid grid{};
    int inner_folds = 3;
};

using ClassifierSpec = std::variant<RfSpec, SgdSpec, SvmSpec, KnnSpec>;

/// Canonical short name: "rf", "sgd", "svm", "knn".
const char* classifier_name(const ClassifierSpec& spec);

// ---------------------------------------------------------------------------
// Models

struct KnnModel {
    int k = 5;
    std::vector<FeatureVector> train_x;
    std::vector<bool> train_y;
};

struct SvmModel {
    std::vector<FeatureVector> support_x;
    std::vector<double> dual_coef; // alpha_i * y_i for support vectors
    double bias = 0.0;
    double gamma = 0.0;
    bool converged = false;
};

struct SgdModel {
    std::array<double, kFeatureDim> weights{};
    double bias = 0.0;
};

struct DecisionTree {
    struct Node {
        int feature = -1;              // -1 marks a leaf
        double threshold = 0.0;        // x[feature] <= threshold goes left
        int left = -1;
        int right = -1;
        double positive_fraction = 0.0;
    };
    std::vector<Node> nodes; // nodes[0] is the root

    bool leaf(int i) const { return nodes[i].feature < 0; }
    double leaf_fraction(const FeatureVector& x) const;
};

struct RfGridPoint {
    int tree_count = 0;
    int max_depth = kUnlimitedDepth;

    bool operator==(const RfGridPoint&) const = default;
};

struct RfModel {
    std::vector<DecisionTree> trees;
    RfGridPoint grid_point;
};

using TrainedModel = std::variant<RfModel, SgdModel, SvmModel, KnnModel>;

// ---------------------------------------------------------------------------
// Shared contract

/// Trains the classifier described by `spec`. Deterministic for fixed
/// (spec, train, seed); KNN and SVM have no stochastic component and ignore
/// the seed. Requires both classes in `train`.
TrainedModel fit(const ClassifierSpec& spec, std::span<const LabeledExample> train,
                 std::uint64_t seed);

/// Real-valued score, monotone in positive-class confidence. KNN: fraction of
/// the k nearest training points (Euclidean distance, ties by lower index)
/// that are positive. SVM: signed decision value. SGD: logistic sigmoid of
/// the linear score. RF: fraction of trees voting positive.
double score(const TrainedModel& model, const FeatureVector& features);

// ---------------------------------------------------------------------------
// Building blocks (exposed for direct use and oracle tests)

/// exp(-gamma * ||x - y||^2)
double rbf_kernel(const FeatureVector& x, const FeatureVector& y, double gamma);

double resolve_gamma(const GammaRule& rule, std::span<const FeatureVector> train_x);

/// Raw SMO state: every training alpha, for constraint checks.
struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;
    bool converged = false;
    int passes = 0;
};

/// Sequential minimal optimization for the C-SVM dual with an RBF kernel.
/// Fully deterministic: index sweeps alternate between all points and the
/// non-bound set; the second index is chosen by largest |E_i - E_j| with
/// ties and fallbacks resolved by ascending index. Non-convergence within
/// max_passes sweeps is reported via `converged`, not an error.
SmoResult smo_train(std::span<const FeatureVector> x, std::span<const int> y,
                    double c, double gamma, double tol, int max_passes);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double svm_dual_objective(std::span<const FeatureVector> x, std::span<const int> y,
                          std::span<const double> alpha, double gamma);

/// Regularized log-loss for one example with p = sigmoid(w.x + b):
/// -[y log p + (1-y) log(1-p)] + (l2/2)||w||^2.
double sgd_example_loss(const std::array<double, kFeatureDim>& weights, double bias,
                        const FeatureVector& x, bool y, double l2);

/// Analytic gradient of sgd_example_loss; returns (d/dw, d/db).
std::pair<std::array<double, kFeatureDim>, double>
sgd_example_gradient(const std::array<double, kFeatureDim>& weights, double bias,
                     const FeatureVector& x, bool y, double l2);

/// Per-example SGD on the regularized log-loss with a seeded Fisher-Yates
/// shuffle before every epoch.
SgdModel sgd_logreg_train(std::span<const LabeledExample> train, double learning_rate,
                          int epochs, double l2, std::uint64_t seed);

/// CART forest: each tree is grown on a seeded bootstrap of size |train| with
/// ceil(sqrt(15)) = 4 candidate features per split, Gini impurity, and
/// midpoint thresholds between adjacent distinct values. Leaves store the
/// positive fraction of the bootstrap samples reaching them. Per-tree seeds
/// are derived from (seed, tree index). If `bootstraps_out` is given it
/// receives each tree's bootstrap indices.
RfModel rf_train(std::span<const LabeledExample> train, const RfGridPoint& grid_point,
                 std::uint64_t seed,
                 std::vector<std::vector<std::size_t>>* bootstraps_out = nullptr);

/// Student-grouped inner cross-validation over the grid; selects the point
/// with the highest mean per-fold AUC (ties: fewer trees, then shallower
/// depth), then refits on the full training set. Inner folds whose test side
/// is single-class (or whose train side cannot be fit) are skipped; if every
/// fold of every grid point is skipped, grid points are ranked by training
/// accuracy instead.
std::pair<RfGridPoint, RfModel> grid_search_rf(std::span<const LabeledExample> train,
                                               const RfGrid& grid, int inner_folds,
                                               std::uint64_t seed);

} // namespace physio
