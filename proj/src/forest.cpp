#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "physiograde/classifiers.hpp"
#include "physiograde/error.hpp"
#include "physiograde/evaluation.hpp"
#include "physiograde/rng.hpp"

namespace physio {

namespace {

constexpr int kFeaturesPerSplit = 4; // ceil(sqrt(15))

double gini(double positive_fraction) {
    return 2.0 * positive_fraction * (1.0 - positive_fraction);
}

void check_both_classes(std::span<const LabeledExample> train) {
    bool has_pos = false, has_neg = false;
    for (const LabeledExample& ex : train) (ex.label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) {
        fail(Errc::SingleClassTrainingSet, "random forest needs both classes");
    }
}

struct TreeBuilder {
    std::span<const LabeledExample> train;
    Rng& rng;
    int max_depth;
    DecisionTree tree;

    // Returns the node index for the subsample `idx` (indices into train,
    // with bootstrap multiplicity).
    int build(const std::vector<std::size_t>& idx, int depth) {
        std::size_t positives = 0;
        for (std::size_t i : idx) {
            if (train[i].label) ++positives;
        }
        double fraction = double(positives) / double(idx.size());

        int node = int(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[std::size_t(node)].positive_fraction = fraction;

        bool depth_capped = max_depth != kUnlimitedDepth && depth >= max_depth;
        if (idx.size() < 2 || positives == 0 || positives == idx.size() || depth_capped) {
            return node;
        }

        // Candidate features: a seeded draw of 4 distinct dimensions.
        std::array<int, kFeatureDim> dims;
        std::iota(dims.begin(), dims.end(), 0);
        for (int i = 0; i < kFeaturesPerSplit; ++i) {
            std::swap(dims[std::size_t(i)], dims[std::size_t(rng.uniform_int(i, kFeatureDim - 1))]);
        }

        double parent_impurity = gini(fraction);
        double best_gain = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        std::vector<std::pair<double, bool>> values(idx.size());
        for (int fi = 0; fi < kFeaturesPerSplit; ++fi) {
            int feature = dims[std::size_t(fi)];
            for (std::size_t i = 0; i < idx.size(); ++i) {
                values[i] = {train[idx[i]].features[std::size_t(feature)], train[idx[i]].label};
            }
            std::sort(values.begin(), values.end());

            std::size_t left_n = 0, left_pos = 0;
            for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                ++left_n;
                if (values[i].second) ++left_pos;
                if (values[i].first == values[i + 1].first) continue;
                std::size_t right_n = values.size() - left_n;
                std::size_t right_pos = positives - left_pos;
                double weighted =
                    (double(left_n) * gini(double(left_pos) / double(left_n)) +
                     double(right_n) * gini(double(right_pos) / double(right_n))) /
                    double(values.size());
                double gain = parent_impurity - weighted;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = feature;
                    best_threshold = (values[i].first + values[i + 1].first) / 2.0;
                }
            }
        }
        if (best_feature < 0) return node; // no informative split among candidates

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (train[i].features[std::size_t(best_feature)] <= best_threshold) {
                left_idx.push_back(i);
            } else {
                right_idx.push_back(i);
            }
        }
        int left = build(left_idx, depth + 1);
        int right = build(right_idx, depth + 1);
        tree.nodes[std::size_t(node)].feature = best_feature;
        tree.nodes[std::size_t(node)].threshold = best_threshold;
        tree.nodes[std::size_t(node)].left = left;
        tree.nodes[std::size_t(node)].right = right;
        return node;
    }
};

struct GridScore {
    bool has_auc = false;
    double mean_auc = 0.0;
};

} // namespace

double DecisionTree::leaf_fraction(const FeatureVector& x) const {
    int node = 0;
    while (!leaf(node)) {
        const Node& n = nodes[std::size_t(node)];
        node = x[std::size_t(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[std::size_t(node)].positive_fraction;
}

RfModel rf_train(std::span<const LabeledExample> train, const RfGridPoint& grid_point,
                 std::uint64_t seed, std::vector<std::vector<std::size_t>>* bootstraps_out) {
    if (train.empty()) fail(Errc::EmptyInput, "rf_train on empty data");
    check_both_classes(train);
    if (grid_point.tree_count < 1) fail(Errc::InvalidArgument, "tree_count must be >= 1");
    if (grid_point.max_depth != kUnlimitedDepth && grid_point.max_depth < 1) {
        fail(Errc::InvalidArgument, "max_depth must be >= 1 or unlimited");
    }

    RfModel model;
    model.grid_point = grid_point;
    model.trees.reserve(std::size_t(grid_point.tree_count));
    if (bootstraps_out) bootstraps_out->clear();

    for (int t = 0; t < grid_point.tree_count; ++t) {
        Rng rng(derive_seed(seed, std::uint64_t(t)));
        std::vector<std::size_t> bootstrap(train.size());
        for (std::size_t& i : bootstrap) {
            i = std::size_t(rng.uniform_int(0, int(train.size()) - 1));
        }
        if (bootstraps_out) bootstraps_out->push_back(bootstrap);

        TreeBuilder builder{train, rng, grid_point.max_depth, {}};
        builder.build(bootstrap, 0);
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

std::pair<RfGridPoint, RfModel> grid_search_rf(std::span<const LabeledExample> train,
                                               const RfGrid& grid, int inner_folds,
                                               std::uint64_t seed) {
    if (grid.tree_counts.empty() || grid.max_depths.empty()) {
        fail(Errc::InvalidArgument, "grid must contain tree counts and depths");
    }
    if (inner_folds < 2) fail(Errc::InvalidArgument, "inner_folds must be >= 2");
    check_both_classes(train);

    // Grid points in tie-break order: fewer trees first, then shallower
    // depth, unlimited last.
    std::vector<int> tree_counts = grid.tree_counts;
    std::sort(tree_counts.begin(), tree_counts.end());
    std::vector<int> depths = grid.max_depths;
    auto depth_rank = [](int d) { return d == kUnlimitedDepth ? std::numeric_limits<int>::max() : d; };
    std::sort(depths.begin(), depths.end(),
              [&](int a, int b) { return depth_rank(a) < depth_rank(b); });
    std::vector<RfGridPoint> points;
    for (int trees : tree_counts)
        for (int depth : depths) points.push_back({trees, depth});

    // Student-grouped inner folds: round-robin over the sorted student ids,
    // clamped to the number of distinct students.
    std::vector<std::string> students;
    for (const LabeledExample& ex : train) students.push_back(ex.student_id);
    std::sort(students.begin(), students.end());
    students.erase(std::unique(students.begin(), students.end()), students.end());
    int k = std::min<int>(inner_folds, int(students.size()));
    std::map<std::string, int> fold_of;
    for (std::size_t i = 0; i < students.size(); ++i) fold_of[students[i]] = int(i) % std::max(k, 1);

    std::vector<GridScore> scores(points.size());
    if (k >= 2) {
        for (std::size_t gi = 0; gi < points.size(); ++gi) {
            double auc_sum = 0.0;
            int auc_count = 0;
            for (int f = 0; f < k; ++f) {
                std::vector<LabeledExample> inner_train;
                std::vector<const LabeledExample*> inner_test;
                for (const LabeledExample& ex : train) {
                    if (fold_of[ex.student_id] == f) {
                        inner_test.push_back(&ex);
                    } else {
                        inner_train.push_back(ex);
                    }
                }
                auto both = [](auto&& range, auto&& label_of) {
                    bool pos = false, neg = false;
                    for (auto&& e : range) (label_of(e) ? pos : neg) = true;
                    return pos && neg;
                };
                bool train_ok = both(inner_train, [](const LabeledExample& e) { return e.label; });
                bool test_ok = both(inner_test, [](const LabeledExample* e) { return e->label; });
                if (!train_ok || !test_ok || inner_test.empty()) continue; // fold skipped

                RfModel model = rf_train(inner_train, points[gi],
                                         derive_seed(seed, 0x100 + gi * 64 + std::uint64_t(f)));
                std::vector<ScoredPrediction> preds;
                preds.reserve(inner_test.size());
                for (const LabeledExample* ex : inner_test) {
                    preds.push_back({score(TrainedModel{model}, ex->features), ex->label,
                                     ex->student_id, ex->exam});
                }
                auc_sum += roc_auc(preds);
                ++auc_count;
            }
            if (auc_count > 0) {
                scores[gi] = {true, auc_sum / double(auc_count)};
            }
        }
    }

    std::size_t best = points.size();
    bool any_auc = std::any_of(scores.begin(), scores.end(),
                               [](const GridScore& s) { return s.has_auc; });
    if (any_auc) {
        double best_auc = -1.0;
        for (std::size_t gi = 0; gi < points.size(); ++gi) {
            if (scores[gi].has_auc && scores[gi].mean_auc > best_auc) {
                best_auc = scores[gi].mean_auc;
                best = gi;
            }
        }
    } else {
        // Every fold skipped: deterministic fallback on training accuracy.
        double best_acc = -1.0;
        for (std::size_t gi = 0; gi < points.size(); ++gi) {
            RfModel model = rf_train(train, points[gi], derive_seed(seed, 0x900 + gi));
            std::size_t correct = 0;
            for (const LabeledExample& ex : train) {
                bool predicted = score(TrainedModel{model}, ex.features) > 0.5;
                if (predicted == ex.label) ++correct;
            }
            double acc = double(correct) / double(train.size());
            if (acc > best_acc) {
                best_acc = acc;
                best = gi;
            }
        }
    }

    RfModel final_model = rf_train(train, points[best], derive_seed(seed, 0xF1));
    return {points[best], std::move(final_model)};
}

} // namespace physio
