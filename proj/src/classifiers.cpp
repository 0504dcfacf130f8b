#include "physiograde/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "physiograde/error.hpp"

namespace physio {

namespace {

void check_train_set(std::span<const LabeledExample> train) {
    if (train.empty()) fail(Errc::EmptyInput, "empty training set");
    bool has_pos = false, has_neg = false;
    for (const LabeledExample& ex : train) (ex.label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) {
        fail(Errc::SingleClassTrainingSet,
             std::string("training set contains only ") + (has_pos ? "positive" : "negative") +
                 " examples");
    }
}

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double sum = 0.0;
    for (int i = 0; i < kFeatureDim; ++i) {
        double d = a.values[std::size_t(i)] - b.values[std::size_t(i)];
        sum += d * d;
    }
    return sum;
}

KnnModel fit_knn(const KnnSpec& spec, std::span<const LabeledExample> train) {
    if (spec.k < 1 || std::size_t(spec.k) > train.size()) {
        fail(Errc::InvalidK, "k = " + std::to_string(spec.k) + " with " +
                                 std::to_string(train.size()) + " training examples");
    }
    KnnModel model;
    model.k = spec.k;
    model.train_x.reserve(train.size());
    model.train_y.reserve(train.size());
    for (const LabeledExample& ex : train) {
        model.train_x.push_back(ex.features);
        model.train_y.push_back(ex.label);
    }
    return model;
}

double score_knn(const KnnModel& model, const FeatureVector& x) {
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(model.train_x.size());
    for (std::size_t i = 0; i < model.train_x.size(); ++i) {
        by_distance.emplace_back(squared_distance(model.train_x[i], x), i);
    }
    // Distance ties resolve to the lower training-set index.
    std::sort(by_distance.begin(), by_distance.end());
    int positives = 0;
    for (int i = 0; i < model.k; ++i) {
        if (model.train_y[by_distance[std::size_t(i)].second]) ++positives;
    }
    return double(positives) / double(model.k);
}

SvmModel fit_svm(const SvmSpec& spec, std::span<const LabeledExample> train) {
    std::vector<FeatureVector> x;
    std::vector<int> y;
    x.reserve(train.size());
    y.reserve(train.size());
    for (const LabeledExample& ex : train) {
        x.push_back(ex.features);
        y.push_back(ex.label ? 1 : -1);
    }
    double gamma = resolve_gamma(spec.gamma, x);
    SmoResult smo = smo_train(x, y, spec.c, gamma, spec.tol, spec.max_passes);

    SvmModel model;
    model.gamma = gamma;
    model.bias = smo.bias;
    model.converged = smo.converged;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (smo.alpha[i] > 0.0) {
            model.support_x.push_back(x[i]);
            model.dual_coef.push_back(smo.alpha[i] * y[i]);
        }
    }
    return model;
}

double score_svm(const SvmModel& model, const FeatureVector& x) {
    double value = model.bias;
    for (std::size_t i = 0; i < model.support_x.size(); ++i) {
        value += model.dual_coef[i] * rbf_kernel(model.support_x[i], x, model.gamma);
    }
    return value;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double score_sgd(const SgdModel& model, const FeatureVector& x) {
    double z = model.bias;
    for (int i = 0; i < kFeatureDim; ++i) z += model.weights[std::size_t(i)] * x.values[std::size_t(i)];
    return sigmoid(z);
}

double score_rf(const RfModel& model, const FeatureVector& x) {
    int votes = 0;
    for (const DecisionTree& tree : model.trees) {
        if (tree.leaf_fraction(x) > 0.5) ++votes;
    }
    return double(votes) / double(model.trees.size());
}

} // namespace

const char* classifier_name(const ClassifierSpec& spec) {
    switch (spec.index()) {
        case 0: return "rf";
        case 1: return "sgd";
        case 2: return "svm";
        case 3: return "knn";
    }
    return "?";
}

double rbf_kernel(const FeatureVector& x, const FeatureVector& y, double gamma) {
    return std::exp(-gamma * squared_distance(x, y));
}

double resolve_gamma(const GammaRule& rule, std::span<const FeatureVector> train_x) {
    if (rule.kind == GammaRule::Kind::Fixed) {
        if (rule.value <= 0.0) fail(Errc::InvalidArgument, "fixed gamma must be > 0");
        return rule.value;
    }
    // Population variance over all n*d feature entries.
    double sum = 0.0;
    std::size_t count = train_x.size() * kFeatureDim;
    if (count == 0) fail(Errc::EmptyInput, "cannot resolve gamma without training data");
    for (const FeatureVector& fv : train_x)
        for (double v : fv.values) sum += v;
    double mean = sum / double(count);
    double sq = 0.0;
    for (const FeatureVector& fv : train_x)
        for (double v : fv.values) sq += (v - mean) * (v - mean);
    double var = sq / double(count);
    if (var <= 0.0) return 1.0 / double(kFeatureDim); // constant features; any gamma works
    return 1.0 / (double(kFeatureDim) * var);
}

TrainedModel fit(const ClassifierSpec& spec, std::span<const LabeledExample> train,
                 std::uint64_t seed) {
    check_train_set(train);
    if (const auto* knn = std::get_if<KnnSpec>(&spec)) return fit_knn(*knn, train);
    if (const auto* svm = std::get_if<SvmSpec>(&spec)) return fit_svm(*svm, train);
    if (const auto* sgd = std::get_if<SgdSpec>(&spec)) {
        return sgd_logreg_train(train, sgd->learning_rate, sgd->epochs, sgd->l2, seed);
    }
    const auto& rf = std::get<RfSpec>(spec);
    return grid_search_rf(train, rf.grid, rf.inner_folds, seed).second;
}

double score(const TrainedModel& model, const FeatureVector& features) {
    if (const auto* knn = std::get_if<KnnModel>(&model)) return score_knn(*knn, features);
    if (const auto* svm = std::get_if<SvmModel>(&model)) return score_svm(*svm, features);
    if (const auto* sgd = std::get_if<SgdModel>(&model)) return score_sgd(*sgd, features);
    return score_rf(std::get<RfModel>(model), features);
}

} // namespace physio
