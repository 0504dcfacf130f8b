#include <cmath>
#include <numeric>
#include <vector>

#include "physiograde/classifiers.hpp"
#include "physiograde/error.hpp"
#include "physiograde/rng.hpp"

namespace physio {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double linear_score(const std::array<double, kFeatureDim>& weights, double bias,
                    const FeatureVector& x) {
    double z = bias;
    for (int i = 0; i < kFeatureDim; ++i) z += weights[std::size_t(i)] * x.values[std::size_t(i)];
    return z;
}

} // namespace

double sgd_example_loss(const std::array<double, kFeatureDim>& weights, double bias,
                        const FeatureVector& x, bool y, double l2) {
    double z = linear_score(weights, bias, x);
    // -[y log p + (1-y) log(1-p)] for p = sigmoid(z), in overflow-safe form.
    double loss = std::max(z, 0.0) - (y ? z : 0.0) + std::log1p(std::exp(-std::abs(z)));
    double norm_sq = 0.0;
    for (double w : weights) norm_sq += w * w;
    return loss + 0.5 * l2 * norm_sq;
}

std::pair<std::array<double, kFeatureDim>, double>
sgd_example_gradient(const std::array<double, kFeatureDim>& weights, double bias,
                     const FeatureVector& x, bool y, double l2) {
    double residual = sigmoid(linear_score(weights, bias, x)) - (y ? 1.0 : 0.0);
    std::array<double, kFeatureDim> grad_w{};
    for (int i = 0; i < kFeatureDim; ++i) {
        grad_w[std::size_t(i)] = residual * x.values[std::size_t(i)] + l2 * weights[std::size_t(i)];
    }
    return {grad_w, residual};
}

SgdModel sgd_logreg_train(std::span<const LabeledExample> train, double learning_rate,
                          int epochs, double l2, std::uint64_t seed) {
    if (train.empty()) fail(Errc::EmptyInput, "sgd_logreg_train on empty data");
    if (learning_rate <= 0.0) fail(Errc::InvalidArgument, "learning rate must be > 0");
    if (epochs < 0) fail(Errc::InvalidArgument, "epochs must be >= 0");
    if (l2 < 0.0) fail(Errc::InvalidArgument, "l2 must be >= 0");

    SgdModel model;
    Rng rng(seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t idx : order) {
            const LabeledExample& ex = train[idx];
            auto [grad_w, grad_b] =
                sgd_example_gradient(model.weights, model.bias, ex.features, ex.label, l2);
            for (int i = 0; i < kFeatureDim; ++i) {
                model.weights[std::size_t(i)] -= learning_rate * grad_w[std::size_t(i)];
            }
            model.bias -= learning_rate * grad_b;
        }
    }
    return model;
}

} // namespace physio
