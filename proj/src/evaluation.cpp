#include "physiograde/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

#include "physiograde/error.hpp"
#include "physiograde/rng.hpp"

namespace physio {

namespace {

/// Mean and population std computed around the first element so that a list
/// of identical values yields exactly (value, 0.0).
std::pair<double, double> mean_and_std(std::span<const double> values) {
    double shift = values.front();
    double sum = 0.0;
    for (double v : values) sum += v - shift;
    double mean = shift + sum / double(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / double(values.size()))};
}

} // namespace

FoldPlan loso_folds(std::span<const LabeledExample> examples) {
    std::map<std::string, std::vector<std::size_t>> by_student;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        by_student[examples[i].student_id].push_back(i);
    }
    if (by_student.size() < 2) {
        fail(Errc::InsufficientStudents, "leave-one-student-out needs at least 2 students, got " +
                                             std::to_string(by_student.size()));
    }
    FoldPlan plan;
    plan.reserve(by_student.size());
    for (const auto& [student, test_indices] : by_student) {
        Fold fold;
        fold.held_out_student = student;
        fold.test_indices = test_indices;
        for (std::size_t i = 0; i < examples.size(); ++i) {
            if (examples[i].student_id != student) fold.train_indices.push_back(i);
        }
        plan.push_back(std::move(fold));
    }
    return plan;
}

double roc_auc(std::span<const ScoredPrediction> predictions) {
    std::int64_t positives = 0, negatives = 0;
    std::vector<std::pair<double, bool>> sorted;
    sorted.reserve(predictions.size());
    for (const ScoredPrediction& p : predictions) {
        if (!std::isfinite(p.score)) fail(Errc::InvalidSample, "non-finite score");
        sorted.emplace_back(p.score, p.label);
        (p.label ? positives : negatives) += 1;
    }
    if (positives == 0 || negatives == 0) {
        fail(Errc::UndefinedAuc, "AUC needs both classes, got " + std::to_string(positives) +
                                     " positive / " + std::to_string(negatives) + " negative");
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Mid-ranks in doubled integer units keep the rank sum exact; tied scores
    // all receive (first rank + last rank) of their group.
    std::int64_t doubled_positive_rank_sum = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
        std::int64_t doubled_rank = std::int64_t(i + 1) + std::int64_t(j); // 2 * mid-rank
        for (std::size_t t = i; t < j; ++t) {
            if (sorted[t].second) doubled_positive_rank_sum += doubled_rank;
        }
        i = j;
    }
    std::int64_t numerator = doubled_positive_rank_sum - positives * (positives + 1);
    return double(numerator) / double(2 * positives * negatives);
}

std::vector<RocPoint> roc_curve(std::span<const ScoredPrediction> predictions) {
    std::int64_t positives = 0, negatives = 0;
    std::vector<std::pair<double, bool>> sorted;
    sorted.reserve(predictions.size());
    for (const ScoredPrediction& p : predictions) {
        if (!std::isfinite(p.score)) fail(Errc::InvalidSample, "non-finite score");
        sorted.emplace_back(p.score, p.label);
        (p.label ? positives : negatives) += 1;
    }
    if (positives == 0 || negatives == 0) {
        fail(Errc::UndefinedAuc, "ROC curve needs both classes");
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::int64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
        for (std::size_t t = i; t < j; ++t) (sorted[t].second ? tp : fp) += 1;
        curve.push_back({double(fp) / double(negatives), double(tp) / double(positives),
                         sorted[i].first});
        i = j;
    }
    return curve;
}

EvalSummary run_experiment(std::span<const Session> sessions,
                           const PreprocessConfig& preprocess_config,
                           std::span<const ClassifierSpec> specs, double threshold,
                           int repetitions, std::uint64_t base_seed) {
    if (repetitions < 1) fail(Errc::InvalidArgument, "repetitions must be >= 1");
    if (specs.empty()) fail(Errc::InvalidArgument, "no classifiers enabled");

    std::vector<CleanSession> clean = preprocess_all(sessions, preprocess_config);
    std::vector<LabeledExample> examples = label_examples(clean, sessions, threshold);
    FoldPlan folds = loso_folds(examples);

    EvalSummary summary;
    summary.n_examples = examples.size();
    summary.n_folds = folds.size();
    summary.repetitions = repetitions;

    for (std::size_t ci = 0; ci < specs.size(); ++ci) {
        ClassifierSummary cs;
        cs.name = classifier_name(specs[ci]);
        for (int rep = 0; rep < repetitions; ++rep) {
            std::uint64_t rep_seed = base_seed + std::uint64_t(rep);
            std::vector<ScoredPrediction> pooled;
            pooled.reserve(examples.size());
            for (std::size_t fi = 0; fi < folds.size(); ++fi) {
                const Fold& fold = folds[fi];
                std::vector<LabeledExample> train;
                train.reserve(fold.train_indices.size());
                for (std::size_t idx : fold.train_indices) train.push_back(examples[idx]);
                TrainedModel model =
                    fit(specs[ci], train, derive_seed(rep_seed, ci * 1024 + fi));
                for (std::size_t idx : fold.test_indices) {
                    const LabeledExample& ex = examples[idx];
                    pooled.push_back(
                        {score(model, ex.features), ex.label, ex.student_id, ex.exam});
                }
            }
            cs.repetition_aucs.push_back(roc_auc(pooled));
            if (rep == 0) cs.pooled_roc = roc_curve(pooled);
        }
        auto [mean, stddev] = mean_and_std(cs.repetition_aucs);
        cs.mean_auc = mean;
        cs.std_auc = stddev;
        summary.classifiers.push_back(std::move(cs));
    }
    return summary;
}

} // namespace physio
