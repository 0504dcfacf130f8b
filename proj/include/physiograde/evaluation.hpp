#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "physiograde/classifiers.hpp"
#include "physiograde/features.hpp"
#include "physiograde/preprocess.hpp"
#include "physiograde/types.hpp"

namespace physio {

struct Fold {
    std::string held_out_student;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// One fold per distinct student, ordered by ascending student id; a fold's
/// test set is exactly that student's examples.
using FoldPlan = std::vector<Fold>;

FoldPlan loso_folds(std::span<const LabeledExample> examples);

struct ScoredPrediction {
    double score = 0.0;
    bool label = false;
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
};

/// Rank-based ROC-AUC with mid-rank tie handling: the probability that a
/// random positive outranks a random negative, ties counting one half.
/// Requires both classes.
double roc_auc(std::span<const ScoredPrediction> predictions);

struct RocPoint {
    double false_positive_rate = 0.0;
    double true_positive_rate = 0.0;
    double threshold = 0.0;
};

/// Threshold sweep over the distinct scores descending, preceded by a
/// sentinel above the maximum; a point classifies positive iff
/// score >= threshold. Starts at (0,0), ends at (1,1); trapezoidal area
/// equals roc_auc.
std::vector<RocPoint> roc_curve(std::span<const ScoredPrediction> predictions);

struct ClassifierSummary {
    std::string name;
    double mean_auc = 0.0;
    double std_auc = 0.0; // population, over repetitions
    std::vector<double> repetition_aucs;
    std::vector<RocPoint> pooled_roc; // repetition 1
};

struct EvalSummary {
    std::vector<ClassifierSummary> classifiers; // in the order the specs were given
    std::size_t n_examples = 0;
    std::size_t n_folds = 0;
    int repetitions = 0;
};

/// Full protocol: preprocess, build labeled examples, leave-one-student-out
/// folds (fixed across repetitions), and per repetition r a derived seed
/// base_seed + r feeding each fold's fit. All folds' held-out predictions are
/// pooled into one AUC per classifier per repetition. Deterministic for fixed
/// inputs and invariant to the order of `sessions`.
EvalSummary run_experiment(std::span<const Session> sessions,
                           const PreprocessConfig& preprocess_config,
                           std::span<const ClassifierSpec> specs, double threshold,
                           int repetitions, std::uint64_t base_seed);

} // namespace physio
