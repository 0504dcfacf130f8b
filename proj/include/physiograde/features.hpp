#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "physiograde/preprocess.hpp"
#include "physiograde/types.hpp"

namespace physio {

inline constexpr int kFeatureDim = 15;

/// Column names in super-vector order:
/// [temp, hr, eda] x [mean, std, min, max, median].
extern const std::array<const char*, kFeatureDim> kFeatureNames;

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0; // population
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
};

/// Mean, population std, min, max, median. Even-length median is the mean of
/// the two central order statistics. Rejects empty and non-finite input.
SummaryStats summary_stats(std::span<const double> samples);

struct FeatureVector {
    std::array<double, kFeatureDim> values{};

    double operator[](std::size_t i) const { return values[i]; }
    bool operator==(const FeatureVector&) const = default;
};

/// Concatenates the three per-signal statistic blocks in kSignalOrder.
FeatureVector build_supervector(const std::map<SignalKind, CleanRecording>& recordings);

/// Strict comparison: true iff percent > threshold.
bool binarize_label(double percent, double threshold);

struct LabeledExample {
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
    FeatureVector features;
    double percent = 0.0;
    bool label = false;
};

/// Joins preprocessed sessions with their grades (matched by student/exam)
/// into labeled examples, preserving the clean-session order.
std::vector<LabeledExample> label_examples(std::span<const CleanSession> clean,
                                           std::span<const Session> sessions,
                                           double threshold);

} // namespace physio
