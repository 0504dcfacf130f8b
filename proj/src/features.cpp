#include "physiograde/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "physiograde/error.hpp"

namespace physio {

const std::array<const char*, kFeatureDim> kFeatureNames = {
    "temp_mean", "temp_std", "temp_min", "temp_max", "temp_median",
    "hr_mean",   "hr_std",   "hr_min",   "hr_max",   "hr_median",
    "eda_mean",  "eda_std",  "eda_min",  "eda_max",  "eda_median",
};

SummaryStats summary_stats(std::span<const double> samples) {
    if (samples.empty()) fail(Errc::EmptyInput, "summary_stats on empty input");
    for (double v : samples) {
        if (!std::isfinite(v)) fail(Errc::InvalidSample, "non-finite sample");
    }

    // All five statistics come from the sorted copy, so any permutation of
    // the input produces bit-identical output.
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats stats;
    double sum = 0.0;
    for (double v : sorted) sum += v;
    stats.mean = sum / double(sorted.size());

    double sq = 0.0;
    for (double v : sorted) sq += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(sq / double(sorted.size()));

    stats.min = sorted.front();
    stats.max = sorted.back();
    std::size_t n = sorted.size();
    stats.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    return stats;
}

FeatureVector build_supervector(const std::map<SignalKind, CleanRecording>& recordings) {
    FeatureVector features;
    std::size_t offset = 0;
    for (SignalKind kind : kSignalOrder) {
        auto it = recordings.find(kind);
        if (it == recordings.end()) {
            fail(Errc::IncompleteSession,
                 std::string("missing signal ") + signal_short_name(kind));
        }
        SummaryStats stats = summary_stats(it->second.samples);
        features.values[offset + 0] = stats.mean;
        features.values[offset + 1] = stats.stddev;
        features.values[offset + 2] = stats.min;
        features.values[offset + 3] = stats.max;
        features.values[offset + 4] = stats.median;
        offset += 5;
    }
    return features;
}

bool binarize_label(double percent, double threshold) {
    return percent > threshold;
}

std::vector<LabeledExample> label_examples(std::span<const CleanSession> clean,
                                           std::span<const Session> sessions,
                                           double threshold) {
    std::map<std::pair<std::string, ExamKind>, const Session*> by_key;
    for (const Session& s : sessions) by_key[{s.student_id, s.exam}] = &s;

    std::vector<LabeledExample> examples;
    examples.reserve(clean.size());
    for (const CleanSession& c : clean) {
        auto it = by_key.find({c.student_id, c.exam});
        if (it == by_key.end()) {
            fail(Errc::MissingGrade,
                 "no session/grade for (" + c.student_id + ", " + exam_token(c.exam) + ")");
        }
        LabeledExample ex;
        ex.student_id = c.student_id;
        ex.exam = c.exam;
        ex.features = build_supervector(c.recordings);
        ex.percent = it->second->grade.percent();
        ex.label = binarize_label(ex.percent, threshold);
        examples.push_back(std::move(ex));
    }
    return examples;
}

} // namespace physio
