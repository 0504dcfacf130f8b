#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "physiograde/types.hpp"

namespace physio {

/// Reference set for z-normalization. PerStudentPooled pools one student's
/// filtered samples of the same signal across all exams; PerSessionSignal
/// uses only the session's own samples (which pins the mean/std features of
/// every session to 0 and 1).
enum class NormScope { PerStudentPooled, PerSessionSignal };

struct PreprocessConfig {
    int ma_window = 5; // odd, >= 1, in samples
    NormScope norm_scope = NormScope::PerStudentPooled;
};

struct ZNormParams {
    double mu = 0.0;
    double sigma = 0.0; // population convention (divide by N)
};

/// A trimmed, filtered, normalized channel (samples are dimensionless).
struct CleanRecording {
    SignalKind kind = SignalKind::SkinTemperature;
    double start_epoch = 0.0;
    double sample_rate = 0.0;
    std::vector<double> samples;
};

struct CleanSession {
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
    std::map<SignalKind, CleanRecording> recordings;
};

/// Drops samples outside [latest start, earliest end] (closed interval) and
/// rebases each recording's start epoch onto its first kept sample.
Session trim_to_common_window(const Session& session);

/// Centered moving average, window truncated at the edges; output length
/// equals input length. Window must be odd and positive.
std::vector<double> moving_average(std::span<const double> samples, int window);

ZNormParams compute_znorm_params(std::span<const double> reference);

std::vector<double> apply_znorm(std::span<const double> samples, const ZNormParams& params);

/// Full per-session pipeline: trim, filter each signal, z-normalize per
/// norm_scope. Output is sorted by (student_id, exam) regardless of input
/// order. Sessions that cannot be preprocessed abort with a diagnostic
/// naming the student/exam/signal; nothing is silently dropped.
std::vector<CleanSession> preprocess_all(std::span<const Session> sessions,
                                         const PreprocessConfig& config);

} // namespace physio
