#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace physio {

/// The three wristband channels carried through the pipeline.
enum class SignalKind { SkinTemperature, HeartRate, ElectrodermalActivity };

/// Fixed channel order used for feature concatenation and reporting.
inline constexpr std::array<SignalKind, 3> kSignalOrder = {
    SignalKind::SkinTemperature,
    SignalKind::HeartRate,
    SignalKind::ElectrodermalActivity,
};

const char* signal_short_name(SignalKind kind); // "temp", "hr", "eda"
const char* signal_file_name(SignalKind kind);  // "TEMP.csv", "HR.csv", "EDA.csv"

enum class ExamKind { Midterm1, Midterm2, Final };

inline constexpr std::array<ExamKind, 3> kExamOrder = {
    ExamKind::Midterm1,
    ExamKind::Midterm2,
    ExamKind::Final,
};

const char* exam_token(ExamKind exam);    // "midterm1", "midterm2", "final"
const char* exam_dir_name(ExamKind exam); // "Midterm1", "Midterm2", "Final"
std::optional<ExamKind> exam_from_token(std::string_view token); // case-insensitive

/// One sensor channel of one student-exam session, as recorded.
struct RawRecording {
    SignalKind kind = SignalKind::SkinTemperature;
    double start_epoch = 0.0; // seconds since Unix epoch
    double sample_rate = 0.0; // Hz, > 0
    std::vector<double> samples;

    double sample_time(std::size_t i) const { return start_epoch + double(i) / sample_rate; }
    double end_epoch() const { return sample_time(samples.size() - 1); }

    bool operator==(const RawRecording&) const = default;
};

struct GradeRecord {
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
    double raw_score = 0.0;
    double max_score = 1.0;

    double percent() const { return 100.0 * raw_score / max_score; }

    bool operator==(const GradeRecord&) const = default;
};

/// A (student, exam) bundle: all three channels plus the grade.
struct Session {
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
    std::map<SignalKind, RawRecording> recordings;
    GradeRecord grade;
};

struct ManifestEntry {
    std::string student_id;
    ExamKind exam = ExamKind::Midterm1;
    std::map<SignalKind, std::filesystem::path> signal_files;
};

/// Result of walking a dataset root; exclusions are applied downstream.
struct DatasetManifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;
    std::vector<std::string> exclusions;
};

} // namespace physio
