#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "physiograde/types.hpp"

namespace physio {

/// Parses a sensor CSV: line 1 start epoch, line 2 sample rate (Hz), lines 3+
/// one sample per line. Accepts LF or CRLF; trailing blank lines are ignored.
RawRecording parse_sensor_csv(std::string_view text, SignalKind kind);

/// Inverse of parse_sensor_csv; numbers round-trip exactly.
std::string render_sensor_csv(const RawRecording& recording);

/// Parses the canonical roster CSV (header: student_id,exam,raw_score,max_score).
std::vector<GradeRecord> parse_grade_roster(std::string_view text);

std::string render_grade_roster(std::span<const GradeRecord> records);

/// Walks root/<student>/<exam>/{TEMP,HR,EDA}.csv and records what exists.
/// Completeness is enforced later, by assemble_sessions or cmd_validate.
DatasetManifest discover_manifest(const std::filesystem::path& root,
                                  std::vector<std::string> exclusions);

/// Loads every non-excluded session from disk. Requires three exams with
/// three parseable signal files per remaining student and a grade for each
/// (student, exam). Output is sorted by (student_id, exam).
std::vector<Session> assemble_sessions(const DatasetManifest& manifest,
                                       std::span<const GradeRecord> roster);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

} // namespace physio
