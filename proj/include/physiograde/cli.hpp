#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "physiograde/config.hpp"

namespace physio {

/// Exit codes shared by every subcommand: 0 success, 1 domain/validation
/// failure, 2 usage/config failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Checks dataset completeness, per-file parseability, and roster coverage;
/// prints one line per defect. Exit 0 iff fully valid.
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes <output_dir>/features.csv, rows sorted by (student_id, exam).
int cmd_features(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs the full experiment and writes results.md, results.csv,
/// roc_<classifier>.csv per enabled classifier, and roc.svg.
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Generates a synthetic dataset in canonical layout. Refuses to write into
/// an existing non-empty directory.
int cmd_synth(std::uint64_t seed, int n_students, double correlation,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

} // namespace physio
