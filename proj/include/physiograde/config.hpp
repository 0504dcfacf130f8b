#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "physiograde/classifiers.hpp"
#include "physiograde/preprocess.hpp"

namespace physio {

/// Everything a run needs. Populated from a flat `key = value` config file
/// plus command-line `key=value` overrides; unknown keys are an error.
struct RunConfig {
    std::filesystem::path dataset_root;
    std::filesystem::path roster_path;
    std::vector<std::string> exclusions;

    PreprocessConfig preprocess{};
    double threshold = 80.0;

    std::vector<std::string> enabled = {"rf", "sgd", "svm", "knn"};
    KnnSpec knn{};
    SvmSpec svm{};
    SgdSpec sgd{};
    RfSpec rf{};

    int repetitions = 10;
    std::uint64_t base_seed = 42;
    std::filesystem::path output_dir = "out";
};

/// Applies one dotted key. Throws Error(ConfigError) for unknown keys or
/// unparseable values.
void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value);

/// Parses config-file text: one `key = value` per line, '#' comments and
/// blank lines allowed.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// File (optional) first, then overrides in order. Validates invariants
/// (odd ma_window, repetitions >= 1, non-empty classifier set, ...).
RunConfig load_run_config(const std::filesystem::path* config_file,
                          std::span<const std::string> overrides);

void validate_config(const RunConfig& config);

/// Enabled classifier specs in canonical reporting order (rf, sgd, svm, knn).
std::vector<ClassifierSpec> enabled_specs(const RunConfig& config);

} // namespace physio
