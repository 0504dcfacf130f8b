#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "physiograde/types.hpp"

namespace physio {

/// Deterministic synthetic cohort for tests and demos.
///
/// Every student gets three exams with temperature/EDA at 4 Hz and heart rate
/// at 1 Hz, each recording at least 60 s long, with per-signal start jitter so
/// the common-window trim has work to do. Labels (grade > 80%) come from an
/// RNG stream separate from the signal streams; `signal_label_correlation`
/// scales a per-signal offset added to positive-label sessions. At
/// correlation 1.0 the raw per-session mean of each signal (EDA mean is the
/// documented guarantee) of every positive session strictly exceeds that of
/// every negative session; at 0.0 signals carry no label information. Each
/// student always has at least one session of each class.
struct SyntheticDataset {
    std::vector<Session> sessions; // sorted by (student_id, exam)

    /// Canonical on-disk layout: "<student>/<Exam>/<SIGNAL>.csv" plus
    /// "roster.csv", as relative path -> file bytes.
    std::map<std::string, std::string> to_files() const;
};

SyntheticDataset generate_synthetic_dataset(std::uint64_t seed, int n_students,
                                            double signal_label_correlation);

} // namespace physio
