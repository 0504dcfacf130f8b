#include "physiograde/synth.hpp"

#include <algorithm>
#include <cmath>

#include "physiograde/error.hpp"
#include "physiograde/ingest.hpp"
#include "physiograde/rng.hpp"
#include "physiograde/text.hpp"

namespace physio {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct SignalShape {
    double level_lo, level_hi; // per-student base level range
    double wobble;             // per-session level shift
    double drift_amp;          // slow sine amplitude
    double noise_sd;
    double label_offset; // added to positive sessions, scaled by correlation
    double rate_hz;
    double floor; // physical lower bound, NaN = none
};

// Offsets exceed the base-level range plus wobble and drift so that at
// correlation 1.0 the per-session raw mean separates the classes strictly.
SignalShape shape_for(SignalKind kind) {
    switch (kind) {
        case SignalKind::SkinTemperature:
            return {33.0, 34.0, 0.20, 0.30, 0.05, 2.0, 4.0, std::nan("")};
        case SignalKind::HeartRate:
            return {68.0, 80.0, 2.00, 4.00, 1.50, 18.0, 1.0, std::nan("")};
        case SignalKind::ElectrodermalActivity:
            return {1.0, 2.0, 0.15, 0.30, 0.05, 3.0, 4.0, 0.01};
    }
    return {};
}

std::string student_label(int index, int n_students) {
    int width = 2;
    for (int v = n_students; v >= 100; v /= 10) ++width;
    std::string digits = std::to_string(index);
    return "S" + std::string(std::size_t(width) - digits.size(), '0') + digits;
}

} // namespace

SyntheticDataset generate_synthetic_dataset(std::uint64_t seed, int n_students,
                                            double signal_label_correlation) {
    if (n_students < 2) {
        fail(Errc::InvalidArgument,
             "need at least 2 students, got " + std::to_string(n_students));
    }
    if (!(signal_label_correlation >= 0.0 && signal_label_correlation <= 1.0)) {
        fail(Errc::InvalidArgument, "correlation must lie in [0, 1]");
    }

    SyntheticDataset dataset;
    // Labels and grades come from their own stream so that at correlation 0
    // they are independent of the signals by construction.
    Rng label_rng(derive_seed(seed, 0xA1));

    // Every student gets the same number of positive sessions (one or two,
    // drawn once per dataset) at per-student shuffled exam positions. The
    // shared count keeps each leave-one-student-out fold's training prior
    // identical, so a null dataset scores at chance instead of inheriting an
    // anti-correlation between fold priors and held-out labels; the mix also
    // preserves a within-student contrast for pooled normalization.
    std::vector<std::array<bool, 3>> labels(static_cast<std::size_t>(n_students));
    int n_positive = 1 + label_rng.uniform_int(0, 1);
    for (auto& positive : labels) {
        std::vector<int> exam_order = {0, 1, 2};
        label_rng.shuffle(exam_order);
        for (int i = 0; i < n_positive; ++i) {
            positive[std::size_t(exam_order[std::size_t(i)])] = true;
        }
    }

    for (int s = 1; s <= n_students; ++s) {
        std::string student = student_label(s, n_students);
        const std::array<bool, 3>& positive = labels[std::size_t(s - 1)];

        std::array<int, 3> percent{};
        for (int e = 0; e < 3; ++e) {
            percent[std::size_t(e)] = positive[std::size_t(e)] ? label_rng.uniform_int(82, 97)
                                                               : label_rng.uniform_int(60, 78);
        }

        Rng student_rng(derive_seed(seed, 0xC300 + std::uint64_t(s)));
        std::map<SignalKind, double> level;
        for (SignalKind kind : kSignalOrder) {
            SignalShape shape = shape_for(kind);
            level[kind] = student_rng.uniform(shape.level_lo, shape.level_hi);
        }

        for (int e = 0; e < 3; ++e) {
            ExamKind exam = kExamOrder[std::size_t(e)];
            Session session;
            session.student_id = student;
            session.exam = exam;
            // The final exam is scored out of 200 to exercise percent-based
            // label comparison against mixed maxima.
            double max_score = exam == ExamKind::Final ? 200.0 : 100.0;
            session.grade = {student, exam, percent[std::size_t(e)] * max_score / 100.0,
                             max_score};

            for (int k = 0; k < 3; ++k) {
                SignalKind kind = kSignalOrder[std::size_t(k)];
                SignalShape shape = shape_for(kind);
                Rng rng(derive_seed(seed, 0xB200 + std::uint64_t((s * 3 + e) * 3 + k)));

                RawRecording rec;
                rec.kind = kind;
                rec.sample_rate = shape.rate_hz;
                double base_epoch = 1.6e9 + 86400.0 * s + 7200.0 * e;
                rec.start_epoch = base_epoch + 0.25 * rng.uniform_int(0, 8);
                int duration_s = 600 + rng.uniform_int(0, 30);
                std::size_t n_samples = std::size_t(duration_s * shape.rate_hz);

                double session_level = level[kind] + rng.uniform(-shape.wobble, shape.wobble);
                if (positive[std::size_t(e)]) {
                    session_level += signal_label_correlation * shape.label_offset;
                }
                double period = rng.uniform(120.0, 300.0);
                double phase = rng.uniform(0.0, kTwoPi);

                rec.samples.reserve(n_samples);
                for (std::size_t i = 0; i < n_samples; ++i) {
                    double t = double(i) / shape.rate_hz;
                    double v = session_level + shape.drift_amp * std::sin(kTwoPi * t / period + phase) +
                               rng.normal(0.0, shape.noise_sd);
                    if (!std::isnan(shape.floor)) v = std::max(v, shape.floor);
                    rec.samples.push_back(v);
                }
                session.recordings[kind] = std::move(rec);
            }
            dataset.sessions.push_back(std::move(session));
        }
    }

    std::sort(dataset.sessions.begin(), dataset.sessions.end(),
              [](const Session& a, const Session& b) {
                  return std::tie(a.student_id, a.exam) < std::tie(b.student_id, b.exam);
              });
    return dataset;
}

std::map<std::string, std::string> SyntheticDataset::to_files() const {
    std::map<std::string, std::string> files;
    std::vector<GradeRecord> roster;
    for (const Session& session : sessions) {
        std::string dir = session.student_id + "/" + exam_dir_name(session.exam);
        for (const auto& [kind, rec] : session.recordings) {
            files[dir + "/" + signal_file_name(kind)] = render_sensor_csv(rec);
        }
        roster.push_back(session.grade);
    }
    files["roster.csv"] = render_grade_roster(roster);
    return files;
}

} // namespace physio
