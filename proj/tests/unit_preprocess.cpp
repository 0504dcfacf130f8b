#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "physiograde/error.hpp"
#include "physiograde/preprocess.hpp"
#include "physiograde/rng.hpp"
#include "physiograde/synth.hpp"
#include "testutil.hpp"

using namespace physio;
using testutil::thrown_code;

namespace {

Session three_channel_session(double start_a, std::size_t n_a, double start_b, std::size_t n_b,
                              double start_c, std::size_t n_c) {
    // 1 Hz everywhere so sample index == offset in seconds.
    Session s;
    s.student_id = "S1";
    s.exam = ExamKind::Midterm1;
    auto ramp = [](std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = double(i);
        return v;
    };
    s.recordings[SignalKind::SkinTemperature] =
        testutil::recording(SignalKind::SkinTemperature, start_a, 1.0, ramp(n_a));
    s.recordings[SignalKind::HeartRate] =
        testutil::recording(SignalKind::HeartRate, start_b, 1.0, ramp(n_b));
    s.recordings[SignalKind::ElectrodermalActivity] =
        testutil::recording(SignalKind::ElectrodermalActivity, start_c, 1.0, ramp(n_c));
    s.grade = {"S1", ExamKind::Midterm1, 90.0, 100.0};
    return s;
}

} // namespace

TEST_CASE("trim keeps aligned recordings untouched") {
    Session s = three_channel_session(0.0, 10, 0.0, 10, 0.0, 10);
    Session t = trim_to_common_window(s);
    for (const auto& [kind, rec] : t.recordings) {
        CHECK(rec.samples == s.recordings.at(kind).samples);
        CHECK(rec.start_epoch == s.recordings.at(kind).start_epoch);
    }
}

TEST_CASE("trim clips to the latest start and earliest end") {
    // A covers [0,9], B covers [2,11], C covers [0,11]; common window [2,9].
    Session s = three_channel_session(0.0, 10, 2.0, 10, 0.0, 12);
    Session t = trim_to_common_window(s);

    const auto& a = t.recordings.at(SignalKind::SkinTemperature);
    CHECK(a.samples.size() == 8);
    CHECK(a.start_epoch == 2.0);
    CHECK(a.samples.front() == 2.0);
    CHECK(a.samples.back() == 9.0);

    const auto& b = t.recordings.at(SignalKind::HeartRate);
    CHECK(b.samples.size() == 8);
    CHECK(b.start_epoch == 2.0);
    CHECK(b.samples.front() == 0.0);
    CHECK(b.samples.back() == 7.0);

    const auto& c = t.recordings.at(SignalKind::ElectrodermalActivity);
    CHECK(c.samples.size() == 8);
    CHECK(c.start_epoch == 2.0);
    CHECK(c.samples.front() == 2.0);
    CHECK(c.samples.back() == 9.0);
}

TEST_CASE("disjoint recordings have no common window") {
    Session s = three_channel_session(0.0, 6, 6.0, 5, 0.0, 11);
    CHECK(thrown_code([&] { trim_to_common_window(s); }) == Errc::NoCommonWindow);
}

TEST_CASE("trim never lengthens a recording and preserves values") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        Session s = three_channel_session(rng.uniform(0, 5), std::size_t(rng.uniform_int(8, 20)),
                                          rng.uniform(0, 5), std::size_t(rng.uniform_int(8, 20)),
                                          rng.uniform(0, 5), std::size_t(rng.uniform_int(8, 20)));
        Session t = trim_to_common_window(s);
        for (const auto& [kind, rec] : t.recordings) {
            const auto& original = s.recordings.at(kind).samples;
            CHECK(rec.samples.size() <= original.size());
            // Kept samples are a contiguous run of the originals.
            auto it = std::search(original.begin(), original.end(), rec.samples.begin(),
                                  rec.samples.end());
            CHECK(it != original.end());
        }
    }
}

TEST_CASE("moving_average window 1 is the identity") {
    std::vector<double> x = {3.5, -1.0, 2.25};
    CHECK(moving_average(x, 1) == x);
}

TEST_CASE("moving_average matches the hand-computed example") {
    std::vector<double> x = {0, 3, 0, 3, 0};
    std::vector<double> expected = {1.5, 1.0, 2.0, 1.0, 1.5};
    CHECK(moving_average(x, 3) == expected);
}

TEST_CASE("moving_average of a constant sequence is unchanged") {
    std::vector<double> x(7, 4.25);
    CHECK(moving_average(x, 5) == x);
}

TEST_CASE("moving_average rejects even or non-positive windows") {
    std::vector<double> x = {1, 2, 3};
    for (int w : {0, -3, 2, 4}) {
        CHECK(thrown_code([&] { moving_average(x, w); }) == Errc::InvalidWindow);
    }
    CHECK(thrown_code([] { moving_average(std::vector<double>{}, 3); }) == Errc::EmptyInput);
}

TEST_CASE("moving_average equals the naive per-index oracle exactly") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int n = rng.uniform_int(1, 64);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& v : x) v = rng.normal(0.0, 3.0);
        int window = 1 + 2 * rng.uniform_int(0, 6);
        CHECK(moving_average(x, window) == oracles::moving_average_naive(x, window));
    }
}

TEST_CASE("moving_average stays within the input range and is shift-equivariant inside") {
    Rng rng(13);
    std::vector<double> x(40);
    for (double& v : x) v = rng.uniform(-5.0, 5.0);
    int window = 5, half = 2;

    std::vector<double> y = moving_average(x, window);
    double lo = *std::min_element(x.begin(), x.end());
    double hi = *std::max_element(x.begin(), x.end());
    for (double v : y) {
        CHECK(v >= lo);
        CHECK(v <= hi);
    }

    std::vector<double> shifted(x.begin() + 1, x.end());
    std::vector<double> ys = moving_average(shifted, window);
    for (std::size_t i = std::size_t(half); i + std::size_t(half) < shifted.size(); ++i) {
        CHECK(ys[i] == doctest::Approx(y[i + 1]).epsilon(1e-12));
    }
}

TEST_CASE("compute_znorm_params uses the population convention") {
    ZNormParams p = compute_znorm_params(std::vector<double>{1, 2, 3});
    CHECK(p.mu == 2.0);
    CHECK(p.sigma == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));

    ZNormParams single = compute_znorm_params(std::vector<double>{4.5});
    CHECK(single.mu == 4.5);
    CHECK(single.sigma == 0.0);

    ZNormParams constant = compute_znorm_params(std::vector<double>{5, 5, 5});
    CHECK(constant.mu == 5.0);
    CHECK(constant.sigma == 0.0);

    CHECK(thrown_code([] { compute_znorm_params(std::vector<double>{}); }) == Errc::EmptyInput);
}

TEST_CASE("apply_znorm standardizes and rejects zero sigma") {
    std::vector<double> x = {1, 2, 3};
    std::vector<double> z = apply_znorm(x, compute_znorm_params(x));
    REQUIRE(z.size() == 3);
    CHECK(z[0] == doctest::Approx(-1.224745).epsilon(1e-6));
    CHECK(z[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z[2] == doctest::Approx(1.224745).epsilon(1e-6));

    std::vector<double> already = {-1.0, 1.0};
    CHECK(apply_znorm(already, {0.0, 1.0}) == already);

    CHECK(thrown_code([&] { apply_znorm(x, {2.0, 0.0}); }) == Errc::DegenerateSignal);
}

TEST_CASE("z-normalization inverts within 1e-12 relative error") {
    Rng rng(99);
    std::vector<double> x(50);
    for (double& v : x) v = rng.normal(33.0, 2.0);
    ZNormParams p = compute_znorm_params(x);
    std::vector<double> z = apply_znorm(x, p);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double back = z[i] * p.sigma + p.mu;
        CHECK(std::abs(back - x[i]) <= 1e-12 * std::max(1.0, std::abs(x[i])));
    }
}

TEST_CASE("per-session scope yields mean 0 and std 1 per recording") {
    SyntheticDataset dataset = generate_synthetic_dataset(5, 3, 0.8);
    PreprocessConfig config;
    config.norm_scope = NormScope::PerSessionSignal;
    std::vector<CleanSession> clean = preprocess_all(dataset.sessions, config);
    REQUIRE(clean.size() == 9);
    for (const CleanSession& cs : clean) {
        for (const auto& [kind, rec] : cs.recordings) {
            ZNormParams p = compute_znorm_params(rec.samples);
            CHECK(std::abs(p.mu) < 1e-9);
            CHECK(std::abs(p.sigma - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("pooled scope standardizes the student pool, not each exam") {
    SyntheticDataset dataset = generate_synthetic_dataset(5, 3, 1.0);
    PreprocessConfig config; // default PerStudentPooled
    std::vector<CleanSession> clean = preprocess_all(dataset.sessions, config);

    for (std::string student : {"S01", "S02", "S03"}) {
        for (SignalKind kind : kSignalOrder) {
            std::vector<double> pool;
            double max_exam_mean = 0.0;
            for (const CleanSession& cs : clean) {
                if (cs.student_id != student) continue;
                const auto& samples = cs.recordings.at(kind).samples;
                pool.insert(pool.end(), samples.begin(), samples.end());
                max_exam_mean =
                    std::max(max_exam_mean, std::abs(compute_znorm_params(samples).mu));
            }
            ZNormParams pooled = compute_znorm_params(pool);
            CHECK(std::abs(pooled.mu) < 1e-9);
            CHECK(std::abs(pooled.sigma - 1.0) < 1e-9);
            // Individual exams keep their offsets relative to the pool.
            CHECK(max_exam_mean > 1e-3);
        }
    }
}

TEST_CASE("window 1 with per-session scope reduces to trim plus znorm") {
    SyntheticDataset dataset = generate_synthetic_dataset(17, 2, 0.5);
    std::vector<Session> one = {dataset.sessions[0]};
    PreprocessConfig config;
    config.ma_window = 1;
    config.norm_scope = NormScope::PerSessionSignal;
    std::vector<CleanSession> clean = preprocess_all(one, config);

    Session trimmed = trim_to_common_window(one[0]);
    for (const auto& [kind, rec] : trimmed.recordings) {
        std::vector<double> expected = apply_znorm(rec.samples, compute_znorm_params(rec.samples));
        CHECK(clean[0].recordings.at(kind).samples == expected);
    }
}

TEST_CASE("preprocess_all diagnostics name the session") {
    // Constant EDA channel -> degenerate under per-session scope.
    Session s = testutil::session("S9", ExamKind::Final, 85.0, {33, 34, 33, 34, 33},
                                  {70, 71, 72, 71, 70}, {2, 2, 2, 2, 2});
    PreprocessConfig config;
    config.norm_scope = NormScope::PerSessionSignal;
    std::string message;
    try {
        preprocess_all(std::vector<Session>{s}, config);
    } catch (const Error& e) {
        message = e.what();
        CHECK(e.code() == Errc::DegenerateSignal);
    }
    CHECK(message.find("S9") != std::string::npos);
    CHECK(message.find("final") != std::string::npos);
    CHECK(message.find("eda") != std::string::npos);

    // Pooled scope reports the student and signal.
    PreprocessConfig pooled;
    message.clear();
    try {
        preprocess_all(std::vector<Session>{s}, pooled);
    } catch (const Error& e) {
        message = e.what();
        CHECK(e.code() == Errc::DegenerateSignal);
    }
    CHECK(message.find("S9") != std::string::npos);
    CHECK(message.find("eda") != std::string::npos);
}

TEST_CASE("preprocess_all output is independent of session order") {
    SyntheticDataset dataset = generate_synthetic_dataset(23, 3, 0.7);
    PreprocessConfig config;
    std::vector<Session> shuffled = dataset.sessions;
    std::reverse(shuffled.begin(), shuffled.end());

    std::vector<CleanSession> a = preprocess_all(dataset.sessions, config);
    std::vector<CleanSession> b = preprocess_all(shuffled, config);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].student_id == b[i].student_id);
        CHECK(a[i].exam == b[i].exam);
        for (const auto& [kind, rec] : a[i].recordings) {
            CHECK(rec.samples == b[i].recordings.at(kind).samples);
        }
    }
}
