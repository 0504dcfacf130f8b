// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line so the full gate is readable from the ctest log.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "physiograde/cli.hpp"
#include "physiograde/evaluation.hpp"
#include "physiograde/ingest.hpp"
#include "physiograde/rng.hpp"
#include "physiograde/synth.hpp"
#include "physiograde/text.hpp"
#include "testutil.hpp"

using namespace physio;

namespace {

void report(int criterion, const char* label, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d (%s): %s%s%s\n", criterion, label, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<ScoredPrediction> random_predictions(Rng& rng, int max_n) {
    int n = rng.uniform_int(2, max_n);
    std::vector<ScoredPrediction> preds;
    for (int i = 0; i < n; ++i) {
        // Coarse grid scores make ties deliberate and frequent.
        preds.push_back({rng.uniform_int(0, 4) / 4.0, rng.uniform_int(0, 1) == 1, "S",
                         ExamKind::Midterm1});
    }
    preds[0].label = true;
    preds[std::size_t(n - 1)].label = false;
    return preds;
}

const ClassifierSummary& find_classifier(const EvalSummary& summary, const std::string& name) {
    for (const ClassifierSummary& cs : summary.classifiers) {
        if (cs.name == name) return cs;
    }
    throw std::runtime_error("classifier missing from summary: " + name);
}

} // namespace

TEST_CASE("criterion 1: rank AUC equals exhaustive pair counting") {
    auto start = std::chrono::steady_clock::now();
    Rng rng(1001);
    bool values_match = true;
    for (int trial = 0; trial < 1000; ++trial) {
        auto preds = random_predictions(rng, 12);
        if (std::abs(roc_auc(preds) - oracles::auc_pair_count(preds)) > 1e-12) {
            values_match = false;
        }
    }
    double elapsed = seconds_since(start);
    bool ok = values_match && elapsed < 5.0;
    report(1, "AUC oracle equivalence, 1000 sets", ok,
           "elapsed " + fmt_fixed(elapsed, 2) + " s");
    CHECK(ok);
}

TEST_CASE("criterion 2: trapezoidal ROC area equals rank AUC") {
    Rng rng(1002);
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        auto preds = random_predictions(rng, 12);
        double area = oracles::trapezoid_area(roc_curve(preds));
        if (std::abs(area - roc_auc(preds)) > 1e-12) ok = false;
    }
    report(2, "ROC curve consistency, 1000 sets", ok);
    CHECK(ok);
}

TEST_CASE("criterion 3: KNN score matches brute-force enumeration") {
    Rng rng(1003);
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        int n = rng.uniform_int(2, 50);
        std::vector<LabeledExample> train;
        for (int i = 0; i < n; ++i) {
            FeatureVector v;
            for (double& value : v.values) value = rng.normal(0.0, 1.0);
            train.push_back(testutil::example(v, rng.uniform_int(0, 1) == 1));
        }
        train[0].label = true;
        train[std::size_t(n - 1)].label = false;
        int k = rng.uniform_int(1, n);
        TrainedModel model = fit(KnnSpec{k}, train, 0);
        FeatureVector query;
        for (double& value : query.values) value = rng.normal(0.0, 1.0);
        if (score(model, query) != oracles::knn_score_bruteforce(train, query, k)) ok = false;
    }
    report(3, "KNN oracle, 500 instances", ok);
    CHECK(ok);
}

TEST_CASE("criterion 4: SMO against the projected-gradient QP oracle") {
    Rng rng(1004);
    bool objective_ok = true, constraints_ok = true;
    double worst_gap = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.uniform_int(4, 8);
        std::vector<FeatureVector> x(static_cast<std::size_t>(n));
        std::vector<int> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (double& v : x[std::size_t(i)].values) v = rng.uniform(0.0, 2.0);
            y[std::size_t(i)] = rng.uniform_int(0, 1) == 1 ? 1 : -1;
        }
        y[0] = 1;
        y[1] = -1;
        double c = std::vector<double>{0.5, 1.0, 2.0}[std::size_t(rng.uniform_int(0, 2))];
        double gamma = rng.uniform(0.05, 0.3);

        SmoResult smo = smo_train(x, y, c, gamma, 1e-4, 200);
        double alpha_dot_y = 0.0;
        for (int i = 0; i < n; ++i) {
            if (smo.alpha[std::size_t(i)] < 0.0 || smo.alpha[std::size_t(i)] > c) {
                constraints_ok = false;
            }
            alpha_dot_y += smo.alpha[std::size_t(i)] * y[std::size_t(i)];
        }
        if (std::abs(alpha_dot_y) >= 1e-9) constraints_ok = false;

        double gap = std::abs(svm_dual_objective(x, y, smo.alpha, gamma) -
                              oracles::svm_dual_max_projected_gradient(x, y, c, gamma));
        worst_gap = std::max(worst_gap, gap);
        if (gap >= 1e-4) objective_ok = false;
    }

    // Linearly separable four-point problem: training AUC 1.0.
    std::vector<LabeledExample> train = {
        testutil::example(testutil::fv({0.0, 0.0}), false),
        testutil::example(testutil::fv({0.0, 1.0}), false),
        testutil::example(testutil::fv({3.0, 0.5}), true),
        testutil::example(testutil::fv({3.0, 1.5}), true),
    };
    SvmSpec spec;
    spec.gamma = GammaRule::fixed(0.5);
    TrainedModel model = fit(spec, train, 0);
    std::vector<ScoredPrediction> preds;
    for (const LabeledExample& ex : train) {
        preds.push_back({score(model, ex.features), ex.label, ex.student_id, ex.exam});
    }
    bool separable_ok = roc_auc(preds) == 1.0;

    bool ok = objective_ok && constraints_ok && separable_ok;
    report(4, "SVM optimizer, 200 QP problems", ok,
           "worst objective gap " + fmt_double(worst_gap));
    CHECK(ok);
}

TEST_CASE("criterion 5: SGD gradient against central finite differences") {
    Rng rng(1005);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, kFeatureDim> w{};
        for (double& v : w) v = rng.normal(0.0, 0.5);
        double b = rng.normal(0.0, 0.5);
        FeatureVector x;
        for (double& v : x.values) v = rng.normal(0.0, 1.0);
        bool y = rng.uniform_int(0, 1) == 1;
        double l2 = rng.uniform(0.0, 0.01);

        auto [gw, gb] = sgd_example_gradient(w, b, x, y, l2);
        auto [fw, fb] = oracles::sgd_gradient_fd(w, b, x, y, l2, 1e-5);
        for (int i = 0; i < kFeatureDim; ++i) {
            double denom = std::max(std::abs(fw[std::size_t(i)]), 1e-6);
            if (std::abs(gw[std::size_t(i)] - fw[std::size_t(i)]) / denom >= 1e-4) ok = false;
        }
        if (std::abs(gb - fb) / std::max(std::abs(fb), 1e-6) >= 1e-4) ok = false;
    }
    report(5, "SGD gradient check, 100 points", ok);
    CHECK(ok);
}

TEST_CASE("criterion 6: preprocessing oracles") {
    Rng rng(1006);
    bool ma_ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        int n = rng.uniform_int(1, 128);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& v : x) v = rng.normal(0.0, 5.0);
        int window = 1 + 2 * rng.uniform_int(0, 8);
        if (moving_average(x, window) != oracles::moving_average_naive(x, window)) ma_ok = false;
    }

    SyntheticDataset dataset = generate_synthetic_dataset(7, 4, 0.5);
    PreprocessConfig config;
    config.norm_scope = NormScope::PerSessionSignal;
    bool norm_ok = true;
    for (const CleanSession& cs : preprocess_all(dataset.sessions, config)) {
        for (const auto& [kind, rec] : cs.recordings) {
            ZNormParams p = compute_znorm_params(rec.samples);
            if (std::abs(p.mu) >= 1e-9 || std::abs(p.sigma - 1.0) >= 1e-9) norm_ok = false;
        }
    }
    bool ok = ma_ok && norm_ok;
    report(6, "moving average + z-normalization", ok);
    CHECK(ok);
}

TEST_CASE("criterion 7: leave-one-student-out fold protocol") {
    SyntheticDataset dataset = generate_synthetic_dataset(7, 10, 1.0);
    std::vector<CleanSession> clean = preprocess_all(dataset.sessions, PreprocessConfig{});
    std::vector<LabeledExample> examples = label_examples(clean, dataset.sessions, 80.0);
    FoldPlan plan = loso_folds(examples);

    bool ok = plan.size() == 10;
    std::vector<std::size_t> coverage;
    for (const Fold& fold : plan) {
        if (fold.train_indices.size() != 27 || fold.test_indices.size() != 3) ok = false;
        for (std::size_t idx : fold.test_indices) {
            if (examples[idx].student_id != fold.held_out_student) ok = false;
            coverage.push_back(idx);
        }
        for (std::size_t idx : fold.train_indices) {
            if (examples[idx].student_id == fold.held_out_student) ok = false;
        }
    }
    std::sort(coverage.begin(), coverage.end());
    for (std::size_t i = 0; i < coverage.size(); ++i) {
        if (coverage[i] != i) ok = false;
    }
    report(7, "10 folds of 27/3, zero leakage", ok);
    CHECK(ok);
}

TEST_CASE("criterion 8: end-to-end signal detection on the correlated cohort") {
    auto start = std::chrono::steady_clock::now();
    SyntheticDataset dataset = generate_synthetic_dataset(7, 10, 1.0);
    RunConfig defaults;
    EvalSummary summary =
        run_experiment(dataset.sessions, defaults.preprocess, enabled_specs(defaults),
                       defaults.threshold, defaults.repetitions, defaults.base_seed);
    double elapsed = seconds_since(start);

    double knn = find_classifier(summary, "knn").mean_auc;
    double svm = find_classifier(summary, "svm").mean_auc;
    bool ok = knn >= 0.9 && svm >= 0.9 && elapsed < 60.0;
    report(8, "correlation 1.0: KNN/SVM pooled AUC >= 0.9", ok,
           "knn " + fmt_fixed(knn, 3) + ", svm " + fmt_fixed(svm, 3) + ", elapsed " +
               fmt_fixed(elapsed, 1) + " s");
    CHECK(ok);
}

TEST_CASE("criterion 9: end-to-end null cohort stays at chance level") {
    SyntheticDataset dataset = generate_synthetic_dataset(7, 10, 0.0);
    RunConfig defaults;
    EvalSummary summary =
        run_experiment(dataset.sessions, defaults.preprocess, enabled_specs(defaults),
                       defaults.threshold, 10, defaults.base_seed);
    bool ok = true;
    std::string detail;
    for (const ClassifierSummary& cs : summary.classifiers) {
        if (cs.mean_auc < 0.35 || cs.mean_auc > 0.65) ok = false;
        if (!detail.empty()) detail += ", ";
        detail += cs.name + " " + fmt_fixed(cs.mean_auc, 3);
    }
    report(9, "correlation 0.0: all classifiers in [0.35, 0.65]", ok, detail);
    CHECK(ok);
}

TEST_CASE("criterion 10: byte-identical artifacts and zero deterministic std") {
    testutil::TempDir dir("acceptance_det");
    std::ostringstream out, err;
    bool ok = cmd_synth(7, 10, 1.0, dir.path / "data", out, err) == kExitOk;

    RunConfig config;
    config.dataset_root = dir.path / "data";
    config.roster_path = dir.path / "data" / "roster.csv";

    config.output_dir = dir.path / "out_a";
    ok = ok && cmd_evaluate(config, out, err) == kExitOk;
    config.output_dir = dir.path / "out_b";
    ok = ok && cmd_evaluate(config, out, err) == kExitOk;

    for (const char* name : {"results.csv", "roc.svg"}) {
        if (read_text_file(dir.path / "out_a" / name) !=
            read_text_file(dir.path / "out_b" / name)) {
            ok = false;
        }
    }

    // KNN and SVM have no stochastic component: their per-repetition AUC
    // std must be exactly zero in the emitted CSV.
    auto lines = split_lines(read_text_file(dir.path / "out_a" / "results.csv"));
    bool saw_knn = false, saw_svm = false;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        auto cols = split(lines[row], ',');
        if (cols[0] == "knn" || cols[0] == "svm") {
            (cols[0] == "knn" ? saw_knn : saw_svm) = true;
            if (cols[2] != "0") ok = false;
        }
    }
    ok = ok && saw_knn && saw_svm;
    report(10, "determinism: identical bytes, std 0.00 for KNN/SVM", ok);
    CHECK(ok);
}

TEST_CASE("criterion 11: best-effort reproduction on the public dataset") {
    // Non-gating. Runs only when the converted dataset is provided; see
    // docs/reproduction.md for the layout and the recorded outcome.
    const char* root = std::getenv("PHYSIOGRADE_REAL_DATASET");
    if (root == nullptr || !std::filesystem::is_directory(root)) {
        report(11, "reproduction target", true, "SKIPPED: set PHYSIOGRADE_REAL_DATASET to run");
        CHECK(true);
        return;
    }
    RunConfig config;
    config.dataset_root = root;
    config.roster_path = std::filesystem::path(root) / "roster.csv";
    DatasetManifest manifest = discover_manifest(config.dataset_root, config.exclusions);
    auto roster = parse_grade_roster(read_text_file(config.roster_path));
    std::vector<Session> sessions = assemble_sessions(manifest, roster);
    EvalSummary summary = run_experiment(sessions, config.preprocess, enabled_specs(config),
                                         config.threshold, config.repetitions, config.base_seed);
    double knn = find_classifier(summary, "knn").mean_auc;
    bool ok = std::abs(knn - 0.81) <= 0.15;
    report(11, "reproduction target", ok,
           "knn mean pooled AUC " + fmt_fixed(knn, 3) + " vs published 0.81 +/- 0.15");
    CHECK(ok);
}
