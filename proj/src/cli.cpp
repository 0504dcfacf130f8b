#include "physiograde/cli.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "physiograde/error.hpp"
#include "physiograde/evaluation.hpp"
#include "physiograde/ingest.hpp"
#include "physiograde/report.hpp"
#include "physiograde/synth.hpp"
#include "physiograde/text.hpp"

namespace physio {

namespace fs = std::filesystem;

namespace {

struct DatasetInputs {
    DatasetManifest manifest;
    std::vector<GradeRecord> roster;
};

DatasetInputs load_inputs(const RunConfig& config) {
    if (config.dataset_root.empty()) fail(Errc::ConfigError, "dataset.root is not set");
    if (config.roster_path.empty()) fail(Errc::ConfigError, "dataset.roster is not set");
    DatasetInputs inputs;
    inputs.manifest = discover_manifest(config.dataset_root, config.exclusions);
    inputs.roster = parse_grade_roster(read_text_file(config.roster_path));
    return inputs;
}

std::vector<Session> load_sessions(const RunConfig& config) {
    DatasetInputs inputs = load_inputs(config);
    return assemble_sessions(inputs.manifest, inputs.roster);
}

} // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    DatasetInputs inputs;
    try {
        inputs = load_inputs(config);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Errc::ConfigError ? kExitUsageError : kExitDomainError;
    }

    std::set<std::string> excluded(config.exclusions.begin(), config.exclusions.end());
    std::map<std::pair<std::string, ExamKind>, const ManifestEntry*> entries;
    std::set<std::string> students;
    for (const ManifestEntry& entry : inputs.manifest.entries) {
        if (excluded.count(entry.student_id)) continue;
        entries[{entry.student_id, entry.exam}] = &entry;
        students.insert(entry.student_id);
    }
    std::set<std::pair<std::string, ExamKind>> graded;
    for (const GradeRecord& rec : inputs.roster) graded.insert({rec.student_id, rec.exam});

    std::vector<std::string> defects;
    std::size_t sessions = 0;
    for (const std::string& student : students) {
        for (ExamKind exam : kExamOrder) {
            auto it = entries.find({student, exam});
            fs::path exam_dir = inputs.manifest.root / student / exam_dir_name(exam);
            if (it == entries.end()) {
                defects.push_back("IncompleteSession: " + exam_dir.string() + " is missing");
                continue;
            }
            bool complete = true;
            for (SignalKind kind : kSignalOrder) {
                auto file_it = it->second->signal_files.find(kind);
                if (file_it == it->second->signal_files.end()) {
                    defects.push_back("IncompleteSession: " +
                                      (exam_dir / signal_file_name(kind)).string() +
                                      " is missing");
                    complete = false;
                    continue;
                }
                try {
                    parse_sensor_csv(read_text_file(file_it->second), kind);
                } catch (const Error& e) {
                    defects.push_back(file_it->second.string() + ": " + e.what());
                    complete = false;
                }
            }
            if (!graded.count({student, exam})) {
                defects.push_back("MissingGrade: no roster row for (" + student + ", " +
                                  exam_token(exam) + ")");
                complete = false;
            }
            if (complete) ++sessions;
        }
    }
    if (students.empty()) {
        defects.push_back("IncompleteSession: no student directories under " +
                          inputs.manifest.root.string());
    }

    for (const std::string& defect : defects) out << "defect: " << defect << "\n";
    if (defects.empty()) {
        out << sessions << " sessions OK\n";
        return kExitOk;
    }
    out << defects.size() << " defect" << (defects.size() == 1 ? "" : "s") << " found\n";
    return kExitDomainError;
}

int cmd_features(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Session> sessions = load_sessions(config);
        std::vector<CleanSession> clean = preprocess_all(sessions, config.preprocess);
        std::vector<LabeledExample> examples = label_examples(clean, sessions, config.threshold);
        std::string csv = render_features_csv(examples);

        fs::create_directories(config.output_dir);
        fs::path path = config.output_dir / "features.csv";
        write_text_file(path, csv);
        out << "wrote " << examples.size() << " rows to " << path.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Errc::ConfigError ? kExitUsageError : kExitDomainError;
    }
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Session> sessions = load_sessions(config);
        std::vector<ClassifierSpec> specs = enabled_specs(config);
        EvalSummary summary = run_experiment(sessions, config.preprocess, specs,
                                             config.threshold, config.repetitions,
                                             config.base_seed);

        // Render everything before touching the filesystem.
        std::string results_md = render_results_md(summary);
        std::string results_csv = render_results_csv(summary);
        std::string svg = render_roc_svg(summary);
        std::map<std::string, std::string> roc_csvs;
        for (const ClassifierSummary& cs : summary.classifiers) {
            roc_csvs["roc_" + cs.name + ".csv"] = render_roc_csv(cs.pooled_roc);
        }

        fs::create_directories(config.output_dir);
        write_text_file(config.output_dir / "results.md", results_md);
        write_text_file(config.output_dir / "results.csv", results_csv);
        write_text_file(config.output_dir / "roc.svg", svg);
        for (const auto& [name, contents] : roc_csvs) {
            write_text_file(config.output_dir / name, contents);
        }

        out << results_md;
        out << "artifacts written to " << config.output_dir.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Errc::ConfigError ? kExitUsageError : kExitDomainError;
    }
}

int cmd_synth(std::uint64_t seed, int n_students, double correlation,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err) {
    try {
        SyntheticDataset dataset = generate_synthetic_dataset(seed, n_students, correlation);
        std::map<std::string, std::string> files = dataset.to_files();

        if (fs::exists(out_dir) && !fs::is_empty(out_dir)) {
            fail(Errc::InvalidArgument,
                 "refusing to write into non-empty directory " + out_dir.string());
        }
        for (const auto& [rel, contents] : files) {
            fs::path path = out_dir / rel;
            fs::create_directories(path.parent_path());
            write_text_file(path, contents);
        }
        out << "wrote " << files.size() << " files to " << out_dir.string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Errc::ConfigError ? kExitUsageError : kExitDomainError;
    }
}

} // namespace physio
