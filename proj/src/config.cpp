#include "physiograde/config.hpp"

#include <algorithm>
#include <set>

#include "physiograde/error.hpp"
#include "physiograde/ingest.hpp"
#include "physiograde/text.hpp"

namespace physio {

namespace {

double require_double(std::string_view key, std::string_view value) {
    auto parsed = parse_double(value);
    if (!parsed) {
        fail(Errc::ConfigError,
             std::string(key) + ": expected a number, got \"" + std::string(value) + "\"");
    }
    return *parsed;
}

int require_int(std::string_view key, std::string_view value) {
    double d = require_double(key, value);
    int i = int(d);
    if (double(i) != d) {
        fail(Errc::ConfigError,
             std::string(key) + ": expected an integer, got \"" + std::string(value) + "\"");
    }
    return i;
}

std::vector<std::string> parse_list(std::string_view value) {
    std::vector<std::string> out;
    for (std::string_view item : split(value, ',')) {
        item = trim(item);
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

} // namespace

void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);

    if (key == "dataset.root") {
        config.dataset_root = std::string(value);
    } else if (key == "dataset.roster") {
        config.roster_path = std::string(value);
    } else if (key == "dataset.exclusions") {
        config.exclusions = parse_list(value);
    } else if (key == "preprocess.ma_window") {
        config.preprocess.ma_window = require_int(key, value);
    } else if (key == "preprocess.norm_scope") {
        if (iequals(value, "per_student_pooled")) {
            config.preprocess.norm_scope = NormScope::PerStudentPooled;
        } else if (iequals(value, "per_session_signal")) {
            config.preprocess.norm_scope = NormScope::PerSessionSignal;
        } else {
            fail(Errc::ConfigError,
                 "preprocess.norm_scope must be per_student_pooled or per_session_signal");
        }
    } else if (key == "label.threshold") {
        config.threshold = require_double(key, value);
    } else if (key == "eval.repetitions") {
        config.repetitions = require_int(key, value);
    } else if (key == "eval.base_seed") {
        config.base_seed = std::uint64_t(require_int(key, value));
    } else if (key == "output.dir") {
        config.output_dir = std::string(value);
    } else if (key == "classifiers.enabled") {
        config.enabled = parse_list(to_lower(value));
    } else if (key == "knn.k") {
        config.knn.k = require_int(key, value);
    } else if (key == "svm.c") {
        config.svm.c = require_double(key, value);
    } else if (key == "svm.gamma") {
        if (iequals(value, "scale")) {
            config.svm.gamma = GammaRule::scale();
        } else {
            config.svm.gamma = GammaRule::fixed(require_double(key, value));
        }
    } else if (key == "sgd.learning_rate") {
        config.sgd.learning_rate = require_double(key, value);
    } else if (key == "sgd.epochs") {
        config.sgd.epochs = require_int(key, value);
    } else if (key == "sgd.l2") {
        config.sgd.l2 = require_double(key, value);
    } else if (key == "rf.tree_counts") {
        config.rf.grid.tree_counts.clear();
        for (const std::string& item : parse_list(value)) {
            config.rf.grid.tree_counts.push_back(require_int(key, item));
        }
    } else if (key == "rf.max_depths") {
        config.rf.grid.max_depths.clear();
        for (const std::string& item : parse_list(value)) {
            if (iequals(item, "unlimited")) {
                config.rf.grid.max_depths.push_back(kUnlimitedDepth);
            } else {
                config.rf.grid.max_depths.push_back(require_int(key, item));
            }
        }
    } else if (key == "rf.inner_folds") {
        config.rf.inner_folds = require_int(key, value);
    } else {
        fail(Errc::ConfigError, "unknown config key \"" + std::string(key) + "\"");
    }
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::size_t line_no = 0;
    for (std::string_view raw_line : split_lines(text)) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(Errc::ConfigError, "line " + std::to_string(line_no) +
                                        ": expected key = value, got \"" + std::string(line) +
                                        "\"");
        }
        apply_config_entry(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

void validate_config(const RunConfig& config) {
    if (config.preprocess.ma_window < 1 || config.preprocess.ma_window % 2 == 0) {
        fail(Errc::ConfigError, "preprocess.ma_window must be odd and positive");
    }
    if (config.repetitions < 1) fail(Errc::ConfigError, "eval.repetitions must be >= 1");
    if (config.threshold < 0.0 || config.threshold > 100.0) {
        fail(Errc::ConfigError, "label.threshold must lie in [0, 100]");
    }
    if (config.enabled.empty()) fail(Errc::ConfigError, "classifiers.enabled must be non-empty");
    static const std::set<std::string> known = {"rf", "sgd", "svm", "knn"};
    for (const std::string& name : config.enabled) {
        if (!known.count(name)) {
            fail(Errc::ConfigError, "unknown classifier \"" + name + "\"");
        }
    }
    if (config.knn.k < 1) fail(Errc::ConfigError, "knn.k must be >= 1");
    if (config.svm.c <= 0.0) fail(Errc::ConfigError, "svm.c must be > 0");
    if (config.sgd.learning_rate <= 0.0) fail(Errc::ConfigError, "sgd.learning_rate must be > 0");
    if (config.sgd.epochs < 0) fail(Errc::ConfigError, "sgd.epochs must be >= 0");
    if (config.sgd.l2 < 0.0) fail(Errc::ConfigError, "sgd.l2 must be >= 0");
    if (config.rf.grid.tree_counts.empty() || config.rf.grid.max_depths.empty()) {
        fail(Errc::ConfigError, "rf grid must be non-empty");
    }
    for (int t : config.rf.grid.tree_counts) {
        if (t < 1) fail(Errc::ConfigError, "rf.tree_counts entries must be >= 1");
    }
    for (int d : config.rf.grid.max_depths) {
        if (d != kUnlimitedDepth && d < 1) {
            fail(Errc::ConfigError, "rf.max_depths entries must be >= 1 or \"unlimited\"");
        }
    }
    if (config.rf.inner_folds < 2) fail(Errc::ConfigError, "rf.inner_folds must be >= 2");
}

RunConfig load_run_config(const std::filesystem::path* config_file,
                          std::span<const std::string> overrides) {
    RunConfig config;
    if (config_file) {
        std::string text;
        try {
            text = read_text_file(*config_file);
        } catch (const Error& e) {
            fail(Errc::ConfigError, e.what()); // unreadable config is a usage failure
        }
        config = parse_config_text(text, std::move(config));
    }
    for (const std::string& entry : overrides) {
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            fail(Errc::ConfigError, "override \"" + entry + "\" is not key=value");
        }
        apply_config_entry(config, std::string_view(entry).substr(0, eq),
                           std::string_view(entry).substr(eq + 1));
    }
    validate_config(config);
    return config;
}

std::vector<ClassifierSpec> enabled_specs(const RunConfig& config) {
    auto enabled = [&](const char* name) {
        return std::find(config.enabled.begin(), config.enabled.end(), name) !=
               config.enabled.end();
    };
    std::vector<ClassifierSpec> specs;
    if (enabled("rf")) specs.push_back(config.rf);
    if (enabled("sgd")) specs.push_back(config.sgd);
    if (enabled("svm")) specs.push_back(config.svm);
    if (enabled("knn")) specs.push_back(config.knn);
    return specs;
}

} // namespace physio
