#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "physiograde/cli.hpp"
#include "physiograde/error.hpp"

namespace {

physio::RunConfig make_config(const std::optional<std::string>& config_path,
                              const std::optional<std::string>& out_dir,
                              const std::vector<std::string>& overrides) {
    std::filesystem::path file;
    const std::filesystem::path* file_ptr = nullptr;
    if (config_path) {
        file = *config_path;
        file_ptr = &file;
    }
    physio::RunConfig config = physio::load_run_config(file_ptr, overrides);
    if (out_dir) config.output_dir = *out_dir;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grade prediction from wearable physiological recordings"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Config file (key = value lines)");
        sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
        sub->add_option("overrides", overrides, "key=value config overrides");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check dataset and roster completeness");
    add_common(validate);
    CLI::App* features = app.add_subcommand("features", "Write the per-session feature CSV");
    add_common(features);
    CLI::App* evaluate = app.add_subcommand("evaluate", "Run the full evaluation and write reports");
    add_common(evaluate);

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::uint64_t seed = 7;
    int n_students = 10;
    double correlation = 1.0;
    std::string synth_out;
    synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
    synth->add_option("--students", n_students, "Number of students")->capture_default_str();
    synth->add_option("--correlation", correlation, "Signal-label correlation in [0,1]")
        ->capture_default_str();
    synth->add_option("--out", synth_out, "Target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return physio::kExitUsageError;
    }

    try {
        if (synth->parsed()) {
            return physio::cmd_synth(seed, n_students, correlation, synth_out, std::cout,
                                     std::cerr);
        }
        physio::RunConfig config = make_config(config_path, out_dir, overrides);
        if (validate->parsed()) return physio::cmd_validate(config, std::cout, std::cerr);
        if (features->parsed()) return physio::cmd_features(config, std::cout, std::cerr);
        return physio::cmd_evaluate(config, std::cout, std::cerr);
    } catch (const physio::Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == physio::Errc::ConfigError ? physio::kExitUsageError
                                                     : physio::kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return physio::kExitDomainError;
    }
}
