#include <omp.h>

#include <iostream>

#include <CLI11.hpp>

#include "strongmeans/errors.hpp"
#include "strongmeans/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dyadic CZ / partial-sum moment experiments"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    bool record = false;
    int threads = 0;
    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config, "config JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--record-baseline", record, "overwrite the baseline file");
    run->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

    app.add_subcommand("list-experiments", "print experiment ids");

    std::string base_dir;
    auto* verify = app.add_subcommand("verify-baselines", "re-run every baseline's config and compare");
    verify->add_option("dir", base_dir, "baseline directory")->required()->check(CLI::ExistingDirectory);
    verify->add_option("--threads", threads, "OpenMP threads");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (app.got_subcommand("list-experiments")) {
            for (const auto& id : sm::experiment_ids()) std::cout << id << "\n";
            return 0;
        }
        if (app.got_subcommand("verify-baselines")) return sm::verify_baselines(base_dir, std::cout) == 0 ? 0 : 1;
        std::optional<std::filesystem::path> od;
        if (!out_dir.empty()) od = out_dir;
        const auto files = sm::run_to_files(config, od, record);
        std::cout << files.csv.string() << "\n" << files.summary.string() << "\n";
        if (files.baseline_written) std::cout << "baseline recorded: " << files.baseline_written->string() << "\n";
        std::cout << (files.ok ? "PASS" : "FAIL") << "\n";
        return files.ok ? 0 : 1;
    } catch (const sm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
