#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sm {

inline constexpr const char* kSchemaVersion = "1.0";

using json = nlohmann::json;

struct ExperimentConfig {
    std::string experiment;
    std::string name;
    int J = 12;
    int d = 1;
    std::vector<double> lambdas;
    std::vector<long> Ns;
    std::vector<double> s_list;
    std::vector<double> eps;
    std::vector<std::string> families;
    int count = 1;
    std::uint64_t seed = 0;
    std::string output;
    std::string baseline;  // relative to the config file
    json raw;
};

const std::vector<std::string>& experiment_ids();

ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// FNV-1a 64 of the canonical dump, without the output path.
std::string config_hash(const json& raw);

struct BaselineEntry {
    std::string experiment;
    std::string fn_id;
    double lambda = 0;
    double value = 0;
};

struct RunOutput {
    std::string csv;
    json summary;
    std::vector<BaselineEntry> baseline_values;
    bool invariants_ok = true;
};

// Pure: no file access. Baseline comparison is applied separately.
RunOutput run_experiment(const ExperimentConfig& cfg);

// p4_moment: value <= 1.25 * baseline; otherwise |value / baseline - 1| <= 0.10.
bool baseline_within(const std::string& experiment, double value, double baseline);

json make_baseline(const ExperimentConfig& cfg, const RunOutput& out);
// Fills summary["baseline"]; returns whether every entry is within tolerance.
bool compare_baseline(RunOutput& out, const json& baseline);

struct RunFiles {
    std::filesystem::path csv;
    std::filesystem::path summary;
    std::optional<std::filesystem::path> baseline_written;
    bool ok = true;
};

RunFiles run_to_files(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                      bool record_baseline);

// Re-runs the configuration stored in every baseline file under dir.
int verify_baselines(const std::filesystem::path& dir, std::ostream& log);

std::string fmt12(double v);

}  // namespace sm
