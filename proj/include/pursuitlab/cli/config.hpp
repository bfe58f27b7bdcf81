#pragma once
// Experiment configuration for the command-line pipeline.
//
// The JSON document is checked strictly: unknown keys, wrong types and
// out-of-range values raise ConfigError with the JSON pointer of the offending
// node (e.g. "/teams/2/evader"). Every key is optional except "teams".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pursuitlab/classifiers.hpp"
#include "pursuitlab/episode.hpp"
#include "pursuitlab/stats.hpp"

namespace pursuitlab::cli {

struct StatsOptions {
    double radius_bin_width = 0.01;
    RadiusOrigin origin = RadiusOrigin::Centroid;
};

struct PcaOptions {
    std::vector<int> bins{5, 20, 100};
    std::size_t components = 3;
};

struct ClassifyOptions {
    std::vector<ModelKind> models{ModelKind::LogReg, ModelKind::Mlp};
    int bins = 5;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    TrainConfig train;
    /// Label-shuffled control runs per pair; 0 disables the control.
    std::size_t permutation_repetitions = 20;
    ModelKind permutation_model = ModelKind::LogReg;
};

struct RunConfig {
    ExperimentSpec experiment;
    std::vector<int> feature_bins{5, 20, 100};
    StatsOptions stats;
    PcaOptions pca;
    ClassifyOptions classify;
    std::vector<int> heatmap_bins{20};
    std::optional<std::filesystem::path> output_dir;

    /// Cross-field checks: every bin count used downstream must be featurized.
    void validate() const;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a config file; malformed JSON is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical, fully-populated form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& cfg);

std::string_view to_string(CollisionMode mode);
std::string_view to_string(RadiusOrigin origin);

}  // namespace pursuitlab::cli
