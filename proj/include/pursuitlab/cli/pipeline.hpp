#pragma once
// Pipeline stages behind the command-line tool. Each stage has an in-memory
// form (used by `all`) and a file writer; the commands are thin wrappers that
// validate inputs, run the stage and commit the outputs atomically.
//
// Run directory layout:
//   run.json                          resolved configuration
//   trajectories_<label>.csv          + trajectories_<label>.episodes.csv
//   collisions.csv                    episode,team,collisions
//   features_<B>.csv                  episode,label,f0..
//   radius.csv                        episode,team,mean_radius
//   radius_histogram.csv              team,bin_lo,bin_hi,count
//   collision_histogram.csv           team,collisions,count
//   summary.csv                       per-team totals
//   projection_<B>.csv, pareto_<B>.csv
//   metrics.csv, permutation.csv
//   heatmap_<label>_<B>.svg
//   report.md

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pursuitlab/cli/config.hpp"
#include "pursuitlab/features.hpp"
#include "pursuitlab/metrics.hpp"
#include "pursuitlab/pca.hpp"
#include "pursuitlab/stats.hpp"
#include "pursuitlab/validation.hpp"

namespace pursuitlab::cli {

namespace fs = std::filesystem;

inline constexpr const char* kRunConfigName = "run.json";

std::string trajectory_file_name(const std::string& label);
std::string features_file_name(int bins);

// ---- simulate ----------------------------------------------------------------

std::vector<EpisodeRecord> simulate(const RunConfig& cfg, unsigned workers);
void write_simulation(const RunConfig& cfg, const std::vector<EpisodeRecord>& records, const fs::path& dir);
/// Loads run.json and every team's trajectories from a run directory.
std::vector<EpisodeRecord> load_simulation(const fs::path& dir, RunConfig& cfg);

// ---- stats -------------------------------------------------------------------

struct TeamStats {
    std::string label;
    RadiusSummary radius;
    CollisionSummary collisions;
    std::vector<double> arena_radius;  ///< distance from the arena center, for comparison
};

std::vector<TeamStats> compute_stats(const std::vector<EpisodeRecord>& records, const StatsOptions& opts,
                                     double half_extent);
void write_stats(const std::vector<EpisodeRecord>& records, const std::vector<TeamStats>& stats,
                 const fs::path& dir);

// ---- pca ---------------------------------------------------------------------

struct PcaResult {
    int bins = 0;
    PcaModel model;
    Matrix projection;  ///< N x k
    std::vector<ParetoEntry> pareto;  ///< every component
};

PcaResult run_pca(const FeatureDataset& data, std::size_t components);
void write_pca(const FeatureDataset& data, const PcaResult& result, const fs::path& dir);

// ---- classify ----------------------------------------------------------------

struct ModelStudy {
    ModelKind model;
    std::vector<PairReport> pairs;
};

struct PermutationControl {
    std::string pair;
    ModelKind model;
    std::vector<double> accuracies;
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation
    /// Accuracy a real classifier must beat: 0.5 + 3 * stddev.
    double threshold() const { return 0.5 + 3.0 * stddev; }
};

struct ClassifyResult {
    int bins = 0;
    std::size_t folds = 0;
    std::vector<ModelStudy> studies;
    std::vector<PermutationControl> controls;
};

ClassifyResult run_classify(const FeatureDataset& data, const ClassifyOptions& opts);
void write_classify(const ClassifyResult& result, const fs::path& dir);

// ---- heatmap -----------------------------------------------------------------

/// Sum of the team's occupancy histograms.
std::vector<std::int64_t> aggregate_histogram(const std::vector<EpisodeRecord>& records, const std::string& label,
                                              const HistogramSpec& spec);
/// SVG 1.1 grid of B x B cells, y axis pointing up, linear white-to-dark scale.
std::string render_heatmap_svg(const std::vector<std::int64_t>& counts, int bins, const std::string& title);
void write_heatmaps(const RunConfig& cfg, const std::vector<EpisodeRecord>& records, int bins, const fs::path& dir);

// ---- report ------------------------------------------------------------------

struct ReportInputs {
    const RunConfig* config = nullptr;
    const std::vector<TeamStats>* stats = nullptr;
    const std::vector<PcaResult>* pca = nullptr;
    const ClassifyResult* classify = nullptr;
};

std::string render_report(const ReportInputs& in);

// ---- commands ----------------------------------------------------------------

struct SimulateCommand {
    fs::path config;
    fs::path out;
    std::optional<std::int64_t> steps;
    std::optional<std::int64_t> episodes;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

struct FeaturizeCommand {
    fs::path in;
    int bins = 5;
    std::optional<fs::path> out;  ///< defaults to <in>/features_<B>.csv
};

struct StatsCommand {
    fs::path in;
    std::optional<fs::path> out;
    std::optional<double> bin_width;
    std::optional<RadiusOrigin> origin;
};

struct PcaCommand {
    fs::path features;
    std::size_t components = 3;
    std::optional<fs::path> out;
};

struct ClassifyCommand {
    fs::path features;
    std::vector<ModelKind> models;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::size_t permutations = 0;
    std::optional<fs::path> config;  ///< classifier hyperparameters
    std::optional<fs::path> out;
};

struct HeatmapCommand {
    fs::path in;
    int bins = 20;
    std::optional<fs::path> out;
};

struct AllCommand {
    fs::path config;
    std::optional<fs::path> out;
    unsigned workers = 1;
};

void cmd_simulate(const SimulateCommand& c);
void cmd_featurize(const FeaturizeCommand& c);
void cmd_stats(const StatsCommand& c);
void cmd_pca(const PcaCommand& c);
void cmd_classify(const ClassifyCommand& c);
void cmd_heatmap(const HeatmapCommand& c);
void cmd_all(const AllCommand& c);

}  // namespace pursuitlab::cli
