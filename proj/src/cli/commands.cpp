#include <chrono>
#include <cstdio>
#include <map>

#include "pursuitlab/cli/pipeline.hpp"
#include "pursuitlab/cli/staging.hpp"
#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"

namespace pursuitlab::cli {

namespace {

class Progress {
public:
    void done(const std::string& what) {
        const auto now = std::chrono::steady_clock::now();
        std::fprintf(stderr, "[%7.2fs] %s\n", std::chrono::duration<double>(now - start_).count(), what.c_str());
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path parent_or_dot(const fs::path& p) {
    return p.has_parent_path() ? p.parent_path() : fs::path(".");
}

void require_file(const fs::path& p) {
    if (!fs::is_regular_file(p)) throw IoError("input file '" + p.string() + "' does not exist");
}

void require_dir(const fs::path& p) {
    if (!fs::is_directory(p)) throw IoError("input directory '" + p.string() + "' does not exist");
}

void write_text(const fs::path& path, const std::string& text) {
    auto out = csv::open_for_write(path);
    out << text;
    csv::finish_write(out, path);
}

}  // namespace

void cmd_simulate(const SimulateCommand& c) {
    auto cfg = load_config(c.config);
    if (c.steps) cfg.experiment.steps_per_episode = *c.steps;
    if (c.episodes) cfg.experiment.episodes_per_team = *c.episodes;
    if (c.seed) cfg.experiment.master_seed = *c.seed;
    cfg.experiment.validate();

    Staging stage(c.out);
    const auto records = simulate(cfg, c.workers);
    write_simulation(cfg, records, stage.dir());
    stage.commit();
}

void cmd_featurize(const FeaturizeCommand& c) {
    require_dir(c.in);
    RunConfig cfg;
    const auto records = load_simulation(c.in, cfg);
    const HistogramSpec spec{c.bins, cfg.experiment.world.half_extent};
    spec.validate();
    const auto data = build_dataset(records, spec);

    const fs::path out = c.out ? *c.out : c.in / features_file_name(c.bins);
    Staging stage(parent_or_dot(out));
    write_features(data, stage.file(out.filename()));
    stage.commit();
}

void cmd_stats(const StatsCommand& c) {
    require_dir(c.in);
    RunConfig cfg;
    const auto records = load_simulation(c.in, cfg);
    if (c.bin_width) {
        if (!(*c.bin_width > 0)) throw ConfigError("--bin-width must be > 0");
        cfg.stats.radius_bin_width = *c.bin_width;
    }
    if (c.origin) cfg.stats.origin = *c.origin;
    const auto stats = compute_stats(records, cfg.stats, cfg.experiment.world.half_extent);

    Staging stage(c.out ? *c.out : c.in);
    write_stats(records, stats, stage.dir());
    stage.commit();
}

void cmd_pca(const PcaCommand& c) {
    require_file(c.features);
    if (c.components < 1) throw ConfigError("--components must be >= 1");
    const auto data = read_features(c.features);
    const auto result = run_pca(data, c.components);

    Staging stage(c.out ? *c.out : parent_or_dot(c.features));
    write_pca(data, result, stage.dir());
    stage.commit();
}

void cmd_classify(const ClassifyCommand& c) {
    require_file(c.features);
    ClassifyOptions opts;
    if (c.config) opts = load_config(*c.config).classify;
    if (!c.models.empty()) opts.models = c.models;
    opts.folds = c.folds;
    opts.seed = c.seed;
    opts.permutation_repetitions = c.permutations;
    if (opts.folds < 2) throw ConfigError("--folds must be >= 2");

    const auto data = read_features(c.features);
    opts.bins = data.bins_per_axis;
    const auto result = run_classify(data, opts);

    Staging stage(c.out ? *c.out : parent_or_dot(c.features));
    write_classify(result, stage.dir());
    stage.commit();
}

void cmd_heatmap(const HeatmapCommand& c) {
    require_dir(c.in);
    RunConfig cfg;
    const auto records = load_simulation(c.in, cfg);
    HistogramSpec{c.bins, cfg.experiment.world.half_extent}.validate();

    Staging stage(c.out ? *c.out : c.in);
    write_heatmaps(cfg, records, c.bins, stage.dir());
    stage.commit();
}

void cmd_all(const AllCommand& c) {
    const auto cfg = load_config(c.config);
    const fs::path out = c.out ? *c.out : cfg.output_dir ? *cfg.output_dir : fs::path{};
    if (out.empty()) throw ConfigError("no output directory: pass --out or set /output_dir in the config");

    Progress progress;
    Staging stage(out);
    const auto& dir = stage.dir();

    const auto records = simulate(cfg, c.workers);
    write_simulation(cfg, records, dir);
    progress.done("simulated " + std::to_string(records.size()) + " episodes");

    std::map<int, FeatureDataset> features;
    for (const int b : cfg.feature_bins) {
        const HistogramSpec spec{b, cfg.experiment.world.half_extent};
        spec.validate();
        features.emplace(b, build_dataset(records, spec));
        write_features(features.at(b), dir / features_file_name(b));
    }
    progress.done("wrote features");

    const auto stats = compute_stats(records, cfg.stats, cfg.experiment.world.half_extent);
    write_stats(records, stats, dir);
    progress.done("wrote radius and collision statistics");

    std::vector<PcaResult> pca;
    for (const int b : cfg.pca.bins) {
        pca.push_back(run_pca(features.at(b), cfg.pca.components));
        write_pca(features.at(b), pca.back(), dir);
        progress.done("PCA at " + std::to_string(b) + "x" + std::to_string(b) + " bins");
    }

    ClassifyResult classify;
    if (!cfg.classify.models.empty()) {
        classify = run_classify(features.at(cfg.classify.bins), cfg.classify);
        write_classify(classify, dir);
        progress.done("one-vs-one classification");
    }

    for (const int b : cfg.heatmap_bins) write_heatmaps(cfg, records, b, dir);

    write_text(dir / "report.md", render_report({&cfg, &stats, &pca, &classify}));
    stage.commit();
    progress.done("outputs written to " + out.string());
}

}  // namespace pursuitlab::cli
