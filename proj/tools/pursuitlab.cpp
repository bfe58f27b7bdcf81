#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "pursuitlab/cli/pipeline.hpp"
#include "pursuitlab/errors.hpp"

using namespace pursuitlab;
using namespace pursuitlab::cli;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kIoOrOther = 1;
constexpr int kConfig = 2;
constexpr int kData = 3;
constexpr int kNumeric = 4;

unsigned default_workers() {
    if (const char* env = std::getenv("PURSUITLAB_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::fprintf(stderr, "warning: ignoring PURSUITLAB_WORKERS='%s' (expected a positive integer)\n", env);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void add_workers(CLI::App* cmd, unsigned& workers) {
    cmd->add_option("--workers", workers, "Simulation threads (default: $PURSUITLAB_WORKERS or all cores); never changes results")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pursuit-evasion simulation and behavior-analysis pipeline"};
    app.require_subcommand(1);

    const unsigned workers_default = default_workers();

    SimulateCommand sim;
    sim.workers = workers_default;
    auto* s = app.add_subcommand("simulate", "Run every configured team and write trajectories and collisions");
    s->add_option("--config", sim.config, "Experiment JSON")->required();
    s->add_option("--out", sim.out, "Output directory")->required();
    s->add_option("--steps", sim.steps, "Override steps per episode")->check(CLI::NonNegativeNumber);
    s->add_option("--episodes", sim.episodes, "Override episodes per team")->check(CLI::PositiveNumber);
    s->add_option("--seed", sim.seed, "Override the master seed");
    add_workers(s, sim.workers);

    FeaturizeCommand feat;
    auto* f = app.add_subcommand("featurize", "Build occupancy-histogram features from a run directory");
    f->add_option("--in", feat.in, "Run directory written by simulate")->required();
    f->add_option("--bins", feat.bins, "Bins per axis")->check(CLI::Range(1, 1000))->capture_default_str();
    f->add_option("--out", feat.out, "Feature CSV (default: <in>/features_<bins>.csv)");

    StatsCommand stats;
    std::string origin;
    auto* st = app.add_subcommand("stats", "Mean-radius and collision statistics for a run directory");
    st->add_option("--in", stats.in, "Run directory")->required();
    st->add_option("--out", stats.out, "Output directory (default: --in)");
    st->add_option("--bin-width", stats.bin_width, "Radius histogram bin width");
    st->add_option("--origin", origin, "Radius origin")->check(CLI::IsMember({"centroid", "arena"}));

    PcaCommand pca;
    auto* p = app.add_subcommand("pca", "Principal components of a feature CSV");
    p->add_option("--features", pca.features, "Feature CSV")->required();
    p->add_option("--components", pca.components, "Components to project onto")->capture_default_str();
    p->add_option("--out", pca.out, "Output directory (default: next to the features)");

    ClassifyCommand cls;
    std::vector<std::string> models;
    auto* c = app.add_subcommand("classify", "Cross-validated one-vs-one classification of a feature CSV");
    c->add_option("--features", cls.features, "Feature CSV")->required();
    c->add_option("--model", models, "logreg and/or mlp (repeatable; default: both)")
        ->check(CLI::IsMember({"logreg", "mlp"}));
    c->add_option("--folds", cls.folds, "Folds")->capture_default_str();
    c->add_option("--seed", cls.seed, "Fold shuffling seed")->capture_default_str();
    c->add_option("--permutations", cls.permutations, "Label-shuffled control repetitions per pair")->capture_default_str();
    c->add_option("--config", cls.config, "Experiment JSON supplying classifier hyperparameters");
    c->add_option("--out", cls.out, "Output directory (default: next to the features)");

    HeatmapCommand heat;
    auto* h = app.add_subcommand("heatmap", "Per-team occupancy heatmaps as SVG");
    h->add_option("--in", heat.in, "Run directory")->required();
    h->add_option("--bins", heat.bins, "Bins per axis")->check(CLI::Range(1, 1000))->capture_default_str();
    h->add_option("--out", heat.out, "Output directory (default: --in)");

    AllCommand all;
    all.workers = workers_default;
    auto* a = app.add_subcommand("all", "Run the full pipeline and write report.md");
    a->add_option("--config", all.config, "Experiment JSON")->required();
    a->add_option("--out", all.out, "Output directory (default: /output_dir from the config)");
    add_workers(a, all.workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*s) cmd_simulate(sim);
        else if (*f) cmd_featurize(feat);
        else if (*st) {
            if (!origin.empty()) stats.origin = origin == "arena" ? RadiusOrigin::Arena : RadiusOrigin::Centroid;
            cmd_stats(stats);
        } else if (*p) cmd_pca(pca);
        else if (*c) {
            for (const auto& m : models) cls.models.push_back(parse_model_kind(m));
            cmd_classify(cls);
        } else if (*h) cmd_heatmap(heat);
        else if (*a) cmd_all(all);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const DataFormatError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kData;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoOrOther;
    }
    return kOk;
}
