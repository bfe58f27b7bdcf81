#include "pursuitlab/cli/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"
#include "pursuitlab/trajectory_io.hpp"

namespace pursuitlab::cli {

using csv::format_real;

std::string trajectory_file_name(const std::string& label) { return "trajectories_" + label + ".csv"; }

std::string features_file_name(int bins) { return "features_" + std::to_string(bins) + ".csv"; }

std::vector<EpisodeRecord> simulate(const RunConfig& cfg, unsigned workers) {
    return run_batch(cfg.experiment, workers);
}

void write_simulation(const RunConfig& cfg, const std::vector<EpisodeRecord>& records, const fs::path& dir) {
    {
        const auto path = dir / kRunConfigName;
        auto out = csv::open_for_write(path);
        out << to_json(cfg).dump(2) << '\n';
        csv::finish_write(out, path);
    }
    for (const auto& [label, recs] : group_by_team(records))
        write_trajectories(recs, dir / trajectory_file_name(label));
    write_collisions(records, dir / "collisions.csv");
}

std::vector<EpisodeRecord> load_simulation(const fs::path& dir, RunConfig& cfg) {
    cfg = load_config(dir / kRunConfigName);
    std::vector<EpisodeRecord> all;
    for (const auto& team : cfg.experiment.teams) {
        const auto path = dir / trajectory_file_name(team.label);
        auto recs = read_trajectories(path);
        if (recs.size() != static_cast<std::size_t>(cfg.experiment.episodes_per_team))
            throw DataFormatError(path.string() + ": expected " + std::to_string(cfg.experiment.episodes_per_team) +
                                  " episodes, found " + std::to_string(recs.size()));
        for (auto& r : recs) {
            if (r.team_label != team.label)
                throw DataFormatError(path.string() + ": episode " + std::to_string(r.episode_id) +
                                      " belongs to team '" + r.team_label + "'");
            all.push_back(std::move(r));
        }
    }
    return all;
}

std::vector<TeamStats> compute_stats(const std::vector<EpisodeRecord>& records, const StatsOptions& opts,
                                     double half_extent) {
    std::vector<TeamStats> out;
    for (const auto& [label, recs] : group_by_team(records)) {
        TeamStats s;
        s.label = label;
        s.radius = radius_summary(recs, opts.radius_bin_width, half_extent, opts.origin);
        s.collisions = collision_summary(recs);
        for (const auto& r : recs) s.arena_radius.push_back(mean_radius(r.evader_positions, RadiusOrigin::Arena));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void write_stats(const std::vector<EpisodeRecord>& records, const std::vector<TeamStats>& stats,
                 const fs::path& dir) {
    write_collisions(records, dir / "collisions.csv");

    std::map<std::string, const TeamStats*> by_label;
    for (const auto& s : stats) by_label[s.label] = &s;

    {
        const auto path = dir / "radius.csv";
        auto out = csv::open_for_write(path);
        out << "episode,team,mean_radius\n";
        std::map<std::string, std::size_t> next;
        for (const auto& r : records) {
            const auto& s = *by_label.at(r.team_label);
            out << r.episode_id << ',' << r.team_label << ','
                << format_real(s.radius.per_episode_mean_radius[next[r.team_label]++]) << '\n';
        }
        csv::finish_write(out, path);
    }
    {
        const auto path = dir / "radius_histogram.csv";
        auto out = csv::open_for_write(path);
        out << "team,bin_lo,bin_hi,count\n";
        for (const auto& s : stats) {
            const auto& h = s.radius.histogram;
            for (std::size_t b = 0; b < h.counts.size(); ++b)
                out << s.label << ',' << format_real(h.bin_edges[b]) << ',' << format_real(h.bin_edges[b + 1]) << ','
                    << h.counts[b] << '\n';
        }
        csv::finish_write(out, path);
    }
    {
        const auto path = dir / "collision_histogram.csv";
        auto out = csv::open_for_write(path);
        out << "team,collisions,count\n";
        for (const auto& s : stats) {
            const auto& h = s.collisions.histogram;
            for (std::size_t b = 0; b < h.counts.size(); ++b) out << s.label << ',' << b << ',' << h.counts[b] << '\n';
        }
        csv::finish_write(out, path);
    }
    {
        const auto path = dir / "summary.csv";
        auto out = csv::open_for_write(path);
        out << "team,episodes,total_collisions,mean_collisions,mean_radius,sd_radius,mean_radius_arena\n";
        for (const auto& s : stats) {
            const auto n = s.collisions.per_episode_collisions.size();
            out << s.label << ',' << n << ',' << s.collisions.total << ','
                << format_real(static_cast<double>(s.collisions.total) / static_cast<double>(n)) << ','
                << format_real(mean_of(s.radius.per_episode_mean_radius)) << ','
                << format_real(sample_stddev(s.radius.per_episode_mean_radius)) << ','
                << format_real(mean_of(s.arena_radius)) << '\n';
        }
        csv::finish_write(out, path);
    }
}

PcaResult run_pca(const FeatureDataset& data, std::size_t components) {
    PcaResult r;
    r.bins = data.bins_per_axis;
    r.model = fit_pca(data.features);
    if (components > r.model.n_components())
        throw ConfigError("requested " + std::to_string(components) + " components but the " +
                          std::to_string(data.bins_per_axis) + "x" + std::to_string(data.bins_per_axis) +
                          " data supports only " + std::to_string(r.model.n_components()));
    r.projection = project(r.model, data.features, components);
    r.pareto = pareto(r.model, r.model.n_components());
    return r;
}

void write_pca(const FeatureDataset& data, const PcaResult& result, const fs::path& dir) {
    const std::string b = std::to_string(result.bins);
    {
        const auto path = dir / ("projection_" + b + ".csv");
        auto out = csv::open_for_write(path);
        out << "episode,label";
        for (std::size_t k = 0; k < result.projection.cols(); ++k) out << ",pc" << k + 1;
        out << '\n';
        for (std::size_t i = 0; i < data.size(); ++i) {
            out << data.episode_ids[i] << ',' << data.labels[i];
            for (double v : result.projection.row(i)) out << ',' << format_real(v);
            out << '\n';
        }
        csv::finish_write(out, path);
    }
    {
        const auto path = dir / ("pareto_" + b + ".csv");
        auto out = csv::open_for_write(path);
        out << "component,ratio,cumulative\n";
        for (const auto& e : result.pareto)
            out << e.component + 1 << ',' << format_real(e.ratio) << ',' << format_real(e.cumulative) << '\n';
        csv::finish_write(out, path);
    }
}

ClassifyResult run_classify(const FeatureDataset& data, const ClassifyOptions& opts) {
    const auto groups = split_by_label(data);
    if (groups.size() < 2) throw InsufficientDataError("classification needs at least two team labels");
    ClassifyResult r;
    r.bins = data.bins_per_axis;
    r.folds = opts.folds;
    for (const auto model : opts.models)
        r.studies.push_back({model, pairwise_study(groups, model, opts.train, opts.folds, opts.seed)});
    if (opts.permutation_repetitions > 0) {
        for (auto a = groups.begin(); a != groups.end(); ++a) {
            for (auto b = std::next(a); b != groups.end(); ++b) {
                const auto pair = make_pair_dataset(a->first, a->second, b->first, b->second);
                PermutationControl c;
                c.pair = a->first + "_vs_" + b->first;
                c.model = opts.permutation_model;
                c.accuracies = permutation_control(pair, opts.permutation_model, opts.train, opts.folds, opts.seed,
                                                   opts.permutation_repetitions);
                c.mean = mean_of(c.accuracies);
                c.stddev = sample_stddev(c.accuracies);
                r.controls.push_back(std::move(c));
            }
        }
    }
    return r;
}

namespace {

void write_metrics_row(std::ofstream& out, const std::string& pair, ModelKind model, const std::string& fold,
                       const MetricsReport& m) {
    out << pair << ',' << to_string(model) << ',' << fold << ',' << format_real(m.accuracy) << ','
        << format_real(m.precision) << ',' << format_real(m.recall) << ',' << format_metric(m.roc_auc) << ','
        << format_metric(m.prc_auc) << ',' << format_real(m.rmse) << ',' << format_real(m.build_time_seconds)
        << '\n';
}

}  // namespace

void write_classify(const ClassifyResult& result, const fs::path& dir) {
    {
        const auto path = dir / "metrics.csv";
        auto out = csv::open_for_write(path);
        out << "pair,model,fold,accuracy,precision,recall,roc_auc,prc_auc,rmse,build_time_s\n";
        for (const auto& study : result.studies) {
            for (const auto& p : study.pairs) {
                for (std::size_t f = 0; f < p.result.folds.size(); ++f)
                    write_metrics_row(out, p.name(), study.model, std::to_string(f), p.result.folds[f]);
                write_metrics_row(out, p.name(), study.model, "mean", p.result.mean);
            }
        }
        csv::finish_write(out, path);
    }
    if (!result.controls.empty()) {
        const auto path = dir / "permutation.csv";
        auto out = csv::open_for_write(path);
        out << "pair,model,repetition,accuracy\n";
        for (const auto& c : result.controls)
            for (std::size_t r = 0; r < c.accuracies.size(); ++r)
                out << c.pair << ',' << to_string(c.model) << ',' << r << ',' << format_real(c.accuracies[r]) << '\n';
        csv::finish_write(out, path);
    }
}

}  // namespace pursuitlab::cli
