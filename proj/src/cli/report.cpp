#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "pursuitlab/cli/pipeline.hpp"

namespace pursuitlab::cli {

namespace {

std::string num(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "undefined"; }

std::string policies(const TeamConfig& t) {
    std::string s;
    for (std::size_t i = 0; i < t.pursuer_policies.size(); ++i) {
        if (i) s += ", ";
        s += to_code(t.pursuer_policies[i]);
    }
    return s;
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void teams_section(std::string& md, const RunConfig& cfg) {
    const auto& ex = cfg.experiment;
    md += "## Experiment\n\n";
    md += "- episodes per team: " + std::to_string(ex.episodes_per_team) + "\n";
    md += "- steps per episode: " + std::to_string(ex.steps_per_episode) + "\n";
    md += "- master seed: " + std::to_string(ex.master_seed) + "\n";
    md += "- collision counting: " + std::string(to_string(ex.world.collision_mode)) + "\n\n";
    md += "| team | pursuers | evader |\n|---|---|---|\n";
    for (const auto& t : ex.teams) md += "| " + t.label + " | " + policies(t) + " | " + to_code(t.evader_policy) + " |\n";
    md += "\n";
}

void stats_section(std::string& md, const std::vector<TeamStats>& stats, RadiusOrigin origin) {
    md += "## Collisions and mean radius\n\n";
    md += origin == RadiusOrigin::Arena ? "Mean radius is measured from the arena center."
                                        : "Mean radius is measured from each episode's centroid.";
    md += " The last column always measures from the arena center, for comparison.\n\n";
    md += "| team | episodes | total collisions | collisions / episode | mean radius | radius min | radius max | mean radius (arena center) |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    for (const auto& s : stats) {
        const auto& r = s.radius.per_episode_mean_radius;
        const auto n = s.collisions.per_episode_collisions.size();
        const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
        md += "| " + s.label + " | " + std::to_string(n) + " | " + std::to_string(s.collisions.total) + " | " +
              num(static_cast<double>(s.collisions.total) / static_cast<double>(n), 2) + " | " + num(mean_of(r)) + " | " +
              num(*lo) + " | " + num(*hi) + " | " + num(mean_of(s.arena_radius)) + " |\n";
    }
    md += "\n";
}

void pca_section(std::string& md, const std::vector<PcaResult>& pca) {
    md += "## PCA explained variance\n\n";
    md += "| bins | features | PC1 | PC2 | PC3 | cumulative top 3 | cumulative top 10 |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const auto& p : pca) {
        const auto ratio = [&](std::size_t i) { return i < p.pareto.size() ? num(p.pareto[i].ratio) : std::string("-"); };
        const auto cumulative = [&](std::size_t k) {
            return num(p.pareto[std::min(k, p.pareto.size()) - 1].cumulative);
        };
        md += "| " + std::to_string(p.bins) + "x" + std::to_string(p.bins) + " | " + std::to_string(p.model.dim()) +
              " | " + ratio(0) + " | " + ratio(1) + " | " + ratio(2) + " | " + cumulative(3) + " | " + cumulative(10) +
              " |\n";
    }
    md += "\n";
    for (const auto& p : pca) {
        md += "### Pareto, " + std::to_string(p.bins) + "x" + std::to_string(p.bins) + " bins\n\n";
        md += "| component | ratio | cumulative |\n|---|---|---|\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(10, p.pareto.size()); ++i)
            md += "| " + std::to_string(i + 1) + " | " + num(p.pareto[i].ratio) + " | " + num(p.pareto[i].cumulative) + " |\n";
        md += "\n";
    }
}

void classify_section(std::string& md, const ClassifyResult& c) {
    md += "## One-vs-one classification\n\n";
    md += "Features: " + std::to_string(c.bins) + "x" + std::to_string(c.bins) + " occupancy histograms. Values are means over " +
          std::to_string(c.folds) + " stratified folds; build time is the total training time.\n\n";
    md += "| pair | model | Accuracy | Precision | Recall | ROC | PRC | RMSE | build time (s) |\n";
    md += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& s : c.studies) {
        for (const auto& p : s.pairs) {
            const auto& m = p.result.mean;
            md += "| " + p.name() + " | " + std::string(to_string(s.model)) + " | " + num(m.accuracy) + " | " +
                  num(m.precision) + " | " + num(m.recall) + " | " + opt(m.roc_auc) + " | " + opt(m.prc_auc) + " | " +
                  num(m.rmse) + " | " + num(m.build_time_seconds, 3) + " |\n";
        }
    }
    md += "\n";

    if (c.controls.empty()) return;
    md += "### Label-permutation control\n\n";
    md += "Each pair is re-run with shuffled labels; a model separates the pair when its accuracy exceeds 0.5 + 3 sd of the shuffled accuracies.\n\n";
    md += "| pair | control model | repetitions | shuffled mean | shuffled sd | threshold |";
    for (const auto& s : c.studies) md += " " + std::string(to_string(s.model)) + " accuracy |";
    md += "\n|---|---|---|---|---|---|";
    for (std::size_t i = 0; i < c.studies.size(); ++i) md += "---|";
    md += "\n";
    for (const auto& ctl : c.controls) {
        md += "| " + ctl.pair + " | " + std::string(to_string(ctl.model)) + " | " + std::to_string(ctl.accuracies.size()) +
              " | " + num(ctl.mean) + " | " + num(ctl.stddev) + " | " + num(ctl.threshold()) + " |";
        for (const auto& s : c.studies) {
            for (const auto& p : s.pairs) {
                if (p.name() != ctl.pair) continue;
                const double acc = p.result.mean.accuracy;
                md += " " + num(acc) + (acc > ctl.threshold() ? "" : " (not separated)") + " |";
            }
        }
        md += "\n";
    }
    md += "\n";
}

}  // namespace

std::string render_report(const ReportInputs& in) {
    std::string md = "# Pursuit-evasion behavior analysis\n\n";
    if (in.config) teams_section(md, *in.config);
    if (in.stats && !in.stats->empty())
        stats_section(md, *in.stats, in.config ? in.config->stats.origin : RadiusOrigin::Centroid);
    if (in.pca && !in.pca->empty()) pca_section(md, *in.pca);
    if (in.classify && !in.classify->studies.empty()) classify_section(md, *in.classify);
    md += "## Files\n\n";
    md += "Trajectories, features, radius and collision tables, PCA projections and Pareto values, and per-fold metrics are in the CSV files next to this report.\n";
    return md;
}

}  // namespace pursuitlab::cli
