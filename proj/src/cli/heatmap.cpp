#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pursuitlab/cli/pipeline.hpp"
#include "pursuitlab/csv.hpp"

namespace pursuitlab::cli {

namespace {

constexpr double kPlotSize = 400.0;
constexpr double kTitleHeight = 28.0;
constexpr double kLegendHeight = 36.0;

// Light end and dark end of the linear scale.
constexpr int kLow[3] = {255, 255, 255};
constexpr int kHigh[3] = {8, 48, 107};

std::string color_for(double t) {
    char buf[8];
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(kLow[i] + t * (kHigh[i] - kLow[i])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::vector<std::int64_t> aggregate_histogram(const std::vector<EpisodeRecord>& records, const std::string& label,
                                              const HistogramSpec& spec) {
    std::vector<std::int64_t> total(spec.length(), 0);
    for (const auto& r : records) {
        if (r.team_label != label) continue;
        for (const auto& p : r.evader_positions) ++total[bin_index(p, spec)];
    }
    return total;
}

std::string render_heatmap_svg(const std::vector<std::int64_t>& counts, int bins, const std::string& title) {
    const double cell = kPlotSize / bins;
    const std::int64_t peak = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    const double height = kTitleHeight + kPlotSize + kLegendHeight;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(kPlotSize) + "\" height=\"" +
           fixed(height) + "\" viewBox=\"0 0 " + fixed(kPlotSize) + " " + fixed(height) + "\">\n";
    svg += "<defs><linearGradient id=\"scale\"><stop offset=\"0\" stop-color=\"" + color_for(0.0) +
           "\"/><stop offset=\"1\" stop-color=\"" + color_for(1.0) + "\"/></linearGradient></defs>\n";
    svg += "<text x=\"4\" y=\"19\" font-family=\"sans-serif\" font-size=\"14\">" + escape_xml(title) + "</text>\n";
    svg += "<g shape-rendering=\"crispEdges\">\n";
    for (int iy = 0; iy < bins; ++iy) {
        for (int ix = 0; ix < bins; ++ix) {
            const auto c = counts[static_cast<std::size_t>(iy) * static_cast<std::size_t>(bins) + static_cast<std::size_t>(ix)];
            const double t = peak > 0 ? static_cast<double>(c) / static_cast<double>(peak) : 0.0;
            // Row iy = 0 is the bottom of the arena.
            const double y = kTitleHeight + (bins - 1 - iy) * cell;
            svg += "<rect x=\"" + fixed(ix * cell) + "\" y=\"" + fixed(y) + "\" width=\"" + fixed(cell) +
                   "\" height=\"" + fixed(cell) + "\" fill=\"" + color_for(t) + "\"><title>" + std::to_string(c) +
                   "</title></rect>\n";
        }
    }
    svg += "</g>\n";
    svg += "<rect x=\"0\" y=\"" + fixed(kTitleHeight) + "\" width=\"" + fixed(kPlotSize) + "\" height=\"" +
           fixed(kPlotSize) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    const double ly = kTitleHeight + kPlotSize + 8.0;
    svg += "<rect x=\"40\" y=\"" + fixed(ly) + "\" width=\"320\" height=\"12\" fill=\"url(#scale)\" stroke=\"#444444\"/>\n";
    svg += "<text x=\"36\" y=\"" + fixed(ly + 10) + "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">0</text>\n";
    svg += "<text x=\"364\" y=\"" + fixed(ly + 10) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(peak) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

void write_heatmaps(const RunConfig& cfg, const std::vector<EpisodeRecord>& records, int bins, const fs::path& dir) {
    const HistogramSpec spec{bins, cfg.experiment.world.half_extent};
    spec.validate();
    for (const auto& team : cfg.experiment.teams) {
        const auto counts = aggregate_histogram(records, team.label, spec);
        const auto title = team.label + " evader occupancy, " + std::to_string(bins) + "x" + std::to_string(bins) + " bins";
        const auto path = dir / ("heatmap_" + team.label + "_" + std::to_string(bins) + ".svg");
        auto out = csv::open_for_write(path);
        out << render_heatmap_svg(counts, bins, title);
        csv::finish_write(out, path);
    }
}

}  // namespace pursuitlab::cli
