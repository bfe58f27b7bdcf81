#include "pursuitlab/features.hpp"

#include <algorithm>
#include <cmath>

#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"

namespace pursuitlab {

void HistogramSpec::validate() const {
    if (bins_per_axis < 1) throw ConfigError("bins_per_axis must be >= 1");
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw ConfigError("histogram half_extent must be finite and > 0");
}

int axis_bin(double coord, const HistogramSpec& spec) {
    const double width = 2.0 * spec.half_extent / spec.bins_per_axis;
    const double cell = std::floor((coord + spec.half_extent) / width);
    if (!(cell >= 0.0)) return 0;  // also catches NaN
    if (cell >= spec.bins_per_axis - 1) return spec.bins_per_axis - 1;
    return static_cast<int>(cell);
}

std::size_t bin_index(Vec2 pos, const HistogramSpec& spec) {
    const auto ix = static_cast<std::size_t>(axis_bin(pos.x, spec));
    const auto iy = static_cast<std::size_t>(axis_bin(pos.y, spec));
    return iy * static_cast<std::size_t>(spec.bins_per_axis) + ix;
}

FeatureVector featurize(const EpisodeRecord& record, const HistogramSpec& spec) {
    FeatureVector fv;
    fv.values.assign(spec.length(), 0);
    fv.team_label = record.team_label;
    fv.episode_id = record.episode_id;
    for (const Vec2& p : record.evader_positions) ++fv.values[bin_index(p, spec)];
    return fv;
}

FeatureDataset build_dataset(const std::vector<EpisodeRecord>& records, const HistogramSpec& spec) {
    spec.validate();
    FeatureDataset data;
    data.bins_per_axis = spec.bins_per_axis;
    data.features = Matrix(records.size(), spec.length());
    if (records.empty()) return data;

    const std::size_t steps = records.front().evader_positions.size();
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.evader_positions.size() != steps)
            throw DataFormatError("episode " + std::to_string(rec.episode_id) + " has " +
                                  std::to_string(rec.evader_positions.size()) +
                                  " steps, expected " + std::to_string(steps));
        const FeatureVector fv = featurize(rec, spec);
        auto row = data.features.row(r);
        std::copy(fv.values.begin(), fv.values.end(), row.begin());
        data.labels.push_back(rec.team_label);
        data.episode_ids.push_back(rec.episode_id);
    }
    return data;
}

std::string feature_header(std::size_t length) {
    std::string h = "episode,label";
    for (std::size_t i = 0; i < length; ++i) h += ",f" + std::to_string(i);
    return h;
}

void write_features(const FeatureDataset& data, const std::filesystem::path& path) {
    auto out = csv::open_for_write(path);
    out << feature_header(data.features.cols()) << '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        out << data.episode_ids[r] << ',' << data.labels[r];
        for (const double v : data.features.row(r)) out << ',' << static_cast<std::int64_t>(v);
        out << '\n';
    }
    csv::finish_write(out, path);
}

FeatureDataset read_features(const std::filesystem::path& path) {
    csv::Reader in(path);
    const std::string header = in.read_header();
    const auto cols = csv::split(header);
    if (cols.size() < 3 || cols[0] != "episode" || cols[1] != "label")
        in.fail("feature header must start with 'episode,label,f0'");
    const std::size_t length = cols.size() - 2;
    if (header != feature_header(length)) in.fail("malformed feature header");
    const auto bins = static_cast<int>(std::lround(std::sqrt(static_cast<double>(length))));
    if (static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins) != length)
        in.fail("feature count " + std::to_string(length) + " is not a square");

    FeatureDataset data;
    data.bins_per_axis = bins;
    std::vector<double> values;
    std::string line;
    while (in.next(line)) {
        const auto f = csv::split(line);
        if (f.size() != length + 2)
            in.fail("expected " + std::to_string(length + 2) + " fields, got " + std::to_string(f.size()));
        data.episode_ids.push_back(csv::parse_int(f[0], in.path(), in.line_number()));
        if (f[1].empty()) in.fail("empty label");
        data.labels.emplace_back(f[1]);
        for (std::size_t i = 0; i < length; ++i) {
            const auto v = csv::parse_int(f[i + 2], in.path(), in.line_number());
            if (v < 0) in.fail("negative count");
            values.push_back(static_cast<double>(v));
        }
    }
    data.features = Matrix(data.labels.size(), length);
    std::copy(values.begin(), values.end(), data.features.data().begin());
    return data;
}

}  // namespace pursuitlab
