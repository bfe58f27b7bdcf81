#pragma once

// Spatial occupancy features: a B x B histogram of evader positions over one
// episode, flattened row-major (index = iy * B + ix, iy counts up from y = -h).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pursuitlab/episode.hpp"
#include "pursuitlab/matrix.hpp"
#include "pursuitlab/vec2.hpp"

namespace pursuitlab {

struct HistogramSpec {
    int bins_per_axis = 5;
    double half_extent = 1.0;

    void validate() const;
    std::size_t length() const {
        return static_cast<std::size_t>(bins_per_axis) * static_cast<std::size_t>(bins_per_axis);
    }
};

inline constexpr int kBinPresets[] = {5, 20, 100};

struct FeatureVector {
    std::vector<std::int64_t> values;
    std::string team_label;
    std::int64_t episode_id = 0;
};

/// Per-axis cell index, clamped to [0, B-1].
int axis_bin(double coord, const HistogramSpec& spec);

std::size_t bin_index(Vec2 pos, const HistogramSpec& spec);

FeatureVector featurize(const EpisodeRecord& record, const HistogramSpec& spec);

/// Feature matrix (one row per episode, B^2 columns) with labels and ids carried through.
struct FeatureDataset {
    Matrix features;
    std::vector<std::string> labels;
    std::vector<std::int64_t> episode_ids;
    int bins_per_axis = 0;

    std::size_t size() const { return labels.size(); }
};

/// Requires a uniform trajectory length; throws DataFormatError naming the first
/// episode whose length differs from the first record's.
FeatureDataset build_dataset(const std::vector<EpisodeRecord>& records, const HistogramSpec& spec);

/// `episode,label,f0,...,f{B^2-1}`; counts are written as integers.
void write_features(const FeatureDataset& data, const std::filesystem::path& path);
FeatureDataset read_features(const std::filesystem::path& path);

std::string feature_header(std::size_t length);

}  // namespace pursuitlab
