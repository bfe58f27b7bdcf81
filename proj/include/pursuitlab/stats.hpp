#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pursuitlab/episode.hpp"
#include "pursuitlab/vec2.hpp"

namespace pursuitlab {

/// Where radii are measured from.
enum class RadiusOrigin {
    Centroid,  ///< the episode's mean position (default)
    Arena,     ///< the arena center (0, 0)
};

/// Mean distance of the positions from their centroid:
///   (1/n) * sum_i sqrt((x_i - mean_x)^2 + (y_i - mean_y)^2)
/// Throws InsufficientDataError for an empty trajectory.
double mean_radius(std::span<const Vec2> positions, RadiusOrigin origin = RadiusOrigin::Centroid);

Vec2 centroid(std::span<const Vec2> positions);

struct Histogram {
    std::vector<double> bin_edges;      ///< size = counts.size() + 1
    std::vector<std::int64_t> counts;
};

struct CollisionSummary {
    std::vector<std::int64_t> per_episode_collisions;
    std::int64_t total = 0;
    Histogram histogram;  ///< unit-width bins [k, k+1) for k = 0..max
};

struct RadiusSummary {
    std::vector<double> per_episode_mean_radius;
    Histogram histogram;  ///< fixed-width bins over [0, half_extent * sqrt(2)]
};

CollisionSummary collision_summary(const std::vector<EpisodeRecord>& records);

/// Episodes with no recorded positions are rejected.
RadiusSummary radius_summary(const std::vector<EpisodeRecord>& records, double bin_width,
                             double half_extent = 1.0,
                             RadiusOrigin origin = RadiusOrigin::Centroid);

/// Records grouped by team label, in first-appearance order.
std::vector<std::pair<std::string, std::vector<EpisodeRecord>>> group_by_team(
    const std::vector<EpisodeRecord>& records);

}  // namespace pursuitlab
