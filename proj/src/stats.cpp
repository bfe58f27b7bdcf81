#include "pursuitlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pursuitlab/errors.hpp"

namespace pursuitlab {

Vec2 centroid(std::span<const Vec2> positions) {
    if (positions.empty()) throw InsufficientDataError("centroid of an empty trajectory");
    // Accumulate offsets from the first point so a stationary trajectory has an exact centroid.
    const Vec2 ref = positions.front();
    Vec2 sum;
    for (const Vec2& p : positions) sum += p - ref;
    return ref + sum / static_cast<double>(positions.size());
}

double mean_radius(std::span<const Vec2> positions, RadiusOrigin origin) {
    if (positions.empty()) throw InsufficientDataError("mean radius of an empty trajectory");
    const Vec2 c = origin == RadiusOrigin::Centroid ? centroid(positions) : Vec2{};
    double sum = 0.0;
    for (const Vec2& p : positions) sum += distance(p, c);
    return sum / static_cast<double>(positions.size());
}

CollisionSummary collision_summary(const std::vector<EpisodeRecord>& records) {
    if (records.empty()) throw InsufficientDataError("collision summary needs at least one episode");
    CollisionSummary s;
    std::int64_t max_count = 0;
    for (const auto& r : records) {
        s.per_episode_collisions.push_back(r.collision_count);
        s.total += r.collision_count;
        max_count = std::max(max_count, r.collision_count);
    }
    s.histogram.counts.assign(static_cast<std::size_t>(max_count) + 1, 0);
    for (std::int64_t k = 0; k <= max_count + 1; ++k) s.histogram.bin_edges.push_back(static_cast<double>(k));
    for (const auto c : s.per_episode_collisions) ++s.histogram.counts[static_cast<std::size_t>(c)];
    return s;
}

RadiusSummary radius_summary(const std::vector<EpisodeRecord>& records, double bin_width,
                             double half_extent, RadiusOrigin origin) {
    if (records.empty()) throw InsufficientDataError("radius summary needs at least one episode");
    if (!(bin_width > 0.0)) throw ConfigError("radius bin width must be > 0");

    RadiusSummary s;
    const double upper = half_extent * std::sqrt(2.0);
    const auto n_bins = static_cast<std::size_t>(std::max(1.0, std::ceil(upper / bin_width - 1e-9)));
    s.histogram.counts.assign(n_bins, 0);
    for (std::size_t k = 0; k <= n_bins; ++k) s.histogram.bin_edges.push_back(bin_width * static_cast<double>(k));

    for (const auto& r : records) {
        const double radius = mean_radius(r.evader_positions, origin);
        s.per_episode_mean_radius.push_back(radius);
        auto bin = static_cast<std::size_t>(std::floor(radius / bin_width));
        bin = std::min(bin, n_bins - 1);
        ++s.histogram.counts[bin];
    }
    return s;
}

std::vector<std::pair<std::string, std::vector<EpisodeRecord>>> group_by_team(
    const std::vector<EpisodeRecord>& records) {
    std::vector<std::pair<std::string, std::vector<EpisodeRecord>>> groups;
    std::map<std::string, std::size_t> where;
    for (const auto& r : records) {
        auto [it, inserted] = where.try_emplace(r.team_label, groups.size());
        if (inserted) groups.emplace_back(r.team_label, std::vector<EpisodeRecord>{});
        groups[it->second].second.push_back(r);
    }
    return groups;
}

}  // namespace pursuitlab
