#pragma once

// Trajectory persistence.
//
// <name>.csv           episode,step,agent,x,y   (agent in {e, p0, p1, ...})
// <name>.episodes.csv  episode,team,seed,collisions,collision_steps
//
// The trajectory file carries positions (17 significant digits); the episode
// index sidecar carries the per-episode metadata, including episodes with no
// steps, so that read_trajectories(write_trajectories(x)) == x.

#include <filesystem>
#include <vector>

#include "pursuitlab/episode.hpp"

namespace pursuitlab {

inline constexpr const char* kTrajectoryHeader = "episode,step,agent,x,y";
inline constexpr const char* kEpisodeIndexHeader = "episode,team,seed,collisions,collision_steps";
inline constexpr const char* kCollisionHeader = "episode,team,collisions";

/// "dir/name.csv" -> "dir/name.episodes.csv".
std::filesystem::path episode_index_path(const std::filesystem::path& trajectory_path);

void write_trajectories(const std::vector<EpisodeRecord>& records, const std::filesystem::path& path);
std::vector<EpisodeRecord> read_trajectories(const std::filesystem::path& path);

/// `episode,team,collisions`, one row per record.
void write_collisions(const std::vector<EpisodeRecord>& records, const std::filesystem::path& path);

}  // namespace pursuitlab
