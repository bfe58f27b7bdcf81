#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pursuitlab/sim.hpp"
#include "pursuitlab/strategies.hpp"

namespace pursuitlab {

struct TeamConfig {
    std::vector<PolicyKind> pursuer_policies;
    PolicyKind evader_policy = PolicyKind::potential_field();
    std::string label;

    bool operator==(const TeamConfig&) const = default;

    void validate(const WorldConfig& world) const;
};

/// "3C", "2C1I", "1C2I", "3I": the four analytical pursuer compositions, all
/// against `evader`.
std::vector<TeamConfig> analytical_teams(const PolicyKind& evader = PolicyKind::potential_field());

struct EpisodeRecord {
    std::int64_t episode_id = 0;
    std::uint64_t seed = 0;
    std::string team_label;
    std::vector<Vec2> evader_positions;                  ///< position after each step
    std::int64_t collision_count = 0;
    std::vector<std::int64_t> collision_steps;           ///< 1-based step, once per counted collision
    std::vector<std::vector<Vec2>> pursuer_positions;    ///< [pursuer][step], only in full mode

    bool operator==(const EpisodeRecord&) const = default;
};

struct ExperimentSpec {
    std::vector<TeamConfig> teams;
    int episodes_per_team = 1;
    int steps_per_episode = 1;
    std::uint64_t master_seed = 0;
    WorldConfig world;
    bool record_pursuers = false;

    void validate() const;
};

/// Initial state: positions uniform over the arena, drawn in agent order
/// (pursuer 0..n-1, then evader; x before y) from Xoshiro256StarStar(seed);
/// velocities zero.
WorldState initial_state(const WorldConfig& world, std::uint64_t seed);

/// Run `steps` iterations of policy query -> step -> collision check.
EpisodeRecord run_episode(const TeamConfig& team, const WorldConfig& world, std::uint64_t seed,
                          std::int64_t steps, bool record_pursuers = false);

/// Same as run_episode but from an explicit starting state.
EpisodeRecord run_episode_from(const TeamConfig& team, const WorldConfig& world, WorldState start,
                               std::int64_t steps, bool record_pursuers = false);

/// All episodes of the experiment ordered by (team index, episode index).
/// Episode (t, i) uses derive_seed(master_seed, t, i) and receives
/// episode_id = t * episodes_per_team + i. `workers` never affects the result.
std::vector<EpisodeRecord> run_batch(const ExperimentSpec& spec, unsigned workers = 1);

}  // namespace pursuitlab
