#include "pursuitlab/episode.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/rng.hpp"

namespace pursuitlab {

void TeamConfig::validate(const WorldConfig& world) const {
    if (label.empty()) throw ConfigError("team label must not be empty");
    // Labels appear in CSV fields and file names.
    for (const char ch : label) {
        const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' ||
                        ch == '+' || ch == '.';
        if (!ok) throw ConfigError("team label '" + label + "' may only contain [A-Za-z0-9_+.-]");
    }
    if (pursuer_policies.size() != static_cast<std::size_t>(world.n_pursuers))
        throw ConfigError("team '" + label + "' has " + std::to_string(pursuer_policies.size()) +
                          " pursuer policies, world has n_pursuers=" +
                          std::to_string(world.n_pursuers));
    for (const auto& p : pursuer_policies) {
        if (!p.is_pursuer_policy())
            throw ConfigError("team '" + label + "': '" + to_code(p) + "' is not a pursuer policy");
        p.validate(world.half_extent);
    }
    if (evader_policy.is_pursuer_policy())
        throw ConfigError("team '" + label + "': '" + to_code(evader_policy) +
                          "' is not an evader policy");
    evader_policy.validate(world.half_extent);
}

std::vector<TeamConfig> analytical_teams(const PolicyKind& evader) {
    const auto C = PolicyKind::chaser();
    const auto I = PolicyKind::interceptor();
    return {
        {{C, C, C}, evader, "3C"},
        {{C, C, I}, evader, "2C1I"},
        {{C, I, I}, evader, "1C2I"},
        {{I, I, I}, evader, "3I"},
    };
}

void ExperimentSpec::validate() const {
    world.validate();
    if (teams.empty()) throw ConfigError("experiment needs at least one team");
    if (episodes_per_team < 1) throw ConfigError("episodes_per_team must be >= 1");
    if (steps_per_episode < 0) throw ConfigError("steps_per_episode must be >= 0");
    std::set<std::string> labels;
    for (const auto& t : teams) {
        t.validate(world);
        if (!labels.insert(t.label).second)
            throw ConfigError("duplicate team label '" + t.label + "'");
    }
}

WorldState initial_state(const WorldConfig& world, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    const double h = world.half_extent;
    const auto draw = [&] {
        const double x = rng.uniform(-h, h);
        const double y = rng.uniform(-h, h);
        return Vec2{x, y};
    };
    WorldState s;
    s.pursuers.resize(static_cast<std::size_t>(world.n_pursuers));
    for (auto& p : s.pursuers) p.pos = draw();
    s.evader.pos = draw();
    return s;
}

EpisodeRecord run_episode_from(const TeamConfig& team, const WorldConfig& world, WorldState state,
                               std::int64_t steps, bool record_pursuers) {
    const std::size_t n = state.pursuers.size();
    if (team.pursuer_policies.size() != n)
        throw ConfigError("team '" + team.label + "' does not match the pursuer count");

    EpisodeRecord rec;
    rec.team_label = team.label;
    rec.evader_positions.reserve(static_cast<std::size_t>(std::max<std::int64_t>(steps, 0)));
    if (record_pursuers) rec.pursuer_positions.assign(n, {});

    std::vector<Vec2> actions(n + 1);
    std::vector<bool> overlap(n, false);
    for (std::int64_t t = 0; t < steps; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            actions[i] = pursuer_action(team.pursuer_policies[i], state.pursuers[i], state.evader, world);
        actions[n] = evader_action(team.evader_policy, state, world);

        state = step(state, actions, world);
        auto hits = detect_collisions(state, world, overlap);
        overlap = std::move(hits.overlap);
        for (int c = 0; c < hits.collisions; ++c) rec.collision_steps.push_back(state.step_index);
        rec.collision_count += hits.collisions;

        rec.evader_positions.push_back(state.evader.pos);
        if (record_pursuers) {
            for (std::size_t i = 0; i < n; ++i) rec.pursuer_positions[i].push_back(state.pursuers[i].pos);
        }
    }
    return rec;
}

EpisodeRecord run_episode(const TeamConfig& team, const WorldConfig& world, std::uint64_t seed,
                          std::int64_t steps, bool record_pursuers) {
    EpisodeRecord rec =
        run_episode_from(team, world, initial_state(world, seed), steps, record_pursuers);
    rec.seed = seed;
    return rec;
}

std::vector<EpisodeRecord> run_batch(const ExperimentSpec& spec, unsigned workers) {
    spec.validate();
    const std::size_t per_team = static_cast<std::size_t>(spec.episodes_per_team);
    const std::size_t total = spec.teams.size() * per_team;
    std::vector<EpisodeRecord> out(total);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t first_failed = total;
    std::exception_ptr first_error;

    const auto work = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= total) return;
            const std::size_t t = job / per_team;
            const std::size_t i = job % per_team;
            try {
                const auto seed = derive_seed(spec.master_seed, t, i);
                EpisodeRecord rec = run_episode(spec.teams[t], spec.world, seed,
                                                spec.steps_per_episode, spec.record_pursuers);
                rec.episode_id = static_cast<std::int64_t>(job);
                out[job] = std::move(rec);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                // Report the lowest failing index so the error is schedule-independent.
                if (job < first_failed) {
                    first_failed = job;
                    first_error = std::make_exception_ptr(EpisodeError(t, i, e.what()));
                }
            }
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(work);
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace pursuitlab
