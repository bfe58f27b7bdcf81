#pragma once

// Bounded 2D double-integrator particle world: 3 pursuers (by default) and one evader.

#include <cstdint>
#include <span>
#include <vector>

#include "pursuitlab/vec2.hpp"

namespace pursuitlab {

struct AgentPhysics {
    double max_speed = 1.0;  ///< units / time
    double max_accel = 3.0;  ///< units / time^2
    double radius = 0.075;   ///< collision radius, units
    double damping = 0.25;   ///< fraction of velocity lost per step, in [0, 1)

    bool operator==(const AgentPhysics&) const = default;
};

inline constexpr AgentPhysics kDefaultPursuerPhysics{1.0, 3.0, 0.075, 0.25};
inline constexpr AgentPhysics kDefaultEvaderPhysics{1.3, 4.0, 0.05, 0.25};

enum class CollisionMode {
    PerStepOverlap,  ///< every overlapping pursuer counts at every step
    OnsetOnly,       ///< only non-overlap -> overlap transitions count
};

struct WorldConfig {
    double half_extent = 1.0;
    double dt = 0.1;
    int n_pursuers = 3;
    AgentPhysics pursuer_physics = kDefaultPursuerPhysics;
    AgentPhysics evader_physics = kDefaultEvaderPhysics;
    CollisionMode collision_mode = CollisionMode::PerStepOverlap;
    /// Permits an evader slower than the pursuers.
    bool allow_slower_evader = false;

    bool operator==(const WorldConfig&) const = default;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

struct AgentState {
    Vec2 pos;
    Vec2 vel;

    bool operator==(const AgentState&) const = default;
};

struct WorldState {
    std::vector<AgentState> pursuers;
    AgentState evader;
    std::int64_t step_index = 0;

    bool operator==(const WorldState&) const = default;
};

/// Advance one agent by one step: damp, accelerate, clip speed, move, clamp to arena.
AgentState integrate_agent(const AgentState& agent, Vec2 accel, const AgentPhysics& physics,
                           double dt, double half_extent);

/// Advance the world by one step. `actions` holds one acceleration per pursuer
/// followed by the evader's. Over-limit actions are clipped to max_accel;
/// non-finite components raise MalformedActionError.
WorldState step(const WorldState& world, std::span<const Vec2> actions, const WorldConfig& cfg);

struct CollisionResult {
    int collisions = 0;
    std::vector<bool> overlap;  ///< per pursuer, current overlap state
};

/// Overlap test for every pursuer against the evader. `prev_overlap` feeds the
/// OnsetOnly mode and must have one entry per pursuer.
CollisionResult detect_collisions(const WorldState& world, const WorldConfig& cfg,
                                  const std::vector<bool>& prev_overlap);

}  // namespace pursuitlab
