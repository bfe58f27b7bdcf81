#include "pursuitlab/sim.hpp"

#include <cmath>
#include <string>

#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

void validate_physics(const AgentPhysics& p, const char* role) {
    const std::string who(role);
    if (!(p.max_speed > 0.0) || !std::isfinite(p.max_speed))
        throw ConfigError(who + ".max_speed must be finite and > 0");
    // Zero acceleration is accepted so a stationary agent can be configured.
    if (!(p.max_accel >= 0.0) || !std::isfinite(p.max_accel))
        throw ConfigError(who + ".max_accel must be finite and >= 0");
    if (!(p.radius > 0.0) || !std::isfinite(p.radius))
        throw ConfigError(who + ".radius must be finite and > 0");
    if (!(p.damping >= 0.0 && p.damping < 1.0))
        throw ConfigError(who + ".damping must lie in [0, 1)");
}

// Clamp one axis to the arena; zero the velocity component pointing out of it.
void clamp_axis(double& p, double& v, double h) {
    if (p >= h) {
        p = h;
        if (v > 0.0) v = 0.0;
    } else if (p <= -h) {
        p = -h;
        if (v < 0.0) v = 0.0;
    }
}

}  // namespace

void WorldConfig::validate() const {
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw ConfigError("half_extent must be finite and > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be finite and > 0");
    if (n_pursuers < 1) throw ConfigError("n_pursuers must be >= 1");
    validate_physics(pursuer_physics, "pursuer");
    validate_physics(evader_physics, "evader");
    if (!allow_slower_evader && evader_physics.max_speed < pursuer_physics.max_speed)
        throw ConfigError(
            "evader.max_speed must be >= pursuer.max_speed (set allow_slower_evader to override)");
}

AgentState integrate_agent(const AgentState& agent, Vec2 accel, const AgentPhysics& physics,
                           double dt, double half_extent) {
    const Vec2 a = clamp_norm(accel, physics.max_accel);
    AgentState out;
    out.vel = agent.vel * (1.0 - physics.damping) + a * dt;
    out.vel = clamp_norm(out.vel, physics.max_speed);
    out.pos = agent.pos + out.vel * dt;
    clamp_axis(out.pos.x, out.vel.x, half_extent);
    clamp_axis(out.pos.y, out.vel.y, half_extent);
    return out;
}

WorldState step(const WorldState& world, std::span<const Vec2> actions, const WorldConfig& cfg) {
    const std::size_t n = world.pursuers.size();
    if (actions.size() != n + 1)
        throw MalformedActionError("expected " + std::to_string(n + 1) + " actions, got " +
                                   std::to_string(actions.size()));
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (!actions[i].finite())
            throw MalformedActionError("non-finite action for agent " + std::to_string(i));
    }

    WorldState next;
    next.pursuers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        next.pursuers.push_back(integrate_agent(world.pursuers[i], actions[i], cfg.pursuer_physics,
                                                cfg.dt, cfg.half_extent));
    }
    next.evader =
        integrate_agent(world.evader, actions[n], cfg.evader_physics, cfg.dt, cfg.half_extent);
    next.step_index = world.step_index + 1;
    return next;
}

CollisionResult detect_collisions(const WorldState& world, const WorldConfig& cfg,
                                  const std::vector<bool>& prev_overlap) {
    const std::size_t n = world.pursuers.size();
    const double reach = cfg.pursuer_physics.radius + cfg.evader_physics.radius;
    CollisionResult out;
    out.overlap.resize(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const bool now = distance(world.pursuers[i].pos, world.evader.pos) < reach;
        out.overlap[i] = now;
        if (!now) continue;
        if (cfg.collision_mode == CollisionMode::PerStepOverlap) {
            ++out.collisions;
        } else if (i >= prev_overlap.size() || !prev_overlap[i]) {
            ++out.collisions;
        }
    }
    return out;
}

}  // namespace pursuitlab
