#pragma once

// Action-selection policies. Pursuers: Chaser (pure pursuit) and Interceptor
// (constant-velocity lead). Evaders: a reactive potential-field policy and a
// non-reactive circler. All policies are pure functions of their arguments and
// return accelerations with |a| <= max_accel.

#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "pursuitlab/sim.hpp"
#include "pursuitlab/vec2.hpp"

namespace pursuitlab {

inline constexpr double kCoincidenceEps = 1e-12;

struct PotentialFieldGains {
    double k_agent = 0.2;
    double k_wall = 0.05;

    bool operator==(const PotentialFieldGains&) const = default;
};

enum class PolicyType { Chaser, Interceptor, PotentialFieldEvader, CirclerEvader };

/// Lead angle for the default physics: orbits settle within ~0.05 of rho for rho near 0.5.
inline constexpr double kDefaultCirclerDeltaTheta = 1.3;

/// A policy selection plus its parameters.
///
/// String codes: "chaser", "interceptor", "pf", "pf:<k_agent>:<k_wall>",
/// "circle:<rho>", "circle:<rho>:<delta_theta>".
struct PolicyKind {
    PolicyType type = PolicyType::Chaser;
    double rho = 0.5;                                   ///< circler radius
    double delta_theta = kDefaultCirclerDeltaTheta;     ///< circler lead angle, radians
    PotentialFieldGains gains{};                        ///< potential-field gains

    bool operator==(const PolicyKind&) const = default;

    static PolicyKind chaser() { return {PolicyType::Chaser}; }
    static PolicyKind interceptor() { return {PolicyType::Interceptor}; }
    static PolicyKind potential_field(PotentialFieldGains g = {}) {
        PolicyKind k{PolicyType::PotentialFieldEvader};
        k.gains = g;
        return k;
    }
    static PolicyKind circler(double rho, double delta_theta = kDefaultCirclerDeltaTheta) {
        PolicyKind k{PolicyType::CirclerEvader};
        k.rho = rho;
        k.delta_theta = delta_theta;
        return k;
    }

    bool is_pursuer_policy() const {
        return type == PolicyType::Chaser || type == PolicyType::Interceptor;
    }

    /// Throws ConfigError when parameters violate their ranges for `half_extent`.
    void validate(double half_extent) const;
};

/// Parse a policy string code. Throws ConfigError on unknown codes or bad numbers.
PolicyKind parse_policy(std::string_view code);

/// Canonical string code; parse_policy(to_code(k)) == k.
std::string to_code(const PolicyKind& kind);

struct InterceptSolution {
    double time = 0.0;
    Vec2 point;
    bool feasible = false;
};

Vec2 chaser_action(const AgentState& self, Vec2 evader_pos, double max_accel);

/// Smallest t > 0 with |e + v_e t - p| = s_p t, i.e. the earliest meeting point
/// for a pursuer flying straight at speed s_p toward a constant-velocity evader.
InterceptSolution intercept_point(Vec2 pursuer_pos, double pursuer_speed, Vec2 evader_pos,
                                  Vec2 evader_vel);

/// Full acceleration toward the intercept point, or toward the evader itself when
/// no intercept exists.
Vec2 interceptor_action(const AgentState& self, const AgentState& evader, double max_accel,
                        double max_speed);

Vec2 potential_field_evader_action(const AgentState& evader, std::span<const Vec2> pursuer_positions,
                                   const WorldConfig& cfg, const PotentialFieldGains& gains);

/// Steers toward the point delta_theta ahead on the circle of radius rho about the origin.
Vec2 circler_evader_action(const AgentState& evader, double rho, double delta_theta,
                           double max_accel);

/// Dispatch helper used by the episode runner.
Vec2 pursuer_action(const PolicyKind& kind, const AgentState& self, const AgentState& evader,
                    const WorldConfig& cfg);
Vec2 evader_action(const PolicyKind& kind, const WorldState& world, const WorldConfig& cfg);

}  // namespace pursuitlab
