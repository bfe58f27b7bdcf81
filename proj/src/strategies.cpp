#include "pursuitlab/strategies.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

constexpr double kFieldEps = 1e-3;

double parse_real(std::string_view text, std::string_view code) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw ConfigError("bad number '" + std::string(text) + "' in policy code '" +
                          std::string(code) + "'");
    return value;
}

std::vector<std::string_view> split_colon(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(':', start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

void PolicyKind::validate(double half_extent) const {
    if (type == PolicyType::CirclerEvader) {
        if (!(rho > 0.0 && rho < half_extent))
            throw ConfigError("circler rho must lie in (0, half_extent)");
        if (!(delta_theta > 0.0 && delta_theta < std::numbers::pi))
            throw ConfigError("circler delta_theta must lie in (0, pi)");
    }
    if (type == PolicyType::PotentialFieldEvader) {
        if (!(gains.k_agent >= 0.0) || !(gains.k_wall >= 0.0) || !std::isfinite(gains.k_agent) ||
            !std::isfinite(gains.k_wall))
            throw ConfigError("potential-field gains must be finite and >= 0");
    }
}

PolicyKind parse_policy(std::string_view code) {
    const auto parts = split_colon(code);
    const auto head = parts.front();
    if (head == "chaser" && parts.size() == 1) return PolicyKind::chaser();
    if (head == "interceptor" && parts.size() == 1) return PolicyKind::interceptor();
    if (head == "pf") {
        if (parts.size() == 1) return PolicyKind::potential_field();
        if (parts.size() == 3)
            return PolicyKind::potential_field(
                {parse_real(parts[1], code), parse_real(parts[2], code)});
    }
    if (head == "circle") {
        if (parts.size() == 2) return PolicyKind::circler(parse_real(parts[1], code));
        if (parts.size() == 3)
            return PolicyKind::circler(parse_real(parts[1], code), parse_real(parts[2], code));
    }
    throw ConfigError("unknown policy code '" + std::string(code) + "'");
}

std::string to_code(const PolicyKind& kind) {
    switch (kind.type) {
        case PolicyType::Chaser:
            return "chaser";
        case PolicyType::Interceptor:
            return "interceptor";
        case PolicyType::PotentialFieldEvader:
            if (kind.gains == PotentialFieldGains{}) return "pf";
            return "pf:" + csv::format_real(kind.gains.k_agent) + ":" + csv::format_real(kind.gains.k_wall);
        case PolicyType::CirclerEvader:
            if (kind.delta_theta == kDefaultCirclerDeltaTheta)
                return "circle:" + csv::format_real(kind.rho);
            return "circle:" + csv::format_real(kind.rho) + ":" + csv::format_real(kind.delta_theta);
    }
    return {};
}

Vec2 chaser_action(const AgentState& self, Vec2 evader_pos, double max_accel) {
    return clamp_norm(unit_or_zero(evader_pos - self.pos, kCoincidenceEps) * max_accel, max_accel);
}

InterceptSolution intercept_point(Vec2 pursuer_pos, double pursuer_speed, Vec2 evader_pos,
                                  Vec2 evader_vel) {
    // (|v|^2 - s^2) t^2 + 2 (d . v) t + |d|^2 = 0, d = e - p
    const Vec2 d = evader_pos - pursuer_pos;
    const double a = evader_vel.norm_sq() - pursuer_speed * pursuer_speed;
    const double b = 2.0 * d.dot(evader_vel);
    const double c = d.norm_sq();

    InterceptSolution sol;
    double t = std::numeric_limits<double>::infinity();
    if (a == 0.0) {
        if (b != 0.0) {
            const double root = -c / b;
            if (root > 0.0) t = root;
        }
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            // Stable pair of roots: q = -(b + sign(b) sqrt(disc)) / 2.
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + std::copysign(sq, b));
            double r1 = std::numeric_limits<double>::quiet_NaN();
            double r2 = std::numeric_limits<double>::quiet_NaN();
            if (q != 0.0) {
                r1 = q / a;
                r2 = c / q;
            } else {
                // b == 0 and disc == 0: c == 0, the double root is t = 0.
                r1 = r2 = 0.0;
            }
            for (const double r : {r1, r2}) {
                if (r > 0.0 && r < t) t = r;
            }
        }
    }
    if (std::isfinite(t)) {
        sol.feasible = true;
        sol.time = t;
        sol.point = evader_pos + evader_vel * t;
    }
    return sol;
}

Vec2 interceptor_action(const AgentState& self, const AgentState& evader, double max_accel,
                        double max_speed) {
    const InterceptSolution sol = intercept_point(self.pos, max_speed, evader.pos, evader.vel);
    const Vec2 aim = sol.feasible ? sol.point : evader.pos;
    return clamp_norm(unit_or_zero(aim - self.pos, kCoincidenceEps) * max_accel, max_accel);
}

Vec2 potential_field_evader_action(const AgentState& evader, std::span<const Vec2> pursuer_positions,
                                   const WorldConfig& cfg, const PotentialFieldGains& gains) {
    Vec2 agent_term;
    for (const Vec2& p : pursuer_positions) {
        const Vec2 away = evader.pos - p;
        agent_term += unit_or_zero(away, kCoincidenceEps) / std::max(kFieldEps, away.norm_sq());
    }
    const double h = cfg.half_extent;
    const auto wall = [](double dist) { return 1.0 / std::max(kFieldEps, dist * dist); };
    // Inward normals of the walls x=+h, x=-h, y=+h, y=-h.
    const Vec2 wall_term{wall(h + evader.pos.x) - wall(h - evader.pos.x),
                         wall(h + evader.pos.y) - wall(h - evader.pos.y)};
    const Vec2 raw = agent_term * gains.k_agent + wall_term * gains.k_wall;
    return clamp_norm(raw, cfg.evader_physics.max_accel);
}

Vec2 circler_evader_action(const AgentState& evader, double rho, double delta_theta,
                           double max_accel) {
    const Vec2 pos = evader.pos;
    const double theta = pos.norm() < 1e-9 ? 0.0 : std::atan2(pos.y, pos.x);
    const Vec2 target{rho * std::cos(theta + delta_theta), rho * std::sin(theta + delta_theta)};
    return clamp_norm(unit_or_zero(target - pos, kCoincidenceEps) * max_accel, max_accel);
}

Vec2 pursuer_action(const PolicyKind& kind, const AgentState& self, const AgentState& evader,
                    const WorldConfig& cfg) {
    const auto& phys = cfg.pursuer_physics;
    switch (kind.type) {
        case PolicyType::Chaser:
            return chaser_action(self, evader.pos, phys.max_accel);
        case PolicyType::Interceptor:
            return interceptor_action(self, evader, phys.max_accel, phys.max_speed);
        default:
            throw ConfigError("policy '" + to_code(kind) + "' cannot drive a pursuer");
    }
}

Vec2 evader_action(const PolicyKind& kind, const WorldState& world, const WorldConfig& cfg) {
    const auto& phys = cfg.evader_physics;
    switch (kind.type) {
        case PolicyType::PotentialFieldEvader: {
            std::vector<Vec2> positions;
            positions.reserve(world.pursuers.size());
            for (const auto& p : world.pursuers) positions.push_back(p.pos);
            return potential_field_evader_action(world.evader, positions, cfg, kind.gains);
        }
        case PolicyType::CirclerEvader:
            return circler_evader_action(world.evader, kind.rho, kind.delta_theta, phys.max_accel);
        default:
            throw ConfigError("policy '" + to_code(kind) + "' cannot drive the evader");
    }
}

}  // namespace pursuitlab
