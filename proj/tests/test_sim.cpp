#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/rng.hpp"
#include "pursuitlab/sim.hpp"

using namespace pursuitlab;

namespace {

WorldConfig undamped() {
    WorldConfig cfg;
    cfg.pursuer_physics.damping = 0.0;
    cfg.evader_physics.damping = 0.0;
    return cfg;
}

WorldState one_pursuer_world(Vec2 pursuer, Vec2 evader) {
    WorldState w;
    w.pursuers.push_back({pursuer, {}});
    w.evader = {evader, {}};
    return w;
}

}  // namespace

TEST_CASE("zero action at rest is a fixed point") {
    WorldConfig cfg;
    cfg.n_pursuers = 1;
    const auto w = one_pursuer_world({0.3, -0.2}, {0.1, 0.4});
    const std::vector<Vec2> actions{{0, 0}, {0, 0}};
    const auto next = step(w, actions, cfg);
    CHECK(next.pursuers[0] == w.pursuers[0]);
    CHECK(next.evader == w.evader);
    CHECK(next.step_index == 1);
}

TEST_CASE("single undamped step follows the update rule") {
    auto cfg = undamped();
    cfg.n_pursuers = 1;
    cfg.dt = 0.1;
    const auto w = one_pursuer_world({0, 0}, {0.5, 0.5});
    const std::vector<Vec2> actions{{1, 0}, {0, 0}};
    const auto next = step(w, actions, cfg);
    CHECK(next.pursuers[0].vel.x == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(next.pursuers[0].vel.y == 0.0);
    CHECK(next.pursuers[0].pos.x == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("speed clip rescales and keeps direction") {
    AgentPhysics phys{1.3, 100.0, 0.05, 0.0};
    // vel' = 0 + a*dt = (2, 0)
    const auto out = integrate_agent({{0, 0}, {0, 0}}, {20, 0}, phys, 0.1, 10.0);
    CHECK(out.vel.x == doctest::Approx(1.3));
    CHECK(out.vel.y == 0.0);
    CHECK(out.vel.norm() <= 1.3);
}

TEST_CASE("over-limit actions are clipped, not rejected") {
    AgentPhysics phys{100.0, 2.0, 0.05, 0.0};
    const auto out = integrate_agent({{0, 0}, {0, 0}}, {30, 40}, phys, 1.0, 100.0);
    CHECK(out.vel.norm() <= 2.0);
    CHECK(out.vel.x == doctest::Approx(1.2));
    CHECK(out.vel.y == doctest::Approx(1.6));
}

TEST_CASE("wall contact clamps position and zeroes the outward velocity") {
    AgentPhysics phys{1.0, 3.0, 0.05, 0.0};
    const auto out = integrate_agent({{0.99, -0.99}, {0.5, -0.5}}, {0, 0}, phys, 0.1, 1.0);
    CHECK(out.pos.x == 1.0);
    CHECK(out.pos.y == -1.0);
    CHECK(out.vel.x == 0.0);
    CHECK(out.vel.y == 0.0);

    // Moving away from the wall keeps its velocity.
    const auto away = integrate_agent({{1.0, 0.0}, {-0.5, 0.0}}, {0, 0}, phys, 0.1, 1.0);
    CHECK(away.vel.x == -0.5);
}

TEST_CASE("non-finite actions are rejected") {
    WorldConfig cfg;
    cfg.n_pursuers = 1;
    const auto w = one_pursuer_world({0, 0}, {0.5, 0});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(step(w, std::vector<Vec2>{{nan, 0}, {0, 0}}, cfg), MalformedActionError);
    CHECK_THROWS_AS(step(w, std::vector<Vec2>{{0, 0}, {0, inf}}, cfg), MalformedActionError);
    CHECK_THROWS_AS(step(w, std::vector<Vec2>{{0, 0}}, cfg), MalformedActionError);
}

TEST_CASE("world config validation") {
    WorldConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.evader_physics.max_speed = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.allow_slower_evader = true;
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.pursuer_physics.damping = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.n_pursuers = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("property: bounds hold after every step with random actions") {
    WorldConfig cfg;
    Xoshiro256StarStar rng(7);
    WorldState w;
    w.pursuers.resize(3);
    for (auto& p : w.pursuers) p.pos = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    w.evader.pos = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::vector<Vec2> actions(4);
    for (int t = 0; t < 5000; ++t) {
        for (auto& a : actions) a = {rng.uniform(-20, 20), rng.uniform(-20, 20)};
        w = step(w, actions, cfg);
        for (const auto& p : w.pursuers) {
            REQUIRE(std::abs(p.pos.x) <= cfg.half_extent);
            REQUIRE(std::abs(p.pos.y) <= cfg.half_extent);
            REQUIRE(p.vel.norm() <= cfg.pursuer_physics.max_speed);
        }
        REQUIRE(std::abs(w.evader.pos.x) <= cfg.half_extent);
        REQUIRE(std::abs(w.evader.pos.y) <= cfg.half_extent);
        REQUIRE(w.evader.vel.norm() <= cfg.evader_physics.max_speed);
    }
    CHECK(w.step_index == 5000);
}

TEST_CASE("property: step is a pure function") {
    WorldConfig cfg;
    Xoshiro256StarStar rng(11);
    WorldState w;
    w.pursuers.resize(3);
    for (auto& p : w.pursuers) p = {{rng.uniform(-1, 1), rng.uniform(-1, 1)}, {rng.uniform(-0.5, 0.5), 0.1}};
    const std::vector<Vec2> actions{{1, 2}, {-3, 0.5}, {0.1, 0.1}, {4, -4}};
    const auto a = step(w, actions, cfg);
    const auto b = step(w, actions, cfg);
    CHECK(a == b);
}

TEST_CASE("undamped constant acceleration integrates exactly") {
    auto cfg = undamped();
    cfg.n_pursuers = 1;
    cfg.half_extent = 1e6;
    cfg.dt = 0.125;
    cfg.pursuer_physics.max_speed = 1e6;
    cfg.evader_physics.max_speed = 1e6;
    const Vec2 a{0.5, -0.25};
    WorldState w = one_pursuer_world({0, 0}, {0, 0});
    const std::vector<Vec2> actions{a, {0, 0}};
    for (int k = 1; k <= 100; ++k) {
        w = step(w, actions, cfg);
        REQUIRE(w.pursuers[0].vel == a * (k * cfg.dt));
        // sum_{j=1..k} j * a * dt^2
        REQUIRE(w.pursuers[0].pos == a * (cfg.dt * cfg.dt * k * (k + 1) / 2));
    }
}

TEST_CASE("collision detection examples") {
    WorldConfig cfg;
    cfg.n_pursuers = 1;
    const std::vector<bool> none{false};

    auto far = one_pursuer_world({0, 0}, {1, 0});
    CHECK(detect_collisions(far, cfg, none).collisions == 0);

    auto near = one_pursuer_world({0.1, 0}, {0, 0});
    const auto hit = detect_collisions(near, cfg, none);
    CHECK(hit.collisions == 1);
    CHECK(hit.overlap[0]);

    cfg.collision_mode = CollisionMode::OnsetOnly;
    CHECK(detect_collisions(near, cfg, std::vector<bool>{true}).collisions == 0);
    CHECK(detect_collisions(near, cfg, none).collisions == 1);
}

TEST_CASE("property: collisions are symmetric and velocity independent") {
    WorldConfig cfg;
    Xoshiro256StarStar rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        WorldState w;
        w.pursuers.resize(3);
        for (auto& p : w.pursuers)
            p = {{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        w.evader = {{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}, {rng.uniform(-1, 1), 0}};
        const auto base = detect_collisions(w, cfg, {false, false, false});

        WorldState still = w;
        for (auto& p : still.pursuers) p.vel = {};
        still.evader.vel = {};
        CHECK(detect_collisions(still, cfg, {false, false, false}).overlap == base.overlap);

        // Mirror the geometry through the evader: distances are unchanged.
        WorldState mirrored = w;
        for (auto& p : mirrored.pursuers) p.pos = w.evader.pos * 2.0 - p.pos;
        CHECK(detect_collisions(mirrored, cfg, {false, false, false}).collisions == base.collisions);
    }
}
