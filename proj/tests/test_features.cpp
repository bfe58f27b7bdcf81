#include "doctest.h"

#include <filesystem>
#include <numeric>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/episode.hpp"
#include "pursuitlab/features.hpp"
#include "pursuitlab/rng.hpp"

using namespace pursuitlab;

namespace {

EpisodeRecord record_with(std::vector<Vec2> positions, std::int64_t id = 0, std::string label = "3C") {
    EpisodeRecord r;
    r.episode_id = id;
    r.team_label = std::move(label);
    r.evader_positions = std::move(positions);
    return r;
}

std::int64_t total(const std::vector<std::int64_t>& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

}  // namespace

TEST_CASE("bin_index examples") {
    const HistogramSpec s{5, 1.0};
    CHECK(axis_bin(0.0, s) == 2);
    CHECK(bin_index({0, 0}, s) == 12);
    CHECK(bin_index({1, 1}, s) == 24);
    CHECK(bin_index({-1, -1}, s) == 0);
    CHECK(bin_index({1, -1}, s) == 4);
    CHECK(bin_index({-1, 1}, s) == 20);
    // Out-of-range coordinates clamp to the edge bins.
    CHECK(bin_index({5, -7}, s) == 4);
}

TEST_CASE("histogram spec validation") {
    CHECK_THROWS_AS((HistogramSpec{0, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((HistogramSpec{5, 0.0}.validate()), ConfigError);
    CHECK_NOTHROW((HistogramSpec{1, 2.0}.validate()));
    for (int b : kBinPresets) CHECK(HistogramSpec{b, 1.0}.length() == static_cast<std::size_t>(b * b));
}

TEST_CASE("featurize examples") {
    const HistogramSpec s{5, 1.0};
    const auto fv = featurize(record_with(std::vector<Vec2>(25, Vec2{0, 0}), 4, "2C1I"), s);
    REQUIRE(fv.values.size() == 25);
    for (std::size_t i = 0; i < 25; ++i) CHECK(fv.values[i] == (i == 12 ? 25 : 0));
    CHECK(fv.episode_id == 4);
    CHECK(fv.team_label == "2C1I");

    const auto empty = featurize(record_with({}), s);
    CHECK(empty.values == std::vector<std::int64_t>(25, 0));
}

TEST_CASE("cell-center grid fills every cell once") {
    const HistogramSpec s{20, 1.0};
    const double w = 2.0 / 20;
    std::vector<Vec2> pts;
    for (int iy = 0; iy < 20; ++iy)
        for (int ix = 0; ix < 20; ++ix) pts.push_back({-1.0 + (ix + 0.5) * w, -1.0 + (iy + 0.5) * w});
    const auto fv = featurize(record_with(pts), s);
    CHECK(fv.values == std::vector<std::int64_t>(400, 1));
    // Each center lands in its own (iy, ix) cell.
    for (int iy = 0; iy < 20; ++iy)
        for (int ix = 0; ix < 20; ++ix)
            CHECK(bin_index(pts[static_cast<std::size_t>(iy * 20 + ix)], s) ==
                  static_cast<std::size_t>(iy * 20 + ix));
}

TEST_CASE("conservation and translation consistency on simulated trajectories") {
    const auto teams = analytical_teams();
    WorldConfig w;
    for (int b : kBinPresets) {
        const HistogramSpec s{b, 1.0};
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const auto rec = run_episode(teams[seed % 4], w, seed, 300);
            CHECK(total(featurize(rec, s).values) == 300);
        }
    }

    const HistogramSpec s{20, 1.0};
    const double w20 = 0.1;
    Xoshiro256StarStar rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        // Stay away from cell boundaries and the right wall so the shift is exact.
        const int ix = static_cast<int>(rng.below(19));
        const int iy = static_cast<int>(rng.below(20));
        const Vec2 p{-1.0 + (ix + 0.1 + 0.8 * rng.uniform01()) * w20, -1.0 + (iy + 0.1 + 0.8 * rng.uniform01()) * w20};
        CHECK(bin_index(p + Vec2{w20, 0}, s) == bin_index(p, s) + 1);
    }
}

TEST_CASE("flattened layout round trips") {
    for (int b : kBinPresets) {
        const HistogramSpec s{b, 1.0};
        const double w = 2.0 / b;
        for (std::size_t idx = 0; idx < s.length(); ++idx) {
            const auto iy = static_cast<int>(idx / static_cast<std::size_t>(b));
            const auto ix = static_cast<int>(idx % static_cast<std::size_t>(b));
            const Vec2 center{-1.0 + (ix + 0.5) * w, -1.0 + (iy + 0.5) * w};
            REQUIRE(bin_index(center, s) == idx);
        }
    }
}

TEST_CASE("build_dataset shapes, order and errors") {
    const HistogramSpec s5{5, 1.0};
    const auto none = build_dataset({}, s5);
    CHECK(none.features.rows() == 0);
    CHECK(none.size() == 0);

    ExperimentSpec spec;
    spec.teams = analytical_teams();
    spec.episodes_per_team = 3;
    spec.steps_per_episode = 50;
    const auto recs = run_batch(spec);
    const HistogramSpec s100{100, 1.0};
    const auto big = build_dataset(std::vector<EpisodeRecord>(recs.begin(), recs.begin() + 10), s100);
    CHECK(big.features.rows() == 10);
    CHECK(big.features.cols() == 10000);
    for (std::size_t r = 0; r < 10; ++r) {
        const auto row = big.features.row(r);
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == 50.0);
        CHECK(big.labels[r] == recs[r].team_label);
        CHECK(big.episode_ids[r] == recs[r].episode_id);
    }

    auto mixed = recs;
    mixed[5].evader_positions.pop_back();
    try {
        build_dataset(mixed, s5);
        FAIL("expected mixed-length error");
    } catch (const DataFormatError& e) {
        CHECK(std::string(e.what()).find(std::to_string(mixed[5].episode_id)) != std::string::npos);
    }
}

TEST_CASE("feature CSV round trip") {
    ExperimentSpec spec;
    spec.teams = analytical_teams();
    spec.episodes_per_team = 5;
    spec.steps_per_episode = 100;
    const auto data = build_dataset(run_batch(spec), HistogramSpec{5, 1.0});
    const auto path = std::filesystem::temp_directory_path() / "pursuitlab_test_features.csv";
    write_features(data, path);
    const auto back = read_features(path);
    CHECK(back.features == data.features);
    CHECK(back.labels == data.labels);
    CHECK(back.episode_ids == data.episode_ids);
    CHECK(back.bins_per_axis == 5);
    CHECK(feature_header(3) == "episode,label,f0,f1,f2");
    std::filesystem::remove(path);
}
