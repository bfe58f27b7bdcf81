#include "pursuitlab/trajectory_io.hpp"

#include <sstream>
#include <string>

#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

std::string agent_name(std::size_t pursuer) { return "p" + std::to_string(pursuer); }

}  // namespace

std::filesystem::path episode_index_path(const std::filesystem::path& trajectory_path) {
    auto out = trajectory_path;
    out.replace_extension();
    out += ".episodes.csv";
    return out;
}

void write_trajectories(const std::vector<EpisodeRecord>& records, const std::filesystem::path& path) {
    auto out = csv::open_for_write(path);
    out << kTrajectoryHeader << '\n';
    for (const auto& rec : records) {
        const std::size_t n_pursuers = rec.pursuer_positions.size();
        for (std::size_t t = 0; t < rec.evader_positions.size(); ++t) {
            const auto row = [&](const std::string& agent, const Vec2& p) {
                out << rec.episode_id << ',' << (t + 1) << ',' << agent << ','
                    << csv::format_real(p.x) << ',' << csv::format_real(p.y) << '\n';
            };
            row("e", rec.evader_positions[t]);
            for (std::size_t i = 0; i < n_pursuers; ++i) row(agent_name(i), rec.pursuer_positions[i].at(t));
        }
    }
    csv::finish_write(out, path);

    const auto index_path = episode_index_path(path);
    auto idx = csv::open_for_write(index_path);
    idx << kEpisodeIndexHeader << '\n';
    for (const auto& rec : records) {
        idx << rec.episode_id << ',' << rec.team_label << ',' << rec.seed << ','
            << rec.collision_count << ',';
        for (std::size_t i = 0; i < rec.collision_steps.size(); ++i) {
            if (i) idx << ' ';
            idx << rec.collision_steps[i];
        }
        idx << '\n';
    }
    csv::finish_write(idx, index_path);
}

std::vector<EpisodeRecord> read_trajectories(const std::filesystem::path& path) {
    std::vector<EpisodeRecord> records;

    {
        csv::Reader idx(episode_index_path(path));
        idx.expect_header(kEpisodeIndexHeader);
        std::string line;
        while (idx.next(line)) {
            const auto f = csv::split(line);
            if (f.size() != 5) idx.fail("expected 5 fields, got " + std::to_string(f.size()));
            EpisodeRecord rec;
            rec.episode_id = csv::parse_int(f[0], idx.path(), idx.line_number());
            rec.team_label = std::string(f[1]);
            rec.seed = csv::parse_uint(f[2], idx.path(), idx.line_number());
            rec.collision_count = csv::parse_int(f[3], idx.path(), idx.line_number());
            std::istringstream steps{std::string(f[4])};
            std::string tok;
            while (steps >> tok) rec.collision_steps.push_back(csv::parse_int(tok, idx.path(), idx.line_number()));
            if (rec.collision_count < 0) idx.fail("negative collision count");
            if (static_cast<std::size_t>(rec.collision_count) != rec.collision_steps.size())
                idx.fail("collision count does not match collision step list");
            records.push_back(std::move(rec));
        }
    }

    csv::Reader in(path);
    in.expect_header(kTrajectoryHeader);
    std::string line;
    std::size_t current = 0;  // index into records
    while (in.next(line)) {
        const auto f = csv::split(line);
        if (f.size() != 5) in.fail("expected 5 fields, got " + std::to_string(f.size()));
        const auto episode = csv::parse_int(f[0], in.path(), in.line_number());
        const auto step = csv::parse_int(f[1], in.path(), in.line_number());
        const std::string_view agent = f[2];
        const Vec2 pos{csv::parse_real(f[3], in.path(), in.line_number()),
                       csv::parse_real(f[4], in.path(), in.line_number())};

        while (current < records.size() && records[current].episode_id != episode) {
            // Rows for an episode must be contiguous; move on only past finished ones.
            ++current;
        }
        if (current == records.size())
            in.fail("episode " + std::to_string(episode) + " missing from episode index or out of order");
        auto& rec = records[current];

        if (agent == "e") {
            if (step != static_cast<std::int64_t>(rec.evader_positions.size()) + 1)
                in.fail("expected step " + std::to_string(rec.evader_positions.size() + 1));
            for (const auto& p : rec.pursuer_positions) {
                if (p.size() != rec.evader_positions.size()) in.fail("incomplete pursuer rows before step");
            }
            rec.evader_positions.push_back(pos);
            continue;
        }
        if (agent.size() < 2 || agent[0] != 'p') in.fail("unknown agent '" + std::string(agent) + "'");
        const auto pursuer = static_cast<std::size_t>(csv::parse_int(agent.substr(1), in.path(), in.line_number()));
        if (step != static_cast<std::int64_t>(rec.evader_positions.size()))
            in.fail("pursuer row does not follow its evader row");
        if (rec.evader_positions.size() == 1 && pursuer == rec.pursuer_positions.size()) {
            rec.pursuer_positions.emplace_back();
        }
        if (pursuer >= rec.pursuer_positions.size() ||
            rec.pursuer_positions[pursuer].size() + 1 != rec.evader_positions.size())
            in.fail("unexpected agent '" + std::string(agent) + "'");
        rec.pursuer_positions[pursuer].push_back(pos);
    }
    for (const auto& rec : records) {
        for (const auto& p : rec.pursuer_positions) {
            if (p.size() != rec.evader_positions.size())
                throw DataFormatError(path.string() + ": episode " + std::to_string(rec.episode_id) +
                                      " has incomplete pursuer rows");
        }
    }
    return records;
}

void write_collisions(const std::vector<EpisodeRecord>& records, const std::filesystem::path& path) {
    auto out = csv::open_for_write(path);
    out << kCollisionHeader << '\n';
    for (const auto& rec : records)
        out << rec.episode_id << ',' << rec.team_label << ',' << rec.collision_count << '\n';
    csv::finish_write(out, path);
}

}  // namespace pursuitlab
