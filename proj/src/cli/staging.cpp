#include "pursuitlab/cli/staging.hpp"

#include <unistd.h>

#include <string>
#include <system_error>

#include "pursuitlab/errors.hpp"

namespace pursuitlab::cli {

namespace fs = std::filesystem;

Staging::Staging(fs::path destination) : dest_(std::move(destination)) {
    std::error_code ec;
    fs::create_directories(dest_, ec);
    if (ec) throw IoError("cannot create output directory '" + dest_.string() + "': " + ec.message());
    staging_ = dest_ / (".staging-" + std::to_string(::getpid()));
    fs::remove_all(staging_, ec);
    fs::create_directory(staging_, ec);
    if (ec) throw IoError("cannot create staging directory '" + staging_.string() + "': " + ec.message());
}

Staging::~Staging() {
    std::error_code ec;
    fs::remove_all(staging_, ec);
}

fs::path Staging::file(const fs::path& name) { return staging_ / name; }

void Staging::commit() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(staging_)) {
        const auto target = dest_ / entry.path().filename();
        fs::rename(entry.path(), target, ec);
        if (ec) throw IoError("cannot move '" + entry.path().string() + "' to '" + target.string() + "': " + ec.message());
    }
    committed_ = true;
}

}  // namespace pursuitlab::cli
