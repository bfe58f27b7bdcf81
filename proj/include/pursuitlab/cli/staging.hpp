#pragma once

#include <filesystem>
#include <vector>

namespace pursuitlab::cli {

/// Collects a command's output files in a hidden directory next to their
/// destination and moves them into place only on commit(). If the command
/// fails before committing, the destructor removes the staging directory, so
/// a failed run never leaves partial files behind.
class Staging {
public:
    explicit Staging(std::filesystem::path destination);
    ~Staging();
    Staging(const Staging&) = delete;
    Staging& operator=(const Staging&) = delete;

    /// Path to write `name` to; the file appears under the destination on commit.
    std::filesystem::path file(const std::filesystem::path& name);
    /// Directory holding the staged files (later stages may read from it).
    const std::filesystem::path& dir() const noexcept { return staging_; }
    /// Renames every staged file into the destination directory.
    void commit();

private:
    std::filesystem::path dest_;
    std::filesystem::path staging_;
    bool committed_ = false;
};

}  // namespace pursuitlab::cli
