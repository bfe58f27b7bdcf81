#pragma once

// Minimal CSV plumbing shared by every file format in the pipeline. Fields never
// contain commas or quotes (labels are restricted), so no quoting is needed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace pursuitlab::csv {

/// Shortest decimal form that parses back to the same double.
std::string format_real(double v);

std::vector<std::string_view> split(std::string_view line);

double parse_real(std::string_view field, const std::filesystem::path& file, std::size_t line);
std::int64_t parse_int(std::string_view field, const std::filesystem::path& file, std::size_t line);
std::uint64_t parse_uint(std::string_view field, const std::filesystem::path& file, std::size_t line);

/// Line-oriented reader that tracks 1-based line numbers for error messages.
class Reader {
public:
    explicit Reader(const std::filesystem::path& path);

    /// Reads the header line and throws DataFormatError unless it equals `expected`.
    void expect_header(std::string_view expected);
    /// Reads the header line and returns it (throws on an empty file).
    std::string read_header();

    /// Next data line, false at end of file. Trailing '\r' is stripped.
    bool next(std::string& line);

    std::size_t line_number() const noexcept { return line_no_; }
    const std::filesystem::path& path() const noexcept { return path_; }

    /// DataFormatError tagged with file and current line.
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::size_t line_no_ = 0;
};

/// Opens `path` for writing; throws IoError on failure.
std::ofstream open_for_write(const std::filesystem::path& path);

/// Throws IoError if the stream is in a failed state after writing.
void finish_write(std::ofstream& out, const std::filesystem::path& path);

}  // namespace pursuitlab::csv
