#include "pursuitlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pursuitlab/errors.hpp"

namespace pursuitlab::csv {

namespace {

[[noreturn]] void bad_field(std::string_view field, const std::filesystem::path& file,
                            std::size_t line, const char* kind) {
    throw DataFormatError(file.string() + ":" + std::to_string(line) + ": expected " + kind +
                          ", got '" + std::string(field) + "'");
}

template <typename T>
T parse_number(std::string_view field, const std::filesystem::path& file, std::size_t line,
               const char* kind) {
    T value{};
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) bad_field(field, file, line, kind);
    return value;
}

}  // namespace

std::string format_real(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(std::string_view field, const std::filesystem::path& file, std::size_t line) {
    const double v = parse_number<double>(field, file, line, "a real number");
    if (!std::isfinite(v)) bad_field(field, file, line, "a finite real number");
    return v;
}

std::int64_t parse_int(std::string_view field, const std::filesystem::path& file, std::size_t line) {
    return parse_number<std::int64_t>(field, file, line, "an integer");
}

std::uint64_t parse_uint(std::string_view field, const std::filesystem::path& file,
                         std::size_t line) {
    return parse_number<std::uint64_t>(field, file, line, "an unsigned integer");
}

Reader::Reader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open '" + path.string() + "' for reading");
}

std::string Reader::read_header() {
    std::string line;
    if (!next(line)) fail("missing header");
    return line;
}

void Reader::expect_header(std::string_view expected) {
    const std::string header = read_header();
    if (header != expected)
        fail("header mismatch: expected '" + std::string(expected) + "', got '" + header + "'");
}

bool Reader::next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void Reader::fail(const std::string& what) const {
    throw DataFormatError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pursuitlab::csv
