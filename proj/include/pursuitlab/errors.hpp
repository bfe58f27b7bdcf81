#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pursuitlab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameter set (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file, header mismatch or bad row (CLI exit code 3).
class DataFormatError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: degenerate data, non-finite values (CLI exit code 4).
class NumericError : public Error {
public:
    using Error::Error;
};

class MalformedActionError : public NumericError {
public:
    using NumericError::NumericError;
};

class InsufficientDataError : public NumericError {
public:
    using NumericError::NumericError;
};

class ZeroVarianceError : public NumericError {
public:
    using NumericError::NumericError;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Failure inside one episode of a batch; carries the episode identity.
class EpisodeError : public NumericError {
public:
    EpisodeError(std::size_t team_index, std::size_t episode_index, const std::string& what)
        : NumericError("team " + std::to_string(team_index) + ", episode " +
                       std::to_string(episode_index) + ": " + what),
          team_index_(team_index),
          episode_index_(episode_index) {}

    std::size_t team_index() const noexcept { return team_index_; }
    std::size_t episode_index() const noexcept { return episode_index_; }

private:
    std::size_t team_index_;
    std::size_t episode_index_;
};

}  // namespace pursuitlab
