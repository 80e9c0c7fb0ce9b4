#pragma once

#include <stdexcept>
#include <string>

namespace atrous {

// Invalid arguments and precondition violations use std::invalid_argument.
// The types below cover the remaining failure modes of the toolkit; the CLI
// maps each to a distinct exit code.

class UnsupportedFormatError : public std::runtime_error {
public:
  explicit UnsupportedFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

class CorruptFileError : public std::runtime_error {
public:
  explicit CorruptFileError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class UnsupportedSampleRateError : public std::runtime_error {
public:
  explicit UnsupportedSampleRateError(const std::string& msg) : std::runtime_error(msg) {}
};

class SilentInputError : public std::runtime_error {
public:
  explicit SilentInputError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace atrous
