#pragma once

#include <stdexcept>
#include <string>

namespace quickpie {

/// Base class for every error raised by the quickpie core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A PieConfig, SimParams or SweepSpec failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A slice count, item index or character has no place in the layout.
class LayoutError : public Error {
 public:
  using Error::Error;
};

/// A gaze sample arrived with a timestamp not after the previous one.
class SampleOrderError : public Error {
 public:
  using Error::Error;
};

/// A session cannot be scored (e.g. text typed in zero time).
class SessionError : public Error {
 public:
  using Error::Error;
};

/// A trace file or record could not be read. `line()` is 1-based, 0 if unknown.
class TraceError : public Error {
 public:
  TraceError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace quickpie
