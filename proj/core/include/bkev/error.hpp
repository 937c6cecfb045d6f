#pragma once

#include <stdexcept>
#include <string>

namespace bkev {

/// Base class for every error raised by the toolkit. Contract violations
/// (bad arguments, malformed files) surface as this type or a subclass.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time integration produced a non-finite value.
class BlowUpError : public Error {
 public:
  BlowUpError(long step, double time)
      : Error("solution blew up at step " + std::to_string(step) + " (t=" + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}

  long step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  long step_;
  double time_;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace bkev
