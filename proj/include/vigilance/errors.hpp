#pragma once

#include <stdexcept>
#include <string>

namespace vigilance {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or scenario input. Carries the offending field and,
/// when parsed from a file, the 1-based line number (0 if unknown).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : Error(format(field, message, line)), field_(std::move(field)),
        line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& msg,
                            int line) {
    std::string out = line > 0 ? "line " + std::to_string(line) + ": " : "";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + msg;
  }

  std::string field_;
  int line_;
};

/// An input at which the requested quantity is undefined, e.g. a silent
/// vigilante (a = 0) asked to estimate g, or a jammed channel (X = 0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a result (e.g. no Newton seed
/// converged).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace vigilance
