#pragma once

#include <stdexcept>
#include <string>

namespace bgpsim {

// Broad error families. The CLI maps each family to a distinct exit code.
enum class ErrorKind {
  kParameter,    // invalid parameter value or range
  kConsistency,  // inputs disagree with each other or violate a precondition
  kIo,           // file could not be read/written or failed to parse
  kSimulation,   // engine or protocol invariant violated at run time
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::kParameter, what) {}
};

// Exact solver asked to handle more vertices than it supports.
class SizeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// No bipartition satisfies the balance constraint.
class InfeasibleError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorKind::kConsistency, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& detail, std::size_t line,
             const std::string& source = "")
      : IoError((source.empty() ? "" : source + ":") + "line " +
                std::to_string(line) + ": " + detail),
        detail_(detail),
        line_(line) {}
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string detail_;
  std::size_t line_;
};

class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& what)
      : Error(ErrorKind::kSimulation, what) {}
};

class ClockViolation : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class DivergenceError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class SessionError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class MalformedUpdate : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace bgpsim
