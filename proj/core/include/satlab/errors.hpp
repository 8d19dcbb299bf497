#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satlab {

/// An argument violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Formula text did not match the grammar. `offset()` is the 0-based
/// character position where parsing stopped.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : PreconditionError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A component broke a guarantee it promised (e.g. a lossy compressor).
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A persisted results file could not be read back.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace satlab
