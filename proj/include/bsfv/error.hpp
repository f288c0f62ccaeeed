#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsfv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-supplied configuration (maps to CLI exit code 2).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Malformed binary file; carries the byte offset of the defect.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Pivot collapse during incomplete factorization; names the cell.
class SingularFactorError : public Error {
 public:
  explicit SingularFactorError(const std::string& what) : Error(what) {}
};

/// Factors used against a system revision they were not computed from.
class StaleFactorsError : public Error {
 public:
  explicit StaleFactorsError(const std::string& what) : Error(what) {}
};

/// API misuse (waiting twice on a handle, symmetric kernel on a
/// non-symmetric system, ...).
class MisuseError : public Error {
 public:
  explicit MisuseError(const std::string& what) : Error(what) {}
};

/// Violation of the messaging contract (self-send, orphan table entry,
/// payload/box mismatch).
class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what) : Error(what) {}
};

/// No progress possible; message describes the wait cycle.
class DeadlockError : public Error {
 public:
  explicit DeadlockError(const std::string& what) : Error(what) {}
};

/// Collective called with mismatched participation or operation.
class CollectiveMismatchError : public Error {
 public:
  explicit CollectiveMismatchError(const std::string& what) : Error(what) {}
};

/// Outer correction loop hit its cap with the defect above threshold.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

/// A rank aborted because a peer failed first.
class AbortedError : public Error {
 public:
  explicit AbortedError(const std::string& what) : Error(what) {}
};

}  // namespace bsfv
