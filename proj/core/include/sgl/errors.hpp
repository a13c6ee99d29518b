#pragma once

#include <stdexcept>
#include <string>

namespace sgl {

/// Base for every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller misuse: empty sample sets, unknown names, vectors outside a declared bundle.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatches between fields, maps and points.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A metric Gram matrix that is singular or too badly conditioned to invert.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Jacobian rank deficiency of an immersion.
class ImmersionError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// Frame construction failure (ill-conditioned pairing, incomplete frame).
class FrameError : public StructuralError {
 public:
  FrameError(const std::string& what, double condition = 0.0)
      : StructuralError(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Radical or distribution ranks that change between sample points.
class ClassificationError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// File system failures: unreadable configs, unwritable report paths.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgl
