#pragma once

#include <stdexcept>
#include <string>

namespace qdmc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the documented domain
/// (bad truncation, dot index, manifold number, shape mismatch, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Configuration or command-line problem. Maps to exit code 2.
class UsageError : public Error {
public:
  using Error::Error;
};

/// Any failure of the numerics: eigensolver non-convergence, negative
/// eigenvalues beyond tolerance, step-size underflow, truncation overflow.
/// Maps to exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class StiffnessError : public NumericalError {
public:
  StiffnessError(const std::string& what, double time, double norm)
      : NumericalError(what), time_(time), norm_(norm) {}
  double time() const noexcept { return time_; }
  double norm() const noexcept { return norm_; }

private:
  double time_;
  double norm_;
};

class TruncationError : public NumericalError {
public:
  TruncationError(const std::string& what, double time, double top_population)
      : NumericalError(what), time_(time), top_population_(top_population) {}
  double time() const noexcept { return time_; }
  double top_population() const noexcept { return top_population_; }

private:
  double time_;
  double top_population_;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace qdmc
