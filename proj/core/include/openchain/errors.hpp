#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace openchain {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad site indices, wrong sizes, inconsistent parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A requested matrix would exceed the configured dimension cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A printed denominator came within the pole guard of zero.
class PoleError : public Error {
 public:
  PoleError(std::string kernel, std::string factor, double magnitude);

  const std::string& kernel() const noexcept { return kernel_; }
  const std::string& factor() const noexcept { return factor_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::string kernel_;
  std::string factor_;
  double magnitude_;
};

/// Matrix inversion refused because the condition estimate is above the cap.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Iterative numerical procedure failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The two boundary matrices admit no common upper-triangular basis.
class NotTriangularizableError : public Error {
 public:
  NotTriangularizableError(const std::string& what, std::complex<double> constraint)
      : Error(what), constraint_(constraint) {}
  std::complex<double> constraint_value() const noexcept { return constraint_; }

 private:
  std::complex<double> constraint_;
};

/// Two independent assemblies of the same operator disagree.
class FormMismatchError : public Error {
 public:
  FormMismatchError(const std::string& what, double mismatch)
      : Error(what), mismatch_(mismatch) {}
  double mismatch() const noexcept { return mismatch_; }

 private:
  double mismatch_;
};

}  // namespace openchain
