#pragma once

#include <stdexcept>
#include <string>

namespace biham {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two grid functions with different grid sizes were combined.
class GridMismatch : public Error {
 public:
  GridMismatch(std::size_t lhs, std::size_t rhs)
      : Error("grid mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// An operation requiring a zero-mean input received one with |mean| above tolerance.
class NotZeroMean : public Error {
 public:
  explicit NotZeroMean(double mean)
      : Error("input is not zero-mean: mean = " + std::to_string(mean)), mean_(mean) {}
  double mean() const { return mean_; }

 private:
  double mean_;
};

/// The symbol of a constant-coefficient operator vanishes at a grid wavenumber.
class SingularSymbol : public Error {
 public:
  explicit SingularSymbol(int wavenumber)
      : Error("operator symbol vanishes at wavenumber n = " + std::to_string(wavenumber)),
        wavenumber_(wavenumber) {}
  int wavenumber() const { return wavenumber_; }

 private:
  int wavenumber_;
};

/// Cocycle-operator inversion is only defined for a constant affine part.
class NonConstantAffinePart : public Error {
 public:
  NonConstantAffinePart() : Error("cocycle inversion requires a constant affine part m0") {}
};

/// A time-stepped state exceeded the overflow guard.
class BlowUp : public Error {
 public:
  BlowUp(double t, double amplitude)
      : Error("solution blow-up at t = " + std::to_string(t) +
              " (max |sample| = " + std::to_string(amplitude) + ")"),
        t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// A 2-cochain failed the cocycle test and cannot be classified.
class NotACocycle : public Error {
 public:
  explicit NotACocycle(double residual)
      : Error("2-cochain is not a cocycle: residual = " + std::to_string(residual)) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

class UnsupportedLevel : public Error {
 public:
  explicit UnsupportedLevel(int level)
      : Error("no explicit formula for hierarchy level k = " + std::to_string(level)) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

}  // namespace biham
