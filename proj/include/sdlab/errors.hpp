#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sdlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition or argument-range violation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration or convolution would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Estimate undefined for the requested exponents (e.g. theta >= 1).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Integer too large for the trial-division factorization path.
class Unfactored : public Error {
 public:
  using Error::Error;
};

/// Raised by the time integrator when the solution leaves the finite range.
class BlowUp : public Error {
 public:
  BlowUp(double time, double l2_norm, double sup_norm)
      : Error("blow-up detected at t=" + std::to_string(time) +
              " (|u|_2=" + std::to_string(l2_norm) +
              ", |u|_inf=" + std::to_string(sup_norm) + ")"),
        time(time),
        l2_norm(l2_norm),
        sup_norm(sup_norm) {}

  double time;
  double l2_norm;
  double sup_norm;
};

/// Picard iteration failed to contract for three consecutive iterations.
class NoContraction : public Error {
 public:
  explicit NoContraction(std::vector<double> ratios)
      : Error("Picard iteration is not contracting"), ratios(std::move(ratios)) {}

  std::vector<double> ratios;
};

}  // namespace sdlab
