#pragma once

// Balance-law, interpolation and a priori diagnostics along trajectories.
//
// With the stepper's dispersion i u_t - (1 / 2 pi) Delta u = u v, the quantity
//   E(t) = (1 / 2 pi) int |grad u|^2 - int |u|^2 v
// satisfies dE/dt = (1 / K) (int |u|^2 v - eps int |u|^p), p = alpha + 2.

#include <string>
#include <vector>

#include "sdlab/propagators.hpp"

namespace sdlab {

struct BalanceRecord {
  double t = 0.0;
  double grad_energy = 0.0;  // int |grad u|^2 = sum 4 pi^2 |xi|^2 |u_xi|^2
  double coupling = 0.0;     // int |u|^2 v
  double potential_p = 0.0;  // int |u|^p
  double l2 = 0.0;           // ||u||_2^2
  double h1 = 0.0;           // ||u||_{H^1}

  /// (1 / 2 pi) grad_energy - coupling.
  double energy() const;
};

BalanceRecord balance_terms(const SimState& state);

struct ResidualSeries {
  std::vector<double> t;
  std::vector<double> residual;
  double max_abs = 0.0;
};

/// Centered difference of E at interior snapshots minus (1/K)(coupling - eps potential_p).
/// Needs >= 3 uniformly spaced snapshots.
ResidualSeries h1_balance_residual(const Trajectory& traj);

struct IntegratedResidual {
  /// E(T) - E(0) - (1/K) int_0^T (coupling - eps potential_p) dt, trapezoid rule.
  double direct = 0.0;
  /// Same identity with the t = 0 terms entering as +G(0)/(2 pi) - C(0); it
  /// differs from `direct` by exactly 2 E(0).
  double printed = 0.0;
};

IntegratedResidual integrated_balance_residual(const Trajectory& traj);

struct InterpolationCheck {
  double ratio = 0.0;  // ||f||_p / (||f||_2^{1-theta} ||f||_{H^1}^theta)
  double theta = 0.0;  // n (1/2 - 1/p)
};

/// Throws NotApplicable when theta >= 1.
InterpolationCheck interpolation_check(const Field& f, double p, int n);

struct AprioriExponents {
  double theta0 = 0.0;  // n / 4
  double theta1 = 0.0;  // n (1/2 - 1/(2 alpha))
  double theta = 0.0;   // n (1/2 - 1/p), p = alpha + 2
  bool theta0_below_one = false;
  bool theta1_below_one = false;
  bool theta_below_one = false;
  std::string mu1;
};

AprioriExponents apriori_exponents(int n, double alpha);

}  // namespace sdlab
