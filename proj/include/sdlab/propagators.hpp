#pragma once

// Time integration of the Schrödinger-Debye system
//
//   i u_t + (dispersion) = u v,      K v_t + v = eps |u|^alpha,
//
// where the free flow multiplies mode xi by e^{2 pi i t |xi|^2}. On the unit
// torus this is the generator i u_t = (1 / 2 pi) Delta u, so the full system the
// stepper integrates is i u_t - (1 / 2 pi) Delta u = u v.

#include <string>
#include <vector>

#include "sdlab/torus_spectrum.hpp"

namespace sdlab {

struct ModelParams {
  double K = 1.0;
  int eps = 1;
  double alpha = 2.0;
  int dim = 1;

  double p() const { return alpha + 2.0; }
  /// Throws InvalidArgument unless K > 0, eps = +-1, alpha > 0.
  void validate() const;
};

struct SimState {
  double t = 0.0;
  Field u;
  Field v;
  ModelParams params;
};

struct Trajectory {
  std::vector<SimState> states;
  std::string scheme = "strang";
  double dt = 0.0;
  int save_every = 1;
};

/// Multiplies mode xi by e^{2 pi i t |xi|^2}.
Spectrum free_evolution(const Spectrum& spectrum, double t);

/// Exact solution of i u_t = v u for frozen real v: u e^{-i v dt}.
Field potential_rotation(const Field& u, const Field& v, double dt);

/// Exponential-integrator update of K v_t + v = eps * source over one step.
/// Order 1 freezes the source at the left endpoint; order 2 integrates the
/// linear interpolant between `source_left` and `source_right` exactly.
Field debye_step(const Field& v, const Field& source_left, const Field& source_right, double dt,
                 const ModelParams& params, int order);

/// Pointwise |u|^alpha, two-thirds filtered when alpha == 2.
Field debye_source(const Field& u, double alpha);

SimState strang_step(const SimState& state, double dt);

/// Repeated Strang steps to the horizon; snapshots every `save_every` steps
/// (the initial and final states are always kept). Throws BlowUp.
Trajectory evolve(const SimState& state, double horizon, double dt, int save_every);

/// Sup-norm threshold above which evolve() reports a blow-up.
inline constexpr double kBlowUpThreshold = 1e8;

struct PhysicalConstants {
  double c = 1.0;
  double k = 1.0;
  double eta0 = 1.0;
  double eta2 = 1.0;
  double omega0 = 1.0;
};

struct RescaledFields {
  Field u;
  Field v;
  /// sqrt(c / (k eta0)); the spatial dilation recorded as metadata only.
  double dilation;
  /// Coupling sign for the cubic case, sign(eta2).
  int eps;
};

/// Maps the Maxwell-Debye amplitudes (A, nu) to (u, v). The spatial dilation
/// is a relabeling of the unit torus, so only amplitudes change on the grid.
RescaledFields maxwell_rescale(const Field& A, const Field& nu, const PhysicalConstants& pc);

struct PhysicalFields {
  Field A;
  Field nu;
};

PhysicalFields maxwell_unscale(const Field& u, const Field& v, const PhysicalConstants& pc);

namespace detail {

/// v e^{-z} + eps [ g(z) s0 + (1 - e^{-z} - g(z)) s1 ] with z = dt / K, valid for
/// either sign of dt. g(z) = (1 - e^{-z} - z e^{-z}) / z.
void exponential_update(std::vector<Complex>& v, const std::vector<Complex>& s0,
                        const std::vector<Complex>& s1, double dt, double K, double eps);

/// Returns {e^{-z}, 1 - e^{-z} - g(z), g(z)}: decay and weights on s1 and s0.
std::array<double, 3> exponential_weights(double z);

}  // namespace detail

}  // namespace sdlab
