#pragma once

// Local solutions through the cut-off Duhamel map
//
//   Phi(u)(t) = psi_1(t) [ U(t) u0 - i int_0^t U(t - tau) w(tau) dtau ],
//   w = F0(u) + F1(u),  F0 = e^{-t/K} u v0,
//   F1 = (eps / K) u int_0^t e^{-(t - tau)/K} |u(tau)|^alpha dtau,
//
// iterated to a fixed point in the X^{s,1/2} norm.

#include <optional>
#include <vector>

#include "sdlab/propagators.hpp"
#include "sdlab/space_time.hpp"

namespace sdlab {

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, built from exp(-1/x).
double smooth_step(double x);

/// psi_1: 1 on |t| <= delta, 0 on |t| >= 2 delta.
/// psi_2: 1 on |t| <= 1, 0 on |t| >= 2.
double cutoff_value(int kind, double t, double delta);
/// Samples of psi_kind on the window; throws when the support does not fit.
std::vector<double> cutoff_psi(int kind, const TimeWindow& window);

/// Sample range [first, last] with |t_j| <= 2 delta.
std::pair<int, int> support_range(const TimeWindow& window);

/// w = F0(u) + F1(u) on |t| <= 2 delta (zero elsewhere). The memory integral uses
/// the order-2 exponential quadrature of the Debye step, marching out from t = 0.
SpaceTimeFunction nonlinear_w(const SpaceTimeFunction& u, const Field& v0, const ModelParams& params);

/// U(t) u0 - i int_0^t U(t - tau) w(tau) dtau on |t| <= 2 delta (zero elsewhere),
/// mode by mode with w linearly interpolated between samples and the phase
/// integrated exactly.
SpaceTimeFunction duhamel_apply(const Spectrum& u0, const SpaceTimeFunction& w);

SpaceTimeFunction fixed_point_map(const SpaceTimeFunction& u, const Spectrum& u0, const Field& v0,
                                  const ModelParams& params);

struct PicardOptions {
  double s = 1.0;
  double tol = 1e-12;
  int kmax = 50;
};

struct PicardStep {
  int k = 0;
  double difference = 0.0;
  /// difference_k / difference_{k-1}; NaN for the first iterate.
  double ratio = 0.0;
};

struct PicardResult {
  SpaceTimeFunction solution;
  std::vector<PicardStep> history;
  bool converged = false;
};

/// Throws NoContraction when the ratio is >= 1 three times in a row.
PicardResult picard_solve(const Spectrum& u0, const Field& v0, const ModelParams& params,
                          const TimeWindow& window, const PicardOptions& options);

struct DeltaProbeEntry {
  double delta = 0.0;
  bool contracted = false;
  double last_ratio = 0.0;
  int iterations = 0;
};

struct DeltaProbe {
  std::vector<DeltaProbeEntry> entries;
  /// First delta at which NoContraction fired, if any.
  std::optional<double> breakdown_delta;
};

/// Doubles delta from `start` while 4 delta < L; stops at the first NoContraction.
DeltaProbe probe_existence_time(const Spectrum& u0, const Field& v0, const ModelParams& params,
                                TimeWindow window, double start, const PicardOptions& options);

/// Contributions of the inhomogeneous Duhamel term after the psi_2 split.
/// Their sum is psi_1 times the Duhamel integral with zero data.
struct DuhamelTerms {
  SpaceTimeFunction series;       // psi_2 part, Taylor-expanded in t
  SpaceTimeFunction oscillatory;  // (1 - psi_2) part carrying e^{2 pi i lambda t}
  SpaceTimeFunction boundary;     // (1 - psi_2) part carrying e^{2 pi i t |xi|^2}
  int taylor_terms = 0;
};

struct DecompositionReport {
  double s = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  double linear_norm = 0.0;  // ||psi_1 U(t) u0||_{X^{s,b}} (0 without data)
  double series_norm = 0.0;
  double oscillatory_norm = 0.0;
  double boundary_norm = 0.0;
  double forcing_norm = 0.0;  // ||w||_{X^{s,b'-1}}
  /// (series + oscillatory + boundary) / forcing.
  double inhomogeneous_ratio = 0.0;
  /// Relative L^2 gap between the decomposition and the quadrature Duhamel route.
  double quadrature_mismatch = 0.0;
  bool mismatch_flagged = false;
};

DuhamelTerms duhamel_decompose(const SpaceTimeSpectrum& w);

/// psi_1 times the Duhamel integral of w with zero data, evaluated in closed form
/// per (xi, lambda) atom; the removable singularity at lambda = |xi|^2 uses a series.
SpaceTimeFunction duhamel_closed_form(const SpaceTimeSpectrum& w);

DecompositionReport decomposition_report(const SpaceTimeSpectrum& w, const DuhamelTerms& terms,
                                         const Spectrum* u0, double s, double b, double b_prime);

/// psi_1 U(t) u0 on the window.
SpaceTimeFunction cutoff_free_solution(const Spectrum& u0, const TimeWindow& window);

}  // namespace sdlab
