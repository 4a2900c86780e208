#pragma once

// Functions on T^n x [-L/2, L/2) with the time axis treated as periodic.
//
// Samples sit at t_j = (j - N/2) L / N, dual frequencies at lambda_k = (k - N/2) / L.
// Coefficients follow the continuous convention
//   h(x, t) = sum_xi e^{2 pi i <x, xi>} sum_k e^{2 pi i lambda_k t} h^(xi, lambda_k) dlambda,
// dlambda = 1 / L, so sum |h^|^2 dlambda equals the L^2 norm over the window.

#include <iosfwd>
#include <vector>

#include "sdlab/torus_spectrum.hpp"

namespace sdlab {

struct TimeWindow {
  double length = 4.0;
  int samples = 256;
  double delta = 0.25;

  /// Throws InvalidArgument unless N even, N >= 2, L > 0, 0 < 4 delta < L.
  void validate() const;
  double step() const { return length / samples; }
  double time(int j) const { return (j - samples / 2) * step(); }
  double lambda(int k) const { return (k - samples / 2) / length; }
  double dlambda() const { return 1.0 / length; }
  /// Index of the sample at t = 0.
  int origin() const { return samples / 2; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Samples u(x, t_j), time-major: values[j * P + x].
struct SpaceTimeFunction {
  SpaceTimeFunction(TorusGrid g, TimeWindow w);

  TorusGrid grid;
  TimeWindow window;
  std::vector<Complex> values;

  std::size_t slice_size() const { return grid.point_count(); }
  Field slice(int j) const;
  void set_slice(int j, const Field& f);
};

/// Coefficients h^(xi, lambda_k), lambda-major: coeffs[k * P + xi].
struct SpaceTimeSpectrum {
  SpaceTimeSpectrum(TorusGrid g, TimeWindow w);

  TorusGrid grid;
  TimeWindow window;
  std::vector<Complex> coeffs;

  Complex& at(int k, std::size_t xi) { return coeffs[static_cast<std::size_t>(k) * grid.point_count() + xi]; }
  Complex at(int k, std::size_t xi) const { return coeffs[static_cast<std::size_t>(k) * grid.point_count() + xi]; }
  /// Modulation lambda_k - |xi|^2.
  double modulation(int k, std::size_t xi) const;
  /// Sets a single coefficient whose weighted mass |h^|^2 dlambda equals weight^2.
  void set_atom(int k, std::size_t xi, Complex weight);
};

SpaceTimeSpectrum to_spectrum(const SpaceTimeFunction& h);
SpaceTimeFunction to_samples(const SpaceTimeSpectrum& h);

/// Per-time spatial spectra: result[j * P + xi] = (forward of slice j)[xi].
std::vector<Complex> spatial_spectra(const SpaceTimeFunction& h);
SpaceTimeFunction from_spatial_spectra(const TorusGrid& grid, const TimeWindow& window,
                                       std::vector<Complex> spectra);

/// L^2 norm over T^n x window by grid quadrature.
double l2_norm(const SpaceTimeFunction& h);

SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b);
SpaceTimeSpectrum operator+(const SpaceTimeSpectrum& a, const SpaceTimeSpectrum& b);

/// Binary record: magic "SDST", u32 version, u32 n, u32 M, f64 L, u32 N_t, f64 delta,
/// then the coefficient block h^(xi, lambda_k) as (re, im) doubles, lambda-major.
void write_space_time(std::ostream& os, const SpaceTimeSpectrum& h);
SpaceTimeSpectrum read_space_time(std::istream& is);

}  // namespace sdlab
