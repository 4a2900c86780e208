#pragma once

// Named initial data for runs.

#include <cstdint>
#include <optional>
#include <string>

#include "sdlab/torus_spectrum.hpp"

namespace sdlab {

struct ProfileSpec {
  /// zero | single_mode | gaussian_bump | random_bandlimited
  std::string name = "zero";
  Mode mode{0, 0, 0};        // single_mode
  double amplitude = 0.0;    // coefficient, peak value, or L^2 norm
  double width = 0.1;        // gaussian_bump standard deviation
  int band = 4;              // random_bandlimited: |xi_i| <= band
  double decay = 1.0;        // random_bandlimited: coefficients scaled by <xi>^{-decay}
  std::uint64_t seed = 0;    // random_bandlimited
  /// v0 = v_scale |u0|^2.
  double v_scale = 0.0;
  /// Rescale u0 to this H^1 norm before forming v0.
  std::optional<double> h1_norm;
};

struct InitialData {
  Field u0;
  Field v0;
};

/// Deterministic in the spec (including its seed). Throws InvalidArgument for unknown names.
InitialData initial_profile(const ProfileSpec& spec, const TorusGrid& grid);

}  // namespace sdlab
