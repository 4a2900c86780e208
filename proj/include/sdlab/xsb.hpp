#pragma once

// Bourgain-space norms on truncated space-time lattices.

#include <compare>
#include <cstdint>
#include <vector>

#include "sdlab/space_time.hpp"

namespace sdlab {

/// Dyadic shell label pair; 0 denotes the unit cell below the first dyadic step.
struct ShellIndex {
  std::int64_t A = 0;
  std::int64_t N = 0;

  friend auto operator<=>(const ShellIndex&, const ShellIndex&) = default;
};

/// 0 if magnitude < 1, otherwise the largest power of two <= magnitude.
std::int64_t dyadic_label(double magnitude);
/// Frequency label from |xi|^2, computed in integers.
std::int64_t frequency_label(std::int64_t norm2);
bool is_dyadic(std::int64_t label);

ShellIndex shell_of(const SpaceTimeSpectrum& h, int k, std::size_t xi);

/// (sum <xi>^{2s} <lambda - |xi|^2>^{2b} |h^|^2 dlambda)^{1/2}.
double xsb_norm(const SpaceTimeSpectrum& h, double s, double b);

SpaceTimeSpectrum shell_restrict(const SpaceTimeSpectrum& h, ShellIndex shell);
/// Every shell that contains at least one lattice point, in ascending order.
std::vector<ShellIndex> lattice_shells(const SpaceTimeSpectrum& h);

/// sup over shells of (A+1)^{1/2} (N+1)^s (mass in the shell)^{1/2}.
double triple_norm(const SpaceTimeSpectrum& h, double s);

/// Keeps M/2 < |xi| <= M (|xi| <= 1 when M = 1).
SpaceTimeSpectrum dyadic_piece(const SpaceTimeSpectrum& h, std::int64_t M);
/// 1, 2, 4, ... up to the first label covering every grid frequency.
std::vector<std::int64_t> dyadic_ladder(const TorusGrid& grid);

/// ||psi_T h||_{X^{s,b'}} / (T^{b-b'} ||h||_{X^{s,b}}), psi_T(t) = psi_2(t / T).
/// Requires 0 < T < 1 and -1/2 < b' <= b < 1/2; returns 0 for h = 0.
double cutoff_scaling_ratio(const SpaceTimeSpectrum& h, double T, double s, double b, double b_prime);

/// ||h||_{L^4(T x [0,1])} / ||h||_{X^{0,3/8}} for n = 1 on a unit-length window.
double l4_embedding_ratio(const SpaceTimeSpectrum& h);

}  // namespace sdlab
