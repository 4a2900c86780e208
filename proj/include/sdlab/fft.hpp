#pragma once

// Thin FFTW wrapper for multi-dimensional complex transforms in place.

#include <complex>
#include <cstddef>
#include <span>

namespace sdlab::fft {

enum class Direction { Forward = -1, Backward = +1 };

/// Unnormalized DFT over a row-major array with the given extents.
void transform(std::span<std::complex<double>> data, std::span<const int> extents,
               Direction dir);

/// Rotates every axis selected by `axis_mask` by half its (even) extent.
/// This maps between natural FFT order [0..L/2-1, -L/2..-1] and the
/// ascending order [-L/2..L/2-1]; the operation is an involution.
void half_shift(std::span<std::complex<double>> data, std::span<const int> extents,
                unsigned axis_mask);

}  // namespace sdlab::fft
