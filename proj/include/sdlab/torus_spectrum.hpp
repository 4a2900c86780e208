#pragma once

// Grids, fields and Fourier spectra on the unit torus T^n.
//
// Conventions used throughout the library:
//   * physical samples x_j = j / M per axis, stored row-major (last axis fastest);
//   * Fourier coefficients multiply e^{2 pi i <x, xi>} and are true coefficients,
//     i.e. the forward transform is the grid mean of f(x) e^{-2 pi i <x, xi>};
//   * modes are stored row-major over axes, each axis ascending from -M/2 to M/2-1;
//   * the Japanese bracket is <x> = 1 + |x|.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sdlab {

using Complex = std::complex<double>;
using Mode = std::array<int, 3>;

inline double bracket(double x) { return 1.0 + (x < 0 ? -x : x); }

class TorusGrid {
 public:
  TorusGrid(int dim, int modes_per_axis);

  int dim() const { return dim_; }
  int modes_per_axis() const { return modes_; }
  std::size_t point_count() const { return points_; }

  /// Lattice point at canonical index; unused trailing components are 0.
  Mode mode(std::size_t index) const;
  std::int64_t mode_norm2(std::size_t index) const;
  double mode_norm(std::size_t index) const;
  /// Canonical index of a lattice point, which must lie in [-M/2, M/2)^n.
  std::size_t index_of(const Mode& xi) const;
  /// Physical coordinate of sample `index` along `axis`.
  double coordinate(std::size_t index, int axis) const;
  std::vector<int> extents() const { return std::vector<int>(dim_, modes_); }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int dim_;
  int modes_;
  std::size_t points_;
};

TorusGrid make_grid(int dim, int modes_per_axis);

/// Physical-space samples of a function on the torus.
struct Field {
  explicit Field(TorusGrid g);
  Field(TorusGrid g, std::vector<Complex> v);

  TorusGrid grid;
  std::vector<Complex> values;
};

/// Fourier coefficients in canonical mode order.
struct Spectrum {
  explicit Spectrum(TorusGrid g);
  Spectrum(TorusGrid g, std::vector<Complex> c);

  TorusGrid grid;
  std::vector<Complex> coeffs;
};

Spectrum forward(const Field& f);
Field inverse(const Spectrum& s);

/// (sum <xi>^{2s} |c_xi|^2)^{1/2}; s = 0 is the L^2 norm.
double sobolev_norm(double s, const Spectrum& spectrum);
/// Grid quadrature (mean |f|^p)^{1/p}; p = infinity gives the max norm.
double lebesgue_norm(double p, const Field& f);
double max_imag(const Field& f);

/// Two-thirds rule: zero every mode with some |xi_i| > M/3.
Spectrum dealias(const Spectrum& spectrum);
bool survives_dealias(const TorusGrid& grid, std::size_t index);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(Complex c, const Field& a);
Spectrum operator-(const Spectrum& a, const Spectrum& b);

}  // namespace sdlab
