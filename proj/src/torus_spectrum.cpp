#include "sdlab/torus_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sdlab/errors.hpp"
#include "sdlab/fft.hpp"

namespace sdlab {

TorusGrid::TorusGrid(int dim, int modes_per_axis) : dim_(dim), modes_(modes_per_axis), points_(1) {
  if (dim < 1 || dim > 3) throw InvalidArgument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (modes_per_axis % 2 != 0) throw InvalidArgument("modes per axis must be even, got " + std::to_string(modes_per_axis));
  if (modes_per_axis < 4 || modes_per_axis > 1024)
    throw InvalidArgument("modes per axis must lie in [4, 1024], got " + std::to_string(modes_per_axis));
  for (int a = 0; a < dim; ++a) points_ *= static_cast<std::size_t>(modes_per_axis);
}

Mode TorusGrid::mode(std::size_t index) const {
  Mode xi{0, 0, 0};
  const auto m = static_cast<std::size_t>(modes_);
  for (int a = dim_; a-- > 0;) {
    xi[a] = static_cast<int>(index % m) - modes_ / 2;
    index /= m;
  }
  return xi;
}

std::int64_t TorusGrid::mode_norm2(std::size_t index) const {
  const Mode xi = mode(index);
  std::int64_t acc = 0;
  for (int a = 0; a < dim_; ++a) acc += static_cast<std::int64_t>(xi[a]) * xi[a];
  return acc;
}

double TorusGrid::mode_norm(std::size_t index) const {
  return std::sqrt(static_cast<double>(mode_norm2(index)));
}

std::size_t TorusGrid::index_of(const Mode& xi) const {
  std::size_t index = 0;
  for (int a = 0; a < dim_; ++a) {
    if (xi[a] < -modes_ / 2 || xi[a] >= modes_ / 2) throw InvalidArgument("mode outside the grid lattice");
    index = index * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(xi[a] + modes_ / 2);
  }
  return index;
}

double TorusGrid::coordinate(std::size_t index, int axis) const {
  const auto m = static_cast<std::size_t>(modes_);
  for (int a = dim_ - 1; a > axis; --a) index /= m;
  return static_cast<double>(index % m) / modes_;
}

TorusGrid make_grid(int dim, int modes_per_axis) { return TorusGrid(dim, modes_per_axis); }

Field::Field(TorusGrid g) : grid(g), values(g.point_count()) {}

Field::Field(TorusGrid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.point_count()) throw InvalidArgument("field length does not match grid");
}

Spectrum::Spectrum(TorusGrid g) : grid(g), coeffs(g.point_count()) {}

Spectrum::Spectrum(TorusGrid g, std::vector<Complex> c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != grid.point_count()) throw InvalidArgument("spectrum length does not match grid");
}

Spectrum forward(const Field& f) {
  if (f.values.size() != f.grid.point_count()) throw InvalidArgument("field length does not match grid");
  std::vector<Complex> data = f.values;
  const auto ext = f.grid.extents();
  fft::transform(data, ext, fft::Direction::Forward);
  fft::half_shift(data, ext, (1u << ext.size()) - 1);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
  return Spectrum(f.grid, std::move(data));
}

Field inverse(const Spectrum& s) {
  if (s.coeffs.size() != s.grid.point_count()) throw InvalidArgument("spectrum length does not match grid");
  std::vector<Complex> data = s.coeffs;
  const auto ext = s.grid.extents();
  fft::half_shift(data, ext, (1u << ext.size()) - 1);
  fft::transform(data, ext, fft::Direction::Backward);
  return Field(s.grid, std::move(data));
}

double sobolev_norm(double s, const Spectrum& spectrum) {
  if (!(s >= 0.0)) throw InvalidArgument("Sobolev index must be non-negative");
  double acc = 0.0;
  for (std::size_t i = 0; i < spectrum.coeffs.size(); ++i) {
    const double w = s == 0.0 ? 1.0 : std::pow(bracket(spectrum.grid.mode_norm(i)), 2.0 * s);
    acc += w * std::norm(spectrum.coeffs[i]);
  }
  return std::sqrt(acc);
}

double lebesgue_norm(double p, const Field& f) {
  if (!(p >= 1.0)) throw InvalidArgument("Lebesgue exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : f.values) acc += std::norm(z);
    return std::sqrt(acc / static_cast<double>(f.values.size()));
  }
  for (const auto& z : f.values) acc += std::pow(std::abs(z), p);
  return std::pow(acc / static_cast<double>(f.values.size()), 1.0 / p);
}

double max_imag(const Field& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z.imag()));
  return m;
}

bool survives_dealias(const TorusGrid& grid, std::size_t index) {
  const Mode xi = grid.mode(index);
  for (int a = 0; a < grid.dim(); ++a)
    if (3 * std::abs(xi[a]) > grid.modes_per_axis()) return false;
  return true;
}

Spectrum dealias(const Spectrum& spectrum) {
  Spectrum out = spectrum;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    if (!survives_dealias(out.grid, i)) out.coeffs[i] = 0.0;
  return out;
}

namespace {
void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw InvalidArgument("operands live on different grids");
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a.grid, b.grid);
  Field out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a.grid, b.grid);
  Field out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

Field operator*(Complex c, const Field& a) {
  Field out = a;
  for (auto& z : out.values) z *= c;
  return out;
}

Spectrum operator-(const Spectrum& a, const Spectrum& b) {
  require_same_grid(a.grid, b.grid);
  Spectrum out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

}  // namespace sdlab
