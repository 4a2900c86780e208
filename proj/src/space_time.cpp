#include "sdlab/space_time.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "sdlab/errors.hpp"
#include "sdlab/fft.hpp"
#include "sdlab/serialization.hpp"

namespace sdlab {

void TimeWindow::validate() const {
  if (samples < 2 || samples % 2 != 0) throw InvalidArgument("time window needs an even sample count");
  if (!(length > 0.0)) throw InvalidArgument("time window length must be positive");
  if (!(delta > 0.0) || !(4.0 * delta < length)) throw InvalidArgument("time window requires 0 < 4 delta < L");
}

SpaceTimeFunction::SpaceTimeFunction(TorusGrid g, TimeWindow w)
    : grid(g), window(w), values(static_cast<std::size_t>(w.samples) * g.point_count()) {
  window.validate();
}

Field SpaceTimeFunction::slice(int j) const {
  const auto p = slice_size();
  const auto begin = values.begin() + static_cast<std::ptrdiff_t>(j * p);
  return Field(grid, std::vector<Complex>(begin, begin + static_cast<std::ptrdiff_t>(p)));
}

void SpaceTimeFunction::set_slice(int j, const Field& f) {
  if (!(f.grid == grid)) throw InvalidArgument("slice lives on a different grid");
  std::copy(f.values.begin(), f.values.end(), values.begin() + static_cast<std::ptrdiff_t>(j * slice_size()));
}

SpaceTimeSpectrum::SpaceTimeSpectrum(TorusGrid g, TimeWindow w)
    : grid(g), window(w), coeffs(static_cast<std::size_t>(w.samples) * g.point_count()) {
  window.validate();
}

double SpaceTimeSpectrum::modulation(int k, std::size_t xi) const {
  return window.lambda(k) - static_cast<double>(grid.mode_norm2(xi));
}

void SpaceTimeSpectrum::set_atom(int k, std::size_t xi, Complex weight) {
  at(k, xi) = weight / std::sqrt(window.dlambda());
}

namespace {

std::vector<int> space_time_extents(const TorusGrid& grid, const TimeWindow& window) {
  std::vector<int> ext{window.samples};
  for (int e : grid.extents()) ext.push_back(e);
  return ext;
}

}  // namespace

SpaceTimeSpectrum to_spectrum(const SpaceTimeFunction& h) {
  const auto ext = space_time_extents(h.grid, h.window);
  std::vector<Complex> data = h.values;
  // Time samples are stored in ascending (centered) order; space in natural order.
  fft::half_shift(data, ext, 1u);
  fft::transform(data, ext, fft::Direction::Forward);
  fft::half_shift(data, ext, (1u << ext.size()) - 1);
  // h^ dlambda = time-mean coefficient, so h^ = L * (sum / (N_t P)).
  const double scale = h.window.length / static_cast<double>(data.size());
  SpaceTimeSpectrum out(h.grid, h.window);
  for (std::size_t i = 0; i < data.size(); ++i) out.coeffs[i] = data[i] * scale;
  return out;
}

SpaceTimeFunction to_samples(const SpaceTimeSpectrum& h) {
  const auto ext = space_time_extents(h.grid, h.window);
  std::vector<Complex> data = h.coeffs;
  fft::half_shift(data, ext, (1u << ext.size()) - 1);
  fft::transform(data, ext, fft::Direction::Backward);
  fft::half_shift(data, ext, 1u);
  const double scale = h.window.dlambda();
  SpaceTimeFunction out(h.grid, h.window);
  for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i] * scale;
  return out;
}

std::vector<Complex> spatial_spectra(const SpaceTimeFunction& h) {
  std::vector<Complex> out(h.values.size());
  const auto p = h.slice_size();
  for (int j = 0; j < h.window.samples; ++j) {
    const Spectrum s = forward(h.slice(j));
    std::copy(s.coeffs.begin(), s.coeffs.end(), out.begin() + static_cast<std::ptrdiff_t>(j * p));
  }
  return out;
}

SpaceTimeFunction from_spatial_spectra(const TorusGrid& grid, const TimeWindow& window,
                                       std::vector<Complex> spectra) {
  SpaceTimeFunction out(grid, window);
  if (spectra.size() != out.values.size()) throw InvalidArgument("spectra block has the wrong size");
  const auto p = grid.point_count();
  for (int j = 0; j < window.samples; ++j) {
    const auto begin = spectra.begin() + static_cast<std::ptrdiff_t>(j * p);
    Spectrum s(grid, std::vector<Complex>(begin, begin + static_cast<std::ptrdiff_t>(p)));
    out.set_slice(j, inverse(s));
  }
  return out;
}

double l2_norm(const SpaceTimeFunction& h) {
  double acc = 0.0;
  for (const auto& z : h.values) acc += std::norm(z);
  return std::sqrt(acc / static_cast<double>(h.slice_size()) * h.window.step());
}

SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
  if (!(a.grid == b.grid) || !(a.window == b.window)) throw InvalidArgument("space-time operands differ in shape");
  SpaceTimeFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

SpaceTimeSpectrum operator+(const SpaceTimeSpectrum& a, const SpaceTimeSpectrum& b) {
  if (!(a.grid == b.grid) || !(a.window == b.window)) throw InvalidArgument("space-time operands differ in shape");
  SpaceTimeSpectrum out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

namespace {
constexpr char kMagic[4] = {'S', 'D', 'S', 'T'};
}

void write_space_time(std::ostream& os, const SpaceTimeSpectrum& h) {
  os.write(kMagic, 4);
  detail::write_u32(os, 1);
  detail::write_u32(os, static_cast<std::uint32_t>(h.grid.dim()));
  detail::write_u32(os, static_cast<std::uint32_t>(h.grid.modes_per_axis()));
  detail::write_f64(os, h.window.length);
  detail::write_u32(os, static_cast<std::uint32_t>(h.window.samples));
  detail::write_f64(os, h.window.delta);
  for (const auto& z : h.coeffs) {
    detail::write_f64(os, z.real());
    detail::write_f64(os, z.imag());
  }
}

SpaceTimeSpectrum read_space_time(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw InvalidArgument("bad space-time record magic");
  if (detail::read_u32(is) != 1) throw InvalidArgument("unsupported space-time record version");
  const int n = static_cast<int>(detail::read_u32(is));
  const int m = static_cast<int>(detail::read_u32(is));
  TimeWindow w;
  w.length = detail::read_f64(is);
  w.samples = static_cast<int>(detail::read_u32(is));
  w.delta = detail::read_f64(is);
  SpaceTimeSpectrum h(TorusGrid(n, m), w);
  for (auto& z : h.coeffs) {
    const double re = detail::read_f64(is);
    z = Complex(re, detail::read_f64(is));
  }
  return h;
}

}  // namespace sdlab
