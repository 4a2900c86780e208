#include "sdlab/profiles.hpp"

#include <cmath>
#include <random>

#include "sdlab/errors.hpp"

namespace sdlab {

namespace {

Field gaussian_bump(const TorusGrid& grid, double width, double amplitude) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian_bump width must be positive");
  Field f(grid);
  for (std::size_t i = 0; i < grid.point_count(); ++i) {
    double value = 1.0;
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const double x = grid.coordinate(i, axis) - 0.5;
      double periodic = 0.0;
      for (int image = -2; image <= 2; ++image) {
        const double y = x + image;
        periodic += std::exp(-y * y / (2.0 * width * width));
      }
      value *= periodic;
    }
    f.values[i] = amplitude * value;
  }
  return f;
}

Field random_bandlimited(const TorusGrid& grid, const ProfileSpec& spec) {
  if (spec.band < 0) throw InvalidArgument("random_bandlimited band must be non-negative");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(grid);
  for (std::size_t xi = 0; xi < grid.point_count(); ++xi) {
    const Mode m = grid.mode(xi);
    bool inside = true;
    for (int axis = 0; axis < grid.dim(); ++axis) inside = inside && std::abs(m[axis]) <= spec.band;
    const double re = normal(rng);
    const double im = normal(rng);
    if (inside) s.coeffs[xi] = Complex(re, im) * std::pow(bracket(grid.mode_norm(xi)), -spec.decay);
  }
  const double norm = sobolev_norm(0.0, s);
  if (norm > 0.0)
    for (auto& c : s.coeffs) c *= spec.amplitude / norm;
  return inverse(s);
}

}  // namespace

InitialData initial_profile(const ProfileSpec& spec, const TorusGrid& grid) {
  Field u(grid);
  if (spec.name == "single_mode") {
    Spectrum s(grid);
    s.coeffs[grid.index_of(spec.mode)] = spec.amplitude;
    u = inverse(s);
  } else if (spec.name == "gaussian_bump") {
    u = gaussian_bump(grid, spec.width, spec.amplitude);
  } else if (spec.name == "random_bandlimited") {
    u = random_bandlimited(grid, spec);
  } else if (spec.name != "zero") {
    throw InvalidArgument("unknown profile '" + spec.name + "'");
  }

  if (spec.h1_norm) {
    const double current = sobolev_norm(1.0, forward(u));
    if (current == 0.0) throw InvalidArgument("cannot rescale a zero profile to a positive H^1 norm");
    u = Complex(*spec.h1_norm / current) * u;
  }

  Field v(grid);
  for (std::size_t i = 0; i < grid.point_count(); ++i) v.values[i] = spec.v_scale * std::norm(u.values[i]);
  return {std::move(u), std::move(v)};
}

}  // namespace sdlab
