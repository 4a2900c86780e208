#include "sdlab/xsb.hpp"

#include <cmath>
#include <map>
#include <set>

#include "sdlab/errors.hpp"
#include "sdlab/picard.hpp"

namespace sdlab {

std::int64_t dyadic_label(double magnitude) {
  magnitude = std::abs(magnitude);
  if (magnitude < 1.0) return 0;
  std::int64_t label = 1;
  while (2.0 * static_cast<double>(label) <= magnitude) label *= 2;
  return label;
}

std::int64_t frequency_label(std::int64_t norm2) {
  if (norm2 < 1) return 0;
  std::int64_t label = 1;
  while (4 * label * label <= norm2) label *= 2;
  return label;
}

bool is_dyadic(std::int64_t label) { return label >= 1 && (label & (label - 1)) == 0; }

ShellIndex shell_of(const SpaceTimeSpectrum& h, int k, std::size_t xi) {
  return ShellIndex{dyadic_label(h.modulation(k, xi)), frequency_label(h.grid.mode_norm2(xi))};
}

double xsb_norm(const SpaceTimeSpectrum& h, double s, double b) {
  const auto p = h.grid.point_count();
  std::vector<double> space_weight(p);
  for (std::size_t xi = 0; xi < p; ++xi) space_weight[xi] = std::pow(bracket(h.grid.mode_norm(xi)), 2.0 * s);

  double acc = 0.0;
  for (int k = 0; k < h.window.samples; ++k) {
    for (std::size_t xi = 0; xi < p; ++xi) {
      const double mass = std::norm(h.at(k, xi));
      if (mass == 0.0) continue;
      acc += space_weight[xi] * std::pow(bracket(h.modulation(k, xi)), 2.0 * b) * mass;
    }
  }
  return std::sqrt(acc * h.window.dlambda());
}

SpaceTimeSpectrum shell_restrict(const SpaceTimeSpectrum& h, ShellIndex shell) {
  SpaceTimeSpectrum out = h;
  const auto p = h.grid.point_count();
  for (int k = 0; k < h.window.samples; ++k)
    for (std::size_t xi = 0; xi < p; ++xi)
      if (shell_of(h, k, xi) != shell) out.at(k, xi) = 0.0;
  return out;
}

std::vector<ShellIndex> lattice_shells(const SpaceTimeSpectrum& h) {
  std::set<ShellIndex> shells;
  const auto p = h.grid.point_count();
  for (int k = 0; k < h.window.samples; ++k)
    for (std::size_t xi = 0; xi < p; ++xi) shells.insert(shell_of(h, k, xi));
  return {shells.begin(), shells.end()};
}

double triple_norm(const SpaceTimeSpectrum& h, double s) {
  std::map<ShellIndex, double> mass;
  const auto p = h.grid.point_count();
  for (int k = 0; k < h.window.samples; ++k)
    for (std::size_t xi = 0; xi < p; ++xi) {
      const double m = std::norm(h.at(k, xi));
      if (m != 0.0) mass[shell_of(h, k, xi)] += m;
    }
  double best = 0.0;
  for (const auto& [shell, m] : mass) {
    const double weighted = std::sqrt(static_cast<double>(shell.A) + 1.0) *
                            std::pow(static_cast<double>(shell.N) + 1.0, s) * std::sqrt(m * h.window.dlambda());
    best = std::max(best, weighted);
  }
  return best;
}

SpaceTimeSpectrum dyadic_piece(const SpaceTimeSpectrum& h, std::int64_t M) {
  if (!is_dyadic(M)) throw InvalidArgument("dyadic piece index must be a power of two >= 1");
  SpaceTimeSpectrum out = h;
  const auto p = h.grid.point_count();
  for (std::size_t xi = 0; xi < p; ++xi) {
    const std::int64_t k2 = h.grid.mode_norm2(xi);
    const bool keep = (M == 1) ? k2 <= 1 : (4 * k2 > M * M && k2 <= M * M);
    if (keep) continue;
    for (int k = 0; k < h.window.samples; ++k) out.at(k, xi) = 0.0;
  }
  return out;
}

std::vector<std::int64_t> dyadic_ladder(const TorusGrid& grid) {
  std::int64_t max_norm2 = 0;
  for (std::size_t xi = 0; xi < grid.point_count(); ++xi) max_norm2 = std::max(max_norm2, grid.mode_norm2(xi));
  std::vector<std::int64_t> ladder{1};
  while (ladder.back() * ladder.back() < max_norm2) ladder.push_back(2 * ladder.back());
  return ladder;
}

double cutoff_scaling_ratio(const SpaceTimeSpectrum& h, double T, double s, double b, double b_prime) {
  if (!(T > 0.0 && T < 1.0)) throw InvalidArgument("cutoff scale T must lie in (0, 1)");
  if (!(-0.5 < b_prime && b_prime <= b && b < 0.5))
    throw InvalidArgument("cutoff scaling requires -1/2 < b' <= b < 1/2");
  if (!(4.0 * T < h.window.length)) throw InvalidArgument("psi_T support does not fit in the time window");

  const double denom_norm = xsb_norm(h, s, b);
  if (denom_norm == 0.0) return 0.0;

  SpaceTimeFunction samples = to_samples(h);
  const auto p = samples.slice_size();
  for (int j = 0; j < samples.window.samples; ++j) {
    const double psi = cutoff_value(2, samples.window.time(j) / T, 0.0);
    for (std::size_t x = 0; x < p; ++x) samples.values[static_cast<std::size_t>(j) * p + x] *= psi;
  }
  const double num = xsb_norm(to_spectrum(samples), s, b_prime);
  return num / (std::pow(T, b - b_prime) * denom_norm);
}

double l4_embedding_ratio(const SpaceTimeSpectrum& h) {
  if (h.grid.dim() != 1) throw InvalidArgument("the L^4 embedding check is one-dimensional");
  if (h.window.length != 1.0) throw InvalidArgument("the L^4 embedding check needs a unit-length time window");
  const double denom = xsb_norm(h, 0.0, 3.0 / 8.0);
  if (denom == 0.0) throw InvalidArgument("zero X^{0,3/8} norm");
  const SpaceTimeFunction f = to_samples(h);
  double acc = 0.0;
  for (const auto& z : f.values) acc += std::pow(std::norm(z), 2);
  const double l4 = std::pow(acc / static_cast<double>(f.slice_size()) * f.window.step(), 0.25);
  return l4 / denom;
}

}  // namespace sdlab
