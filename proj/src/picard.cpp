#include "sdlab/picard.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sdlab/errors.hpp"
#include "sdlab/xsb.hpp"

namespace sdlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i * cycles}, with the integer part removed before scaling.
Complex unit_phase(double cycles) { return std::polar(1.0, kTwoPi * (cycles - std::round(cycles))); }

// a0 = int_0^1 e^{z s} ds, a1 = int_0^1 s e^{z s} ds.
std::pair<Complex, Complex> linear_phase_weights(Complex z) {
  if (std::abs(z) < 1.0) {
    Complex a0 = 0.0;
    Complex a1 = 0.0;
    Complex zk = 1.0;
    double fact = 1.0;  // k!
    for (int k = 0; k < 24; ++k) {
      a0 += zk / (fact * (k + 1));
      a1 += zk / (fact * (k + 2));
      zk *= z;
      fact *= (k + 1);
    }
    return {a0, a1};
  }
  const Complex ez = std::exp(z);
  return {(ez - 1.0) / z, (ez * (z - 1.0) + 1.0) / (z * z)};
}

void check_same_shape(const SpaceTimeFunction& a, const TorusGrid& g) {
  if (!(a.grid == g)) throw InvalidArgument("space-time function and data live on different grids");
}

}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double cutoff_value(int kind, double t, double delta) {
  const double at = std::abs(t);
  switch (kind) {
    case 1:
      if (!(delta > 0.0)) throw InvalidArgument("psi_1 needs delta > 0");
      if (at <= delta) return 1.0;
      return smooth_step((2.0 * delta - at) / delta);
    case 2:
      if (at <= 1.0) return 1.0;
      return smooth_step(2.0 - at);
    default:
      throw InvalidArgument("cutoff kind must be 1 or 2");
  }
}

std::vector<double> cutoff_psi(int kind, const TimeWindow& window) {
  window.validate();
  const double reach = kind == 1 ? 2.0 * window.delta : 2.0;
  if (kind != 1 && kind != 2) throw InvalidArgument("cutoff kind must be 1 or 2");
  if (reach > 0.5 * window.length) throw InvalidArgument("cutoff support exceeds the time window");
  std::vector<double> out(static_cast<std::size_t>(window.samples));
  for (int j = 0; j < window.samples; ++j) out[static_cast<std::size_t>(j)] = cutoff_value(kind, window.time(j), window.delta);
  return out;
}

std::pair<int, int> support_range(const TimeWindow& window) {
  const int reach = static_cast<int>(std::floor(2.0 * window.delta / window.step() + 1e-9));
  return {window.origin() - reach, window.origin() + reach};
}

SpaceTimeFunction nonlinear_w(const SpaceTimeFunction& u, const Field& v0, const ModelParams& params) {
  check_same_shape(u, v0.grid);
  params.validate();
  const auto [first, last] = support_range(u.window);
  const int origin = u.window.origin();
  const double h = u.window.step();
  const auto p = u.slice_size();

  SpaceTimeFunction w(u.grid, u.window);
  std::vector<Field> source;
  source.reserve(static_cast<std::size_t>(last - first + 1));
  for (int j = first; j <= last; ++j) source.push_back(debye_source(u.slice(j), params.alpha));
  auto src = [&](int j) -> const std::vector<Complex>& { return source[static_cast<std::size_t>(j - first)].values; };

  // memory[j] = (1/K) int_0^{t_j} e^{-(t_j - tau)/K} |u(tau)|^alpha dtau
  auto emit = [&](int j, const std::vector<Complex>& memory) {
    const double t = u.window.time(j);
    const double decay = std::exp(-t / params.K);
    for (std::size_t x = 0; x < p; ++x) {
      const std::size_t idx = static_cast<std::size_t>(j) * p + x;
      w.values[idx] = u.values[idx] * (decay * v0.values[x].real() + params.eps * memory[x].real());
    }
  };

  std::vector<Complex> memory(p, 0.0);
  emit(origin, memory);
  for (int j = origin; j < last; ++j) {
    detail::exponential_update(memory, src(j), src(j + 1), h, params.K, 1.0);
    emit(j + 1, memory);
  }
  std::fill(memory.begin(), memory.end(), 0.0);
  for (int j = origin; j > first; --j) {
    detail::exponential_update(memory, src(j), src(j - 1), -h, params.K, 1.0);
    emit(j - 1, memory);
  }
  return w;
}

SpaceTimeFunction duhamel_apply(const Spectrum& u0, const SpaceTimeFunction& w) {
  check_same_shape(w, u0.grid);
  const auto [first, last] = support_range(w.window);
  const int origin = w.window.origin();
  const double h = w.window.step();
  const auto p = w.slice_size();
  const auto& grid = w.grid;

  std::vector<Complex> w_hat(w.values.size(), 0.0);
  for (int j = first; j <= last; ++j) {
    const Spectrum s = forward(w.slice(j));
    std::copy(s.coeffs.begin(), s.coeffs.end(), w_hat.begin() + static_cast<std::ptrdiff_t>(j * p));
  }
  auto what = [&](int j, std::size_t xi) { return w_hat[static_cast<std::size_t>(j) * p + xi]; };

  std::vector<Complex> out(w.values.size(), 0.0);
  for (std::size_t xi = 0; xi < p; ++xi) {
    const double omega = static_cast<double>(grid.mode_norm2(xi));
    auto store = [&](int j, Complex integral) {
      const double t = w.window.time(j);
      out[static_cast<std::size_t>(j) * p + xi] = unit_phase(t * omega) * (u0.coeffs[xi] - Complex(0, 1) * integral);
    };
    for (int dir : {+1, -1}) {
      const double step = dir * h;
      const auto [a0, a1] = linear_phase_weights(Complex(0.0, -kTwoPi * omega * step));
      Complex integral = 0.0;
      store(origin, integral);
      const int end = dir > 0 ? last : first;
      for (int j = origin; j != end; j += dir) {
        const Complex wl = what(j, xi);
        const Complex wr = what(j + dir, xi);
        integral += step * unit_phase(-w.window.time(j) * omega) * (wl * a0 + (wr - wl) * a1);
        store(j + dir, integral);
      }
    }
  }
  return from_spatial_spectra(grid, w.window, std::move(out));
}

namespace {

void apply_cutoff(SpaceTimeFunction& f) {
  const auto psi = cutoff_psi(1, f.window);
  const auto p = f.slice_size();
  for (int j = 0; j < f.window.samples; ++j)
    for (std::size_t x = 0; x < p; ++x) f.values[static_cast<std::size_t>(j) * p + x] *= psi[static_cast<std::size_t>(j)];
}

}  // namespace

SpaceTimeFunction fixed_point_map(const SpaceTimeFunction& u, const Spectrum& u0, const Field& v0,
                                  const ModelParams& params) {
  SpaceTimeFunction out = duhamel_apply(u0, nonlinear_w(u, v0, params));
  apply_cutoff(out);
  return out;
}

SpaceTimeFunction cutoff_free_solution(const Spectrum& u0, const TimeWindow& window) {
  SpaceTimeFunction out = duhamel_apply(u0, SpaceTimeFunction(u0.grid, window));
  apply_cutoff(out);
  return out;
}

PicardResult picard_solve(const Spectrum& u0, const Field& v0, const ModelParams& params,
                          const TimeWindow& window, const PicardOptions& options) {
  if (options.kmax < 1) throw InvalidArgument("kmax must be >= 1");
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  window.validate();
  params.validate();

  PicardResult result{cutoff_free_solution(u0, window), {}, false};
  std::vector<double> ratios;
  int non_contracting = 0;
  double previous = std::numeric_limits<double>::quiet_NaN();

  for (int k = 1; k <= options.kmax; ++k) {
    SpaceTimeFunction next = fixed_point_map(result.solution, u0, v0, params);
    const double diff = xsb_norm(to_spectrum(next - result.solution), options.s, 0.5);
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (k > 1) ratio = previous > 0.0 ? diff / previous : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    result.history.push_back({k, diff, ratio});
    result.solution = std::move(next);

    if (diff < options.tol) {
      result.converged = true;
      return result;
    }
    if (k > 1) {
      ratios.push_back(ratio);
      non_contracting = ratio >= 1.0 ? non_contracting + 1 : 0;
      if (non_contracting >= 3) throw NoContraction(ratios);
    }
    previous = diff;
  }
  return result;
}

DeltaProbe probe_existence_time(const Spectrum& u0, const Field& v0, const ModelParams& params,
                                TimeWindow window, double start, const PicardOptions& options) {
  DeltaProbe probe;
  for (double delta = start; 4.0 * delta < window.length; delta *= 2.0) {
    window.delta = delta;
    DeltaProbeEntry entry{delta, true, 0.0, 0};
    try {
      const auto res = picard_solve(u0, v0, params, window, options);
      entry.iterations = static_cast<int>(res.history.size());
      entry.last_ratio = res.history.size() > 1 ? res.history.back().ratio : 0.0;
      entry.contracted = true;
      probe.entries.push_back(entry);
    } catch (const NoContraction& e) {
      entry.contracted = false;
      entry.last_ratio = e.ratios.empty() ? 0.0 : e.ratios.back();
      entry.iterations = static_cast<int>(e.ratios.size()) + 1;
      probe.entries.push_back(entry);
      probe.breakdown_delta = delta;
      break;
    }
  }
  return probe;
}

DuhamelTerms duhamel_decompose(const SpaceTimeSpectrum& w) {
  const TimeWindow& win = w.window;
  const auto p = w.grid.point_count();
  const auto [first, last] = support_range(win);
  const auto psi1 = cutoff_psi(1, win);
  const double dl = win.dlambda();
  const double t_max = 2.0 * win.delta;

  // Taylor order: (4 pi t_max)^k / k! bounds the k-th term relative to the psi_2 mass.
  int kmax = 1;
  {
    double bound = 4.0 * std::numbers::pi * t_max;
    while (bound >= 1e-14 && kmax < 400) {
      ++kmax;
      bound *= 4.0 * std::numbers::pi * t_max / kmax;
    }
  }

  std::vector<Complex> series(static_cast<std::size_t>(win.samples) * p, 0.0);
  std::vector<Complex> boundary(series.size(), 0.0);
  SpaceTimeSpectrum off_resonant(w.grid, win);

  for (std::size_t xi = 0; xi < p; ++xi) {
    const double omega = static_cast<double>(w.grid.mode_norm2(xi));
    std::vector<Complex> moments(static_cast<std::size_t>(kmax), 0.0);  // moments[k-1]
    Complex tail = 0.0;
    for (int k = 0; k < win.samples; ++k) {
      const Complex c = w.at(k, xi);
      if (c == 0.0) continue;
      const double mu = w.modulation(k, xi);
      const double psi2 = cutoff_value(2, mu, 0.0);
      if (psi2 > 0.0) {
        double mu_pow = 1.0;
        for (int m = 0; m < kmax; ++m) {
          moments[static_cast<std::size_t>(m)] += psi2 * mu_pow * c * dl;
          mu_pow *= mu;
        }
      }
      if (psi2 < 1.0) {
        const Complex shaped = (1.0 - psi2) / mu * c;
        off_resonant.at(k, xi) = shaped;
        tail += shaped * dl;
      }
    }
    for (int j = first; j <= last; ++j) {
      const double t = win.time(j);
      const double cut = psi1[static_cast<std::size_t>(j)];
      if (cut == 0.0) continue;
      const Complex carrier = unit_phase(t * omega);
      Complex sum = 0.0;
      Complex coef = 1.0;  // (2 pi i t)^k / k!
      for (int m = 1; m <= kmax; ++m) {
        coef *= Complex(0.0, kTwoPi * t) / static_cast<double>(m);
        sum += coef * moments[static_cast<std::size_t>(m - 1)];
      }
      const std::size_t idx = static_cast<std::size_t>(j) * p + xi;
      series[idx] = -cut * carrier * sum / kTwoPi;
      boundary[idx] = cut * carrier * tail / kTwoPi;
    }
  }

  SpaceTimeFunction oscillatory = to_samples(off_resonant);
  for (int j = 0; j < win.samples; ++j) {
    const double factor = -psi1[static_cast<std::size_t>(j)] / kTwoPi;
    for (std::size_t x = 0; x < p; ++x) oscillatory.values[static_cast<std::size_t>(j) * p + x] *= factor;
  }

  return DuhamelTerms{from_spatial_spectra(w.grid, win, std::move(series)), std::move(oscillatory),
                      from_spatial_spectra(w.grid, win, std::move(boundary)), kmax};
}

SpaceTimeFunction duhamel_closed_form(const SpaceTimeSpectrum& w) {
  const TimeWindow& win = w.window;
  const auto p = w.grid.point_count();
  const auto [first, last] = support_range(win);
  const auto psi1 = cutoff_psi(1, win);
  const double dl = win.dlambda();

  std::vector<Complex> out(static_cast<std::size_t>(win.samples) * p, 0.0);
  for (std::size_t xi = 0; xi < p; ++xi) {
    const double omega = static_cast<double>(w.grid.mode_norm2(xi));
    for (int j = first; j <= last; ++j) {
      const double t = win.time(j);
      const double cut = psi1[static_cast<std::size_t>(j)];
      if (cut == 0.0) continue;
      Complex acc = 0.0;
      for (int k = 0; k < win.samples; ++k) {
        const Complex c = w.at(k, xi);
        if (c == 0.0) continue;
        const double mu = w.modulation(k, xi);
        // int_0^t e^{2 pi i mu tau} dtau
        Complex kernel;
        if (std::abs(mu) < 1e-6) {
          const Complex z(0.0, kTwoPi * mu * t);
          kernel = t * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0);
        } else {
          kernel = (unit_phase(mu * t) - 1.0) / Complex(0.0, kTwoPi * mu);
        }
        acc += c * dl * kernel;
      }
      out[static_cast<std::size_t>(j) * p + xi] = -Complex(0.0, 1.0) * cut * unit_phase(t * omega) * acc;
    }
  }
  return from_spatial_spectra(w.grid, win, std::move(out));
}

DecompositionReport decomposition_report(const SpaceTimeSpectrum& w, const DuhamelTerms& terms,
                                         const Spectrum* u0, double s, double b, double b_prime) {
  DecompositionReport r;
  r.s = s;
  r.b = b;
  r.b_prime = b_prime;
  if (u0 != nullptr) r.linear_norm = xsb_norm(to_spectrum(cutoff_free_solution(*u0, w.window)), s, b);
  r.series_norm = xsb_norm(to_spectrum(terms.series), s, b);
  r.oscillatory_norm = xsb_norm(to_spectrum(terms.oscillatory), s, b);
  r.boundary_norm = xsb_norm(to_spectrum(terms.boundary), s, b);
  r.forcing_norm = xsb_norm(w, s, b_prime - 1.0);
  const double total = r.series_norm + r.oscillatory_norm + r.boundary_norm;
  r.inhomogeneous_ratio = r.forcing_norm > 0.0 ? total / r.forcing_norm : 0.0;

  SpaceTimeFunction quadrature = duhamel_apply(Spectrum(w.grid), to_samples(w));
  const auto psi1 = cutoff_psi(1, w.window);
  const auto p = quadrature.slice_size();
  double gap = 0.0;
  double ref = 0.0;
  for (int j = 0; j < w.window.samples; ++j)
    for (std::size_t x = 0; x < p; ++x) {
      const std::size_t idx = static_cast<std::size_t>(j) * p + x;
      const Complex sum = terms.series.values[idx] + terms.oscillatory.values[idx] + terms.boundary.values[idx];
      const Complex q = psi1[static_cast<std::size_t>(j)] * quadrature.values[idx];
      gap += std::norm(sum - q);
      ref += std::norm(q);
    }
  r.quadrature_mismatch = ref > 0.0 ? std::sqrt(gap / ref) : std::sqrt(gap);
  r.mismatch_flagged = r.quadrature_mismatch > 1e-6;
  return r;
}

}  // namespace sdlab
