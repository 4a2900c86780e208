#include "sdlab/propagators.hpp"

#include <cmath>
#include <numbers>

#include "sdlab/errors.hpp"

namespace sdlab {

void ModelParams::validate() const {
  if (!(K > 0.0) || !std::isfinite(K)) throw InvalidArgument("relaxation time K must be positive");
  if (eps != 1 && eps != -1) throw InvalidArgument("eps must be +1 or -1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (dim < 1) throw InvalidArgument("dimension must be positive");
}

namespace detail {

std::array<double, 3> exponential_weights(double z) {
  const double decay = std::exp(-z);
  const double total = -std::expm1(-z);
  double g;
  if (std::abs(z) < 0.1) {
    // g(z) = sum_{m>=2} (-1)^m (m-1) z^{m-1} / m!
    double term_pow = z;  // z^{m-1}
    double fact = 2.0;    // m!
    g = 0.0;
    for (int m = 2; m <= 16; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      g += sign * (m - 1) * term_pow / fact;
      term_pow *= z;
      fact *= (m + 1);
    }
  } else {
    g = (total - z * decay) / z;
  }
  return {decay, total - g, g};
}

void exponential_update(std::vector<Complex>& v, const std::vector<Complex>& s0,
                        const std::vector<Complex>& s1, double dt, double K, double eps) {
  const auto [decay, w1, w0] = exponential_weights(dt / K);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = decay * v[i] + eps * (w0 * s0[i] + w1 * s1[i]);
}

}  // namespace detail

Spectrum free_evolution(const Spectrum& spectrum, double t) {
  Spectrum out = spectrum;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const auto k2 = spectrum.grid.mode_norm2(i);
    // Reduce the phase t |xi|^2 modulo 1 first so large |xi| keep full precision.
    const double cycles = t * static_cast<double>(k2);
    const double phase = 2.0 * std::numbers::pi * (cycles - std::round(cycles));
    out.coeffs[i] *= std::polar(1.0, phase);
  }
  return out;
}

Field potential_rotation(const Field& u, const Field& v, double dt) {
  if (!(u.grid == v.grid)) throw InvalidArgument("u and v live on different grids");
  if (max_imag(v) > 1e-12) throw InvalidArgument("potential v must be real-valued");
  Field out = u;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= std::polar(1.0, -v.values[i].real() * dt);
  return out;
}

Field debye_step(const Field& v, const Field& source_left, const Field& source_right, double dt,
                 const ModelParams& params, int order) {
  if (!(dt > 0.0)) throw InvalidArgument("Debye step requires dt > 0");
  if (order != 1 && order != 2) throw InvalidArgument("Debye step order must be 1 or 2");
  if (!(v.grid == source_left.grid) || !(v.grid == source_right.grid))
    throw InvalidArgument("Debye step operands live on different grids");
  params.validate();
  Field out = v;
  const auto& right = order == 1 ? source_left : source_right;
  detail::exponential_update(out.values, source_left.values, right.values, dt, params.K, params.eps);
  return out;
}

Field debye_source(const Field& u, double alpha) {
  Field s(u.grid);
  if (alpha == 2.0) {
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = std::norm(u.values[i]);
    s = inverse(dealias(forward(s)));
  } else {
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = std::pow(std::abs(u.values[i]), alpha);
  }
  for (auto& z : s.values) z = z.real();
  return s;
}

SimState strang_step(const SimState& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("Strang step requires dt > 0");
  state.params.validate();
  const double half = 0.5 * dt;
  SimState next = state;

  next.u = potential_rotation(next.u, next.v, half);
  // |u| is unchanged by the rotation, so the source is constant over the substep.
  Field source = debye_source(next.u, state.params.alpha);
  next.v = debye_step(next.v, source, source, half, state.params, 2);

  next.u = inverse(free_evolution(forward(next.u), dt));

  source = debye_source(next.u, state.params.alpha);
  next.v = debye_step(next.v, source, source, half, state.params, 2);
  next.u = potential_rotation(next.u, next.v, half);

  next.t = state.t + dt;
  return next;
}

Trajectory evolve(const SimState& state, double horizon, double dt, int save_every) {
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (!(dt > 0.0) || dt > horizon) throw InvalidArgument("time step must satisfy 0 < dt <= T");
  if (save_every < 1) throw InvalidArgument("save_every must be >= 1");

  const auto steps = static_cast<long>(std::llround(horizon / dt));
  Trajectory traj;
  traj.dt = dt;
  traj.save_every = save_every;
  traj.states.push_back(state);

  SimState current = state;
  for (long k = 1; k <= steps; ++k) {
    current = strang_step(current, dt);
    current.t = state.t + static_cast<double>(k) * dt;

    const double sup = lebesgue_norm(INFINITY, current.u);
    if (!std::isfinite(sup) || sup > kBlowUpThreshold || !std::isfinite(lebesgue_norm(INFINITY, current.v)))
      throw BlowUp(current.t, lebesgue_norm(2.0, current.u), sup);

    if (k % save_every == 0 || k == steps) traj.states.push_back(current);
  }
  return traj;
}

RescaledFields maxwell_rescale(const Field& A, const Field& nu, const PhysicalConstants& pc) {
  if (!(pc.c > 0 && pc.k > 0 && pc.eta0 > 0 && pc.omega0 > 0))
    throw InvalidArgument("c, k, eta0 and omega0 must be positive");
  if (pc.eta2 == 0.0 || !std::isfinite(pc.eta2)) throw InvalidArgument("eta2 must be non-zero");
  const double amp_u = std::sqrt(pc.omega0 * std::abs(pc.eta2) / pc.eta0);
  const double amp_v = pc.omega0 / pc.eta0;
  return RescaledFields{amp_u * A, amp_v * nu, std::sqrt(pc.c / (pc.k * pc.eta0)), pc.eta2 > 0 ? 1 : -1};
}

PhysicalFields maxwell_unscale(const Field& u, const Field& v, const PhysicalConstants& pc) {
  if (!(pc.c > 0 && pc.k > 0 && pc.eta0 > 0 && pc.omega0 > 0))
    throw InvalidArgument("c, k, eta0 and omega0 must be positive");
  if (pc.eta2 == 0.0 || !std::isfinite(pc.eta2)) throw InvalidArgument("eta2 must be non-zero");
  const double amp_u = std::sqrt(pc.omega0 * std::abs(pc.eta2) / pc.eta0);
  const double amp_v = pc.omega0 / pc.eta0;
  return PhysicalFields{(1.0 / amp_u) * u, (1.0 / amp_v) * v};
}

}  // namespace sdlab
