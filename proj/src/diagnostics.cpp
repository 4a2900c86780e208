#include "sdlab/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sdlab/errors.hpp"

namespace sdlab {

double BalanceRecord::energy() const { return grad_energy / (2.0 * std::numbers::pi) - coupling; }

BalanceRecord balance_terms(const SimState& state) {
  const Field& u = state.u;
  const Field& v = state.v;
  if (!(u.grid == v.grid)) throw InvalidArgument("u and v live on different grids");

  BalanceRecord rec;
  rec.t = state.t;
  const Spectrum uh = forward(u);
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  for (std::size_t xi = 0; xi < uh.coeffs.size(); ++xi)
    rec.grad_energy += four_pi2 * static_cast<double>(uh.grid.mode_norm2(xi)) * std::norm(uh.coeffs[xi]);
  rec.h1 = sobolev_norm(1.0, uh);

  const double p = state.params.p();
  const Field up = state.params.alpha == 2.0 ? inverse(dealias(uh)) : u;
  const auto count = static_cast<double>(u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double mass = std::norm(u.values[i]);
    rec.coupling += mass * v.values[i].real();
    rec.l2 += mass;
    rec.potential_p += std::pow(std::abs(up.values[i]), p);
  }
  rec.coupling /= count;
  rec.l2 /= count;
  rec.potential_p /= count;
  return rec;
}

namespace {

std::vector<BalanceRecord> records_of(const Trajectory& traj) {
  if (traj.states.size() < 3) throw InvalidArgument("balance residuals need at least 3 snapshots");
  std::vector<BalanceRecord> recs;
  recs.reserve(traj.states.size());
  for (const auto& st : traj.states) recs.push_back(balance_terms(st));
  return recs;
}

double rhs(const BalanceRecord& r, const ModelParams& params) {
  return (r.coupling - params.eps * r.potential_p) / params.K;
}

}  // namespace

ResidualSeries h1_balance_residual(const Trajectory& traj) {
  const auto recs = records_of(traj);
  const double h = recs[1].t - recs[0].t;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (std::abs((recs[i].t - recs[i - 1].t) - h) > 1e-9 * std::abs(h))
      throw InvalidArgument("balance residual needs uniformly spaced snapshots");
  const ModelParams& params = traj.states.front().params;

  ResidualSeries out;
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const double lhs = (recs[i + 1].energy() - recs[i - 1].energy()) / (2.0 * h);
    const double r = lhs - rhs(recs[i], params);
    out.t.push_back(recs[i].t);
    out.residual.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
  }
  return out;
}

IntegratedResidual integrated_balance_residual(const Trajectory& traj) {
  const auto recs = records_of(traj);
  if (recs.front().t != 0.0) throw InvalidArgument("integrated balance needs a trajectory starting at t = 0");
  const ModelParams& params = traj.states.front().params;

  double integral = 0.0;
  for (std::size_t i = 1; i < recs.size(); ++i)
    integral += 0.5 * (recs[i].t - recs[i - 1].t) * (rhs(recs[i], params) + rhs(recs[i - 1], params));

  const BalanceRecord& a = recs.front();
  const BalanceRecord& b = recs.back();
  const double two_pi = 2.0 * std::numbers::pi;
  IntegratedResidual out;
  out.direct = b.energy() - a.energy() - integral;
  out.printed = b.grad_energy / two_pi - (b.coupling - a.grad_energy / two_pi + a.coupling + integral);
  return out;
}

InterpolationCheck interpolation_check(const Field& f, double p, int n) {
  if (n != f.grid.dim()) throw InvalidArgument("dimension does not match the field's grid");
  if (!(p >= 2.0)) throw InvalidArgument("interpolation check needs p >= 2");
  const double theta = std::isinf(p) ? n * 0.5 : n * (0.5 - 1.0 / p);
  if (theta >= 1.0) throw NotApplicable("theta = n(1/2 - 1/p) must be below 1");
  const Spectrum fh = forward(f);
  const double l2 = sobolev_norm(0.0, fh);
  if (l2 == 0.0) throw InvalidArgument("interpolation ratio undefined for f = 0");
  const double h1 = sobolev_norm(1.0, fh);
  const double lp = lebesgue_norm(p, f);
  return {lp / (std::pow(l2, 1.0 - theta) * std::pow(h1, theta)), theta};
}

AprioriExponents apriori_exponents(int n, double alpha) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  AprioriExponents out;
  out.theta0 = n / 4.0;
  out.theta1 = n * (alpha - 1.0) / (2.0 * alpha);
  out.theta = n * alpha / (2.0 * (alpha + 2.0));
  out.theta0_below_one = n < 4;
  out.theta1_below_one = n * (alpha - 1.0) < 2.0 * alpha;
  out.theta_below_one = n * alpha < 2.0 * (alpha + 2.0);
  std::ostringstream mu;
  mu << "mu1(T) = (c/K) T^(1/2) ||u0||_2^" << alpha * (1.0 - out.theta1);
  out.mu1 = mu.str();
  return out;
}

}  // namespace sdlab
