#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sdlab/errors.hpp"
#include "sdlab/profiles.hpp"
#include "sdlab/propagators.hpp"

using namespace sdlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Field constant(const TorusGrid& g, Complex c) {
  Field f(g);
  for (auto& z : f.values) z = c;
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

SimState gaussian_state(int M, int eps) {
  ProfileSpec spec;
  spec.name = "gaussian_bump";
  spec.width = 0.12;
  spec.amplitude = 1.0;
  spec.v_scale = 0.5;
  const TorusGrid g(1, M);
  InitialData init = initial_profile(spec, g);
  ModelParams p;
  p.eps = eps;
  return SimState{0.0, init.u0, init.v0, p};
}

}  // namespace

TEST_CASE("free evolution multiplies each mode by its phase") {
  const TorusGrid g(2, 8);
  Spectrum s(g);
  for (std::size_t xi = 0; xi < g.point_count(); ++xi) s.coeffs[xi] = Complex(1.0 + xi, -0.5);
  const double t = 0.0137;
  const Spectrum e = free_evolution(s, t);
  for (std::size_t xi = 0; xi < g.point_count(); ++xi) {
    const Complex expected = s.coeffs[xi] * std::polar(1.0, 2.0 * std::numbers::pi * t * g.mode_norm2(xi));
    CHECK(std::abs(e.coeffs[xi] - expected) < 1e-12);
  }
  const Spectrum full_period = free_evolution(s, 1.0);
  for (std::size_t xi = 0; xi < g.point_count(); ++xi) CHECK(std::abs(full_period.coeffs[xi] - s.coeffs[xi]) < 1e-12);
}

TEST_CASE("potential rotation keeps the modulus") {
  const TorusGrid g(1, 8);
  Field u = constant(g, Complex(0.6, 0.8));
  Field v(g);
  for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] = 0.3 * static_cast<double>(i);
  const Field r = potential_rotation(u, v, 0.7);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    CHECK_THAT(std::abs(r.values[i]), WithinAbs(1.0, 1e-15));
    CHECK(std::abs(r.values[i] - u.values[i] * std::polar(1.0, -0.7 * v.values[i].real())) < 1e-15);
  }
  v.values[2] = Complex(0.0, 1e-6);
  CHECK_THROWS_AS(potential_rotation(u, v, 0.1), InvalidArgument);
}

TEST_CASE("Debye step with constant source") {
  const TorusGrid g(1, 4);
  ModelParams p;
  const Field zero(g);
  const Field one = constant(g, 1.0);
  for (int order : {1, 2}) {
    const Field half = debye_step(zero, one, one, std::log(2.0), p, order);
    for (const auto& z : half.values) CHECK_THAT(z.real(), WithinAbs(0.5, 1e-15));
  }
  CHECK_THROWS_AS(debye_step(zero, one, one, 0.0, p, 2), InvalidArgument);
  CHECK_THROWS_AS(debye_step(zero, one, one, 0.1, p, 3), InvalidArgument);
}

TEST_CASE("order-2 Debye step is exact for linear sources") {
  // K v' + v = eps (a + b t), v(0) = v0.
  const TorusGrid g(1, 4);
  for (double K : {0.3, 1.0, 7.0}) {
    for (double dt : {1e-7, 1e-3, 0.05, 0.3, 2.0}) {
      for (int eps : {1, -1}) {
        ModelParams p;
        p.K = K;
        p.eps = eps;
        const double a = 0.7;
        const double b = -1.9;
        const double v0 = 0.25;
        const Field out = debye_step(constant(g, v0), constant(g, a), constant(g, a + b * dt), dt, p, 2);
        const double exact = eps * (a + b * (dt - K)) + (v0 - eps * (a - b * K)) * std::exp(-dt / K);
        CHECK_THAT(out.values[0].real(), WithinAbs(exact, 1e-14));
      }
    }
  }
}

TEST_CASE("exponential weights are smooth across the series switch") {
  for (double z : {0.1, 1e-3, 1e-6}) {
    const auto below = detail::exponential_weights(std::nextafter(z, 0.0));
    const auto above = detail::exponential_weights(std::nextafter(z, 1.0));
    for (int i = 0; i < 3; ++i) CHECK_THAT(below[i], WithinAbs(above[i], 1e-15));
  }
  const auto w = detail::exponential_weights(0.05);
  const double g = (-std::expm1(-0.05) - 0.05 * std::exp(-0.05)) / 0.05;
  CHECK_THAT(w[2], WithinRel(g, 1e-13));
  CHECK_THAT(w[0] + w[1] + w[2], WithinAbs(1.0, 1e-15));
}

TEST_CASE("Debye source is dealiased only in the cubic case") {
  const TorusGrid g(1, 12);
  Spectrum s(g);
  s.coeffs[g.index_of(Mode{3, 0, 0})] = 1.0;
  s.coeffs[g.index_of(Mode{-2, 0, 0})] = 0.5;
  const Field u = inverse(s);
  const Spectrum cubic = forward(debye_source(u, 2.0));
  CHECK(std::abs(cubic.coeffs[g.index_of(Mode{5, 0, 0})]) < 1e-15);
  CHECK_THAT(cubic.coeffs[g.index_of(Mode{0, 0, 0})].real(), WithinAbs(1.25, 1e-14));
  const Field quartic = debye_source(u, 4.0);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    CHECK_THAT(quartic.values[i].real(), WithinRel(std::pow(std::abs(u.values[i]), 4), 1e-12));
}

TEST_CASE("evolution conserves L2 and relaxes v") {
  for (int eps : {1, -1}) {
    const SimState s0 = gaussian_state(64, eps);
    const Trajectory traj = evolve(s0, 0.2, 1e-3, 10);
    REQUIRE(traj.states.size() == 21);
    const double l2 = lebesgue_norm(2.0, s0.u);
    for (const auto& st : traj.states) CHECK(std::abs(lebesgue_norm(2.0, st.u) - l2) <= 1e-12 * l2);
    CHECK_THAT(traj.states.back().t, WithinAbs(0.2, 1e-15));
  }

  const TorusGrid g(1, 16);
  ModelParams p;
  p.K = 0.5;
  const SimState zero_u{0.0, Field(g), constant(g, 1.0), p};
  const Trajectory decay = evolve(zero_u, 0.3, 0.01, 30);
  for (const auto& z : decay.states.back().v.values) CHECK_THAT(z.real(), WithinRel(std::exp(-0.3 / 0.5), 1e-13));
}

TEST_CASE("Strang splitting converges at second order") {
  const SimState s0 = gaussian_state(64, 1);
  const double T = 0.1;
  const Field ref = evolve(s0, T, T / 640, 640).states.back().u;
  std::vector<double> err;
  for (int steps : {20, 40, 80}) err.push_back(max_diff(evolve(s0, T, T / steps, steps).states.back().u, ref));
  const double order1 = std::log2(err[0] / err[1]);
  const double order2 = std::log2(err[1] / err[2]);
  CHECK(order1 > 1.8);
  CHECK(order2 > 1.8);
  CHECK(order1 < 2.2);
  CHECK(order2 < 2.2);
}

TEST_CASE("blow-up guard") {
  const TorusGrid g(1, 8);
  const SimState s{0.0, constant(g, 2e8), Field(g), ModelParams{}};
  CHECK_THROWS_AS(evolve(s, 0.01, 0.001, 1), BlowUp);
}

TEST_CASE("Maxwell rescaling round trip") {
  const TorusGrid g(1, 8);
  Field A(g);
  Field nu(g);
  for (std::size_t i = 0; i < A.values.size(); ++i) {
    A.values[i] = Complex(0.1 * i, -0.2);
    nu.values[i] = 0.05 * i;
  }
  const PhysicalConstants pc{2.0, 3.0, 0.5, -1.5, 4.0};
  const RescaledFields r = maxwell_rescale(A, nu, pc);
  CHECK(r.eps == -1);
  CHECK_THAT(r.dilation, WithinRel(std::sqrt(2.0 / 1.5), 1e-15));
  const PhysicalFields back = maxwell_unscale(r.u, r.v, pc);
  CHECK(max_diff(back.A, A) < 1e-15);
  CHECK(max_diff(back.nu, nu) < 1e-15);
  CHECK_THROWS_AS(maxwell_rescale(A, nu, PhysicalConstants{1, 1, 1, 0, 1}), InvalidArgument);
}
