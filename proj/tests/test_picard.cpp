#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "sdlab/errors.hpp"
#include "sdlab/picard.hpp"
#include "sdlab/xsb.hpp"

using namespace sdlab;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_diff(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

// w(x, t) = c e^{2 pi i (x xi + lambda t)} sampled on the window.
SpaceTimeFunction plane_wave(const TorusGrid& g, const TimeWindow& win, int xi, double lambda, Complex c) {
  SpaceTimeFunction w(g, win);
  for (int j = 0; j < win.samples; ++j)
    for (std::size_t x = 0; x < g.point_count(); ++x)
      w.values[static_cast<std::size_t>(j) * g.point_count() + x] =
          c * std::polar(1.0, kTwoPi * (g.coordinate(x, 0) * xi + lambda * win.time(j)));
  return w;
}

}  // namespace

TEST_CASE("smooth cutoffs") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK_THAT(smooth_step(0.5), WithinAbs(0.5, 1e-15));
  for (double x = 0.01; x < 1.0; x += 0.01) {
    CHECK(smooth_step(x) <= smooth_step(x + 0.01));
    CHECK_THAT(smooth_step(x) + smooth_step(1.0 - x), WithinAbs(1.0, 1e-14));
  }
  const double delta = 0.1;
  CHECK(cutoff_value(1, 0.1, delta) == 1.0);
  CHECK(cutoff_value(1, -0.1, delta) == 1.0);
  CHECK(cutoff_value(1, 0.2, delta) == 0.0);
  CHECK(cutoff_value(1, -0.25, delta) == 0.0);
  CHECK(cutoff_value(1, 0.15, delta) > 0.0);
  CHECK(cutoff_value(2, 1.0, 0.0) == 1.0);
  CHECK(cutoff_value(2, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(cutoff_value(3, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(cutoff_psi(2, TimeWindow{3.0, 64, 0.1}), InvalidArgument);
}

TEST_CASE("support range covers |t| <= 2 delta") {
  const TimeWindow win{4.0, 64, 0.25};
  const auto [first, last] = support_range(win);
  CHECK_THAT(win.time(first), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(win.time(last), WithinAbs(0.5, 1e-15));
}

TEST_CASE("Duhamel quadrature") {
  const TorusGrid g(1, 8);
  const TimeWindow win{2.0, 1024, 0.2};

  SECTION("zero forcing gives free evolution") {
    Spectrum u0(g);
    u0.coeffs[g.index_of(Mode{2, 0, 0})] = Complex(0.3, 0.1);
    u0.coeffs[g.index_of(Mode{-1, 0, 0})] = 0.5;
    const SpaceTimeFunction out = duhamel_apply(u0, SpaceTimeFunction(g, win));
    const auto [first, last] = support_range(win);
    for (int j = first; j <= last; ++j) {
      const Field expected = inverse(free_evolution(u0, win.time(j)));
      const Field got = out.slice(j);
      for (std::size_t x = 0; x < g.point_count(); ++x) CHECK(std::abs(got.values[x] - expected.values[x]) < 1e-13);
    }
  }

  SECTION("constant forcing of the zero mode is integrated exactly") {
    const Complex c(0.7, -0.2);
    const SpaceTimeFunction out = duhamel_apply(Spectrum(g), plane_wave(g, win, 0, 0.0, c));
    const auto [first, last] = support_range(win);
    for (int j = first; j <= last; ++j)
      CHECK(std::abs(out.slice(j).values[3] - (-Complex(0, 1) * c * win.time(j))) < 1e-13);
  }

  SECTION("resonant forcing grows linearly") {
    const Complex c(1.0, 0.0);
    const int xi = 2;
    const SpaceTimeFunction out = duhamel_apply(Spectrum(g), plane_wave(g, win, xi, xi * xi, c));
    const auto [first, last] = support_range(win);
    double worst = 0.0;
    for (int j = first; j <= last; ++j) {
      const double t = win.time(j);
      for (std::size_t x = 0; x < g.point_count(); ++x) {
        const Complex exact = -Complex(0, 1) * c * t * std::polar(1.0, kTwoPi * (g.coordinate(x, 0) * xi + xi * xi * t));
        worst = std::max(worst, std::abs(out.values[static_cast<std::size_t>(j) * g.point_count() + x] - exact));
      }
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("Picard iteration") {
  const TorusGrid g(1, 16);
  const TimeWindow win{1.0, 256, 0.05};
  ModelParams params;

  SECTION("zero data is a fixed point") {
    const PicardResult r = picard_solve(Spectrum(g), Field(g), params, win, {1.0, 1e-12, 5});
    CHECK(r.converged);
    CHECK(r.history.size() == 1);
    for (const auto& z : r.solution.values) CHECK(z == Complex(0.0));
  }

  SECTION("small data contracts and solves the fixed-point equation") {
    Spectrum u0(g);
    u0.coeffs[g.index_of(Mode{1, 0, 0})] = 0.05;
    u0.coeffs[g.index_of(Mode{-2, 0, 0})] = Complex(0.0, 0.03);
    Field v0(g);
    for (std::size_t x = 0; x < g.point_count(); ++x) v0.values[x] = 0.1 * std::cos(kTwoPi * g.coordinate(x, 0));
    for (int eps : {1, -1}) {
      params.eps = eps;
      const PicardResult r = picard_solve(u0, v0, params, win, {1.0, 1e-12, 30});
      REQUIRE(r.converged);
      for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i].ratio < 1.0);
      CHECK(std::isnan(r.history.front().ratio));
      const SpaceTimeFunction again = fixed_point_map(r.solution, u0, v0, params);
      CHECK(max_abs_diff(again, r.solution) < 1e-11);
    }
  }

  SECTION("large data over a long interval does not contract") {
    Spectrum u0(g);
    u0.coeffs[g.index_of(Mode{0, 0, 0})] = 30.0;
    u0.coeffs[g.index_of(Mode{3, 0, 0})] = 30.0;
    const TimeWindow wide{4.0, 256, 0.9};
    CHECK_THROWS_AS(picard_solve(u0, Field(g), params, wide, {1.0, 1e-12, 40}), NoContraction);
    const DeltaProbe probe = probe_existence_time(u0, Field(g), params, wide, 0.0005, {1.0, 1e-12, 40});
    REQUIRE(probe.breakdown_delta.has_value());
    CHECK(probe.entries.front().contracted);
    CHECK_FALSE(probe.entries.back().contracted);
  }

  SECTION("argument checks") {
    CHECK_THROWS_AS(picard_solve(Spectrum(g), Field(g), params, win, {1.0, 0.0, 5}), InvalidArgument);
    CHECK_THROWS_AS(picard_solve(Spectrum(g), Field(g), params, win, {1.0, 1e-12, 0}), InvalidArgument);
    CHECK_THROWS_AS(picard_solve(Spectrum(g), Field(TorusGrid(1, 8)), params, win, {1.0, 1e-12, 5}), InvalidArgument);
  }
}

TEST_CASE("Duhamel decomposition agrees with the closed form and the quadrature") {
  const TorusGrid g(1, 8);
  const TimeWindow win{4.0, 512, 0.2};
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpaceTimeSpectrum w(g, win);
  for (int k = win.samples / 2 - 40; k < win.samples / 2 + 40; ++k)
    for (std::size_t xi = 0; xi < g.point_count(); ++xi)
      if (std::abs(g.mode(xi)[0]) <= 2) w.at(k, xi) = Complex(normal(rng), normal(rng)) * std::exp(-0.01 * (k - 256) * (k - 256));

  const DuhamelTerms terms = duhamel_decompose(w);
  const SpaceTimeFunction closed = duhamel_closed_form(w);
  double gap = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < closed.values.size(); ++i) {
    const Complex sum = terms.series.values[i] + terms.oscillatory.values[i] + terms.boundary.values[i];
    gap = std::max(gap, std::abs(sum - closed.values[i]));
    scale = std::max(scale, std::abs(closed.values[i]));
  }
  CHECK(scale > 0.0);
  CHECK(gap < 1e-11 * scale);

  const DecompositionReport report = decomposition_report(w, terms, nullptr, 1.0, 0.5, 0.4);
  CHECK(report.quadrature_mismatch < 1e-3);
  CHECK(report.forcing_norm > 0.0);
  CHECK(std::isfinite(report.inhomogeneous_ratio));
  CHECK(report.linear_norm == 0.0);
}

TEST_CASE("cutoff free solution") {
  const TorusGrid g(1, 8);
  const TimeWindow win{2.0, 64, 0.25};
  Spectrum u0(g);
  u0.coeffs[g.index_of(Mode{1, 0, 0})] = 1.0;
  const SpaceTimeFunction f = cutoff_free_solution(u0, win);
  const auto psi = cutoff_psi(1, win);
  for (int j = 0; j < win.samples; ++j) {
    const Field slice = f.slice(j);
    const Complex expected = psi[static_cast<std::size_t>(j)] * std::polar(1.0, kTwoPi * win.time(j));
    CHECK(std::abs(slice.values[0] - expected) < 1e-13);
  }
}
