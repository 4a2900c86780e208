// Acceptance checks: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdlab/classifier.hpp"
#include "sdlab/diagnostics.hpp"
#include "sdlab/errors.hpp"
#include "sdlab/picard.hpp"
#include "sdlab/profiles.hpp"
#include "sdlab/strichartz.hpp"
#include "sdlab/xsb.hpp"

using namespace sdlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances and budgets.
constexpr double kL2DriftTol = 1e-10;
constexpr double kL2RuntimeLimit = 30.0;
constexpr double kSlopeLow = 1.8;
constexpr double kSlopeHigh = 2.2;
constexpr double kBalanceRuntimeLimit = 180.0;
constexpr int kPicardMaxIterations = 12;
constexpr double kPicardGapTol = 5e-5;
constexpr double kPicardShrink = 3.0;
constexpr double kCountRuntimeLimit = 120.0;
constexpr double kExactNormTol = 1e-12;
constexpr double kQuadratureTol = 1e-8;
constexpr double kCutoffStability = 0.10;
constexpr double kAtomTol = 1e-10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    var += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return cov / var;
}

SimState bump_state(int eps) {
  ProfileSpec spec;
  spec.name = "gaussian_bump";
  spec.width = 0.1;
  spec.amplitude = 1.0;
  spec.v_scale = 1.0;
  InitialData init = initial_profile(spec, TorusGrid(1, 64));
  ModelParams p;
  p.eps = eps;
  return SimState{0.0, init.u0, init.v0, p};
}

Outcome l2_conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int eps : {1, -1}) {
    const SimState s = bump_state(eps);
    const double l2 = lebesgue_norm(2.0, s.u);
    const Trajectory traj = evolve(s, 1.0, 1e-3, 1);
    for (const auto& st : traj.states) worst = std::max(worst, std::abs(lebesgue_norm(2.0, st.u) - l2) / l2);
  }
  const double elapsed = seconds_since(t0);
  return {worst <= kL2DriftTol && elapsed < kL2RuntimeLimit,
          "max relative drift " + sci(worst) + " over both eps signs, " + sci(elapsed) + " s"};
}

Outcome balance_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> dts{4e-3, 2e-3, 1e-3, 5e-4};
  bool ok = true;
  std::string detail;
  for (int eps : {1, -1}) {
    const SimState s = bump_state(eps);
    std::vector<double> res;
    for (double dt : dts) res.push_back(h1_balance_residual(evolve(s, 1.0, dt, 1)).max_abs);
    const double slope = loglog_slope(dts, res);
    bool decreasing = true;
    for (std::size_t i = 1; i < res.size(); ++i) decreasing = decreasing && res[i] < res[i - 1];
    ok = ok && decreasing && slope >= kSlopeLow && slope <= kSlopeHigh;
    detail += "eps=" + std::to_string(eps) + ": slope " + sci(slope) + " (max residual " + sci(res.front()) + " -> " +
              sci(res.back()) + "); ";
  }
  const double elapsed = seconds_since(t0);
  return {ok && elapsed < kBalanceRuntimeLimit, detail + sci(elapsed) + " s"};
}

struct PicardComparison {
  double gap = 0.0;
  int iterations = 0;
  double worst_ratio = 0.0;
  bool converged = false;
};

// Fixed point on a window with N_t samples vs Strang steps of the same size, on [0, delta].
PicardComparison picard_vs_evolve(int M, int samples) {
  const TorusGrid g(1, M);
  ProfileSpec spec;
  spec.name = "gaussian_bump";
  spec.width = 0.1;
  spec.amplitude = 1.0;
  spec.h1_norm = 0.1;
  const Field u0 = initial_profile(spec, g).u0;
  Field v0(g);
  for (std::size_t x = 0; x < g.point_count(); ++x)
    v0.values[x] = 1.0 + 0.5 * std::cos(kTwoPi * g.coordinate(x, 0)) + 0.25 * std::sin(2.0 * kTwoPi * g.coordinate(x, 0));
  ModelParams params;

  const double delta = 0.05;
  const TimeWindow win{0.5, samples, delta};
  const PicardResult res = picard_solve(forward(u0), v0, params, win, {1.0, 1e-13, 40});

  PicardComparison out;
  out.converged = res.converged;
  out.iterations = static_cast<int>(res.history.size());
  for (std::size_t i = 1; i < res.history.size(); ++i) out.worst_ratio = std::max(out.worst_ratio, res.history[i].ratio);

  const double h = win.step();
  const int steps = static_cast<int>(std::lround(delta / h));
  const Trajectory traj = evolve(SimState{0.0, u0, v0, params}, steps * h, h, 1);
  for (int j = 0; j <= steps; ++j) {
    const Field diff = res.solution.slice(win.origin() + j) - traj.states[static_cast<std::size_t>(j)].u;
    out.gap = std::max(out.gap, lebesgue_norm(2.0, diff));
  }
  return out;
}

Outcome picard_agreement() {
  const PicardComparison coarse = picard_vs_evolve(32, 256);
  const PicardComparison fine = picard_vs_evolve(64, 512);
  const bool contracted = coarse.converged && fine.converged && coarse.iterations <= kPicardMaxIterations &&
                          fine.iterations <= kPicardMaxIterations && coarse.worst_ratio < 1.0 && fine.worst_ratio < 1.0;
  const double shrink = coarse.gap / fine.gap;
  return {contracted && coarse.gap <= kPicardGapTol && shrink >= kPicardShrink,
          "iterations " + std::to_string(coarse.iterations) + "/" + std::to_string(fine.iterations) + ", max ratio " +
              sci(std::max(coarse.worst_ratio, fine.worst_ratio)) + ", L2 gap " + sci(coarse.gap) + " -> " +
              sci(fine.gap) + " (shrink " + sci(shrink) + ")"};
}

Outcome counting_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t A = dist(rng);
    if (eisenstein_solution_count(A) != brute_force_solution_count(A)) ++mismatches;
  }

  bool tables_ok = true;
  std::string detail;
  std::vector<std::int64_t> cache;
  for (std::int64_t N : {8, 16, 32, 64, 128}) {
    const CountTable t = representation_counts(N);
    const bool sum_ok = t.total() == (2 * N + 1) * (2 * N + 1) * (2 * N + 1);
    bool sym_ok = true;
    bool dom_ok = true;
    for (const auto& e : t.entries) {
      sym_ok = sym_ok && t.count(-e.n, e.j) == e.count;
      const std::int64_t A = 6 * e.j - 2 * e.n * e.n;
      if (A < 0) {
        dom_ok = false;
        continue;
      }
      if (static_cast<std::size_t>(A) >= cache.size()) cache.resize(static_cast<std::size_t>(A) + 1, -1);
      auto& c = cache[static_cast<std::size_t>(A)];
      if (c < 0) c = eisenstein_solution_count(A);
      dom_ok = dom_ok && e.count <= c;
    }
    tables_ok = tables_ok && sum_ok && sym_ok && dom_ok;
    if (!(sum_ok && sym_ok && dom_ok)) detail += "table N=" + std::to_string(N) + " failed; ";
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && tables_ok && elapsed < kCountRuntimeLimit,
          detail + std::to_string(mismatches) + " Eisenstein/brute-force mismatches in 1000, tables N=8..128 checked, " +
              sci(elapsed) + " s"};
}

Outcome growth_and_chain() {
  const std::vector<std::int64_t> Ns{8, 16, 32, 64, 128};
  std::vector<std::int64_t> maxima;
  for (auto N : Ns) maxima.push_back(representation_counts(N).max_count);
  const GrowthFit fit = growth_fit(Ns, maxima);
  const bool trend_ok = std::isfinite(fit.c) && fit.residual_trend <= 0.0;

  // |f|_6^6 <= max r (sum |a|^2)^3 on S_N.
  bool chain_ok = true;
  const std::int64_t N = 16;
  const ParaboloidSection S = section_1d(N);
  const std::int64_t max_r = representation_counts(N).max_count;
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> a(S.points.size());
    double l2 = 0.0;
    for (auto& z : a) {
      z = {normal(rng), normal(rng)};
      l2 += std::norm(z);
    }
    chain_ok = chain_ok && std::pow(exp_sum_lp_norm(S.points, a, 6), 6) <= static_cast<double>(max_r) * l2 * l2 * l2;
  }
  const ParaboloidSection S1 = section_1d(1);
  const double small = std::pow(exp_sum_lp_norm(S1.points, std::vector<std::complex<double>>(3, 1.0), 6), 6);
  const std::int64_t r1 = representation_counts(1).max_count;
  chain_ok = chain_ok && small <= static_cast<double>(r1) * 27.0 && r1 == 6;

  std::string counts;
  for (auto m : maxima) counts += std::to_string(m) + " ";
  return {trend_ok && chain_ok, "max r = " + counts + "c = " + sci(fit.c) + ", residual trend " +
                                    sci(fit.residual_trend) + ", chain " + (chain_ok ? "holds" : "violated") +
                                    " (N=1: " + sci(small) + " <= 6*27)"};
}

Outcome exact_small_norms() {
  const auto S1 = section_1d(1).points;
  const std::vector<std::complex<double>> ones(3, 1.0);
  const double e4 = std::abs(exp_sum_lp_norm(S1, ones, 4) - std::pow(15.0, 0.25));
  const double e6 = std::abs(exp_sum_lp_norm(S1, ones, 6) - std::pow(93.0, 1.0 / 6.0));

  double quad = 0.0;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const auto S = section_1d(1 + trial).points;
    std::vector<std::complex<double>> a(S.size(), 1.0);
    if (trial > 0)
      for (auto& z : a) z = {normal(rng), normal(rng)};
    const TorusGrid g(2, 64);
    Spectrum s(g);
    for (std::size_t i = 0; i < S.size(); ++i)
      s.coeffs[g.index_of(Mode{static_cast<int>(S[i][0]), static_cast<int>(S[i][1]), 0})] = a[i];
    const Field f = inverse(s);
    for (int p : {4, 6}) {
      const double exact = exp_sum_lp_norm(S, a, p);
      quad = std::max(quad, std::abs(lebesgue_norm(p, f) - exact) / exact);
    }
  }
  return {e4 <= kExactNormTol && e6 <= kExactNormTol && quad <= kQuadratureTol,
          "|err| p=4 " + sci(e4) + ", p=6 " + sci(e6) + ", quadrature rel gap " + sci(quad)};
}

int lambda_index(const TimeWindow& win, double lambda) {
  return static_cast<int>(std::lround(lambda * win.length)) + win.samples / 2;
}

Outcome xsb_structure() {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  const TorusGrid g(2, 8);
  const TimeWindow win{4.0, 64, 0.25};
  std::uniform_int_distribution<int> kdist(0, win.samples - 1);
  std::uniform_int_distribution<std::size_t> xdist(0, g.point_count() - 1);
  bool partition_ok = true;
  bool triple_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    SpaceTimeSpectrum h(g, win);
    for (int i = 0; i < 1 + trial % 23; ++i) h.at(kdist(rng), xdist(rng)) = Complex(normal(rng), normal(rng));
    SpaceTimeSpectrum sum(g, win);
    for (const ShellIndex& shell : lattice_shells(h)) sum = sum + shell_restrict(h, shell);
    partition_ok = partition_ok && sum.coeffs == h.coeffs;
    const double s = 0.5 * (trial % 3);
    triple_ok = triple_ok && triple_norm(h, s) <= xsb_norm(h, s, 0.5);
  }

  // Cutoff scaling: running max over a family of atoms as T halves down to 2^-6.
  const TorusGrid g1(1, 8);
  const TimeWindow wide{8.0, 4096, 0.25};
  const double s = 1.0, b = 0.3, bp = 0.1;
  std::vector<SpaceTimeSpectrum> family;
  for (double mu : {0.0, 3.0, 20.0, -50.0}) {
    SpaceTimeSpectrum h(g1, wide);
    h.set_atom(lambda_index(wide, 1.0 + mu), g1.index_of(Mode{1, 0, 0}), 1.0);
    family.push_back(h);
  }
  std::vector<double> running;
  double best = 0.0;
  std::string sweep;
  for (int k = 1; k <= 6; ++k) {
    const double T = std::ldexp(1.0, -k);
    for (const auto& h : family) best = std::max(best, cutoff_scaling_ratio(h, T, s, b, bp));
    running.push_back(best);
    sweep += sci(best) + " ";
  }
  const double drift = running[5] / running[2] - 1.0;
  const bool cutoff_ok = drift <= kCutoffStability;

  const TorusGrid ga(1, 16);
  const TimeWindow unit{1.0, 64, 0.1};
  SpaceTimeSpectrum atom(ga, unit);
  atom.set_atom(lambda_index(unit, 9.0), ga.index_of(Mode{-3, 0, 0}), Complex(0.3, 0.4));
  const double atom_err = std::abs(l4_embedding_ratio(atom) - 1.0);

  return {partition_ok && triple_ok && cutoff_ok && atom_err <= kAtomTol,
          std::string("partition ") + (partition_ok ? "exact" : "broken") + ", triple <= X^{s,1/2} " +
              (triple_ok ? "on all 1000" : "violated") + ", running max ratio " + sweep + "(drift " + sci(drift) +
              "), atom |ratio-1| " + sci(atom_err)};
}

Outcome classifier_golden() {
  std::ifstream in(std::string(SDLAB_TEST_DATA) + "/classifier_golden.csv");
  if (!in) return {false, "golden table not found"};
  std::string line;
  std::getline(in, line);
  std::ostringstream produced;
  produced << line << '\n';
  const std::vector<int> ns{1, 2, 3, 4};
  const std::vector<std::pair<double, std::string>> alphas{{1, "1"}, {2, "2"}, {2.5, "2.5"}, {3, "3"},
                                                           {4, "4"}, {5, "5"}, {7, "7"}};
  const std::vector<std::pair<double, std::string>> ss{{0, "0"}, {0.25, "0.25"}, {0.5, "0.5"},
                                                       {1, "1"}, {1.5, "1.5"}, {2, "2"}};
  for (int n : ns)
    for (const auto& [a, as] : alphas)
      for (const auto& [s, sstr] : ss) {
        const Verdict v = classify_wellposedness(n, a, s);
        produced << n << ',' << as << ',' << sstr << ',' << to_string(v.kind) << ',' << v.theorem_tag << '\n';
      }
  std::ostringstream golden;
  golden << line << '\n' << in.rdbuf();
  int not_covered = 0;
  for (std::size_t pos = 0; (pos = golden.str().find("NotCovered", pos)) != std::string::npos; ++pos) ++not_covered;
  return {produced.str() == golden.str(),
          std::to_string(ns.size() * alphas.size() * ss.size()) + " verdicts, " + std::to_string(not_covered) +
              " NotCovered, " + (produced.str() == golden.str() ? "bit-exact" : "mismatch")};
}

Outcome exponent_flags() {
  int checked = 0;
  int wrong = 0;
  for (int n : {1, 2, 3, 4})
    for (double a : {1.0, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0}) {
      const AprioriExponents e = apriori_exponents(n, a);
      const double p = a + 2.0;
      const bool theta0 = n <= 3;
      const bool theta = n <= 2 || p * (n - 2) < 2.0 * n;
      wrong += e.theta0_below_one != theta0;
      wrong += e.theta_below_one != theta;
      if (n <= 2) wrong += !e.theta1_below_one;
      if (n == 3) wrong += e.theta1_below_one != (a < 3.0);
      checked += n <= 3 ? 3 : 2;
    }
  return {wrong == 0, std::to_string(checked) + " flags checked, " + std::to_string(wrong) + " disagreements"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"L2 conservation", l2_conservation},
      {"balance law convergence", balance_law},
      {"Picard vs split-step", picard_agreement},
      {"counting oracles", counting_oracles},
      {"growth fit and sixth-moment chain", growth_and_chain},
      {"exact small-case norms", exact_small_norms},
      {"X^{s,b} structure", xsb_structure},
      {"classifier golden table", classifier_golden},
      {"exponent flags", exponent_flags},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
