#pragma once

// Exponential sums over paraboloid sections and the lattice counts that bound them.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sdlab {

using LatticePoint = std::vector<std::int64_t>;

struct ParaboloidSection {
  int d = 2;  // ambient dimension; the section lives in Z^d
  std::int64_t N = 1;
  std::vector<LatticePoint> points;
};

/// {(n, n^2) : |n| <= N} in Z^2.
ParaboloidSection section_1d(std::int64_t N);
/// {(n_1..n_{d-1}, |n|^2) : |n_j| < N} in Z^d.
ParaboloidSection section(int d, std::int64_t N);

struct ConvolutionBudget {
  /// Maximum |S|^{p/2} for the exact coincidence evaluation.
  double max_terms = 1e8;
};

/// Exact ||sum_gamma a_gamma e^{2 pi i <x, gamma>}||_{L^p(T^d)} for even p, via
/// ||f||_p^p = ||f^{p/2}||_2^2 and a hashed (p/2)-fold convolution.
double exp_sum_lp_norm(const std::vector<LatticePoint>& support, const std::vector<std::complex<double>>& coeffs,
                       int p, const ConvolutionBudget& budget = {});

struct KpBound {
  double value = 0.0;  // max over candidates of ||f||_p / ||a||_2
  std::vector<std::complex<double>> best;
  std::string best_source;  // "ones", "random", or "ascent"
};

/// Lower bound on K_p(S) from a = 1, `trials` seeded random unit vectors, and a
/// nonlinear power-iteration ascent from the best of those.
KpBound kp_lower_bound(const ParaboloidSection& S, int p, int trials, std::uint64_t seed,
                       const ConvolutionBudget& budget = {});

struct CountEntry {
  std::int64_t n = 0;
  std::int64_t j = 0;
  std::int64_t count = 0;
};

/// r_{n,j} = #{(n1, n2, n3) : |n_i| <= N, n1+n2+n3 = n, n1^2+n2^2+n3^2 = j}.
struct CountTable {
  std::int64_t N = 0;
  std::vector<CountEntry> entries;  // sorted by (n, j), nonzero counts only
  std::int64_t max_count = 0;

  std::int64_t count(std::int64_t n, std::int64_t j) const;
  std::int64_t total() const;
};

inline constexpr std::int64_t kMaxCountCutoff = 256;

CountTable representation_counts(std::int64_t N);

/// Number of (X, Y) in Z^2 with X^2 + 3 Y^2 = A, from the factorization of A and
/// the splitting of rational primes in Z[rho]. A = 0 gives 1.
std::int64_t eisenstein_solution_count(std::int64_t A);
/// Direct scan over Y; the oracle of record.
std::int64_t brute_force_solution_count(std::int64_t A);

inline constexpr std::int64_t kMaxFactorable = 1'000'000'000'000;
inline constexpr std::int64_t kMaxBruteForce = 100'000'000;

struct GrowthFit {
  double c = 0.0;
  std::vector<std::int64_t> N;
  std::vector<std::int64_t> max_counts;
  std::vector<double> residuals;  // log max_count - c log N / log log N
  /// Least-squares slope of residuals against log N.
  double residual_trend = 0.0;
};

/// Fit log max_count = c log N / log log N through the origin. Needs >= 4 points, N >= 8.
GrowthFit growth_fit(const std::vector<std::int64_t>& N, const std::vector<std::int64_t>& max_counts);
std::string to_json(const GrowthFit& fit);

enum class AdmissibilityKind { ByTable, ByThreshold, Upgraded, Unknown };

struct AdmissibilityFact {
  int d = 0;
  double p = 0.0;
  std::string source;
};

struct AdmissibilityEvidence {
  std::vector<AdmissibilityFact> table;
  /// Smallest spatial dimension n = d - 1 for which p >= 2(n+4)/n is admissible.
  int threshold_min_spatial_dim = 4;
};

/// Facts from the literature: p = 4 for n = 2, 3, 4 and p = 6 on the 1-D parabola.
AdmissibilityEvidence default_admissibility_evidence();

struct AdmissibilityVerdict {
  AdmissibilityKind kind = AdmissibilityKind::Unknown;
  std::string rule;
};

AdmissibilityVerdict admissible_check(int d, double p, const AdmissibilityEvidence& evidence);
std::string to_string(AdmissibilityKind kind);

}  // namespace sdlab
