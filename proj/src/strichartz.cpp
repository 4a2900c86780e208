#include "sdlab/strichartz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "sdlab/errors.hpp"

namespace sdlab {

ParaboloidSection section_1d(std::int64_t N) {
  if (N < 0) throw InvalidArgument("section cutoff must be non-negative");
  ParaboloidSection s{2, N, {}};
  for (std::int64_t n = -N; n <= N; ++n) s.points.push_back({n, n * n});
  return s;
}

ParaboloidSection section(int d, std::int64_t N) {
  if (d < 2) throw InvalidArgument("paraboloid sections need d >= 2");
  if (N < 1) throw InvalidArgument("section cutoff must be >= 1");
  ParaboloidSection s{d, N, {}};
  const int free_dims = d - 1;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(free_dims), -(N - 1));
  while (true) {
    LatticePoint pt(idx.begin(), idx.end());
    std::int64_t norm2 = 0;
    for (auto c : idx) norm2 += c * c;
    pt.push_back(norm2);
    s.points.push_back(std::move(pt));
    int a = free_dims - 1;
    while (a >= 0 && idx[static_cast<std::size_t>(a)] == N - 1) idx[static_cast<std::size_t>(a--)] = -(N - 1);
    if (a < 0) break;
    ++idx[static_cast<std::size_t>(a)];
  }
  return s;
}

namespace {

using Coeffs = std::vector<std::complex<double>>;

// Mixed-radix packing of lattice points whose coordinates lie in [-bound_i, bound_i].
class Packer {
 public:
  explicit Packer(std::vector<std::int64_t> bounds) : bounds_(std::move(bounds)), stride_(bounds_.size()) {
    long double span = 1;
    std::int64_t acc = 1;
    for (std::size_t i = bounds_.size(); i-- > 0;) {
      stride_[i] = acc;
      const std::int64_t radix = 2 * bounds_[i] + 1;
      span *= static_cast<long double>(radix);
      if (span > static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 4))
        throw BudgetExceeded("lattice key range does not fit in 64 bits");
      acc *= radix;
    }
    size_ = acc;
  }

  std::int64_t pack(const LatticePoint& pt) const {
    std::int64_t key = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) key += (pt[i] + bounds_[i]) * stride_[i];
    return key;
  }
  /// Key offset of a point relative to the origin (keys are additive).
  std::int64_t offset(const LatticePoint& pt) const {
    std::int64_t key = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) key += pt[i] * stride_[i];
    return key;
  }
  std::int64_t size() const { return size_; }

 private:
  std::vector<std::int64_t> bounds_;
  std::vector<std::int64_t> stride_;
  std::int64_t size_ = 1;
};

// Sparse polynomial in e^{2 pi i <x, gamma>} with packed exponents.
using SparsePoly = std::unordered_map<std::int64_t, std::complex<double>>;

// f^power as a map from packed exponent to coefficient.
SparsePoly power_coefficients(const std::vector<LatticePoint>& support, const Coeffs& coeffs, int power,
                              const Packer& packer) {
  SparsePoly acc;
  LatticePoint zero(support.front().size(), 0);
  acc[packer.pack(zero)] = 1.0;
  std::vector<std::int64_t> offsets;
  offsets.reserve(support.size());
  for (const auto& pt : support) offsets.push_back(packer.offset(pt));
  for (int r = 0; r < power; ++r) {
    SparsePoly next;
    next.reserve(acc.size() * std::min<std::size_t>(support.size(), 64));
    for (const auto& [key, c] : acc)
      for (std::size_t i = 0; i < support.size(); ++i)
        if (coeffs[i] != 0.0) next[key + offsets[i]] += c * coeffs[i];
    acc = std::move(next);
  }
  return acc;
}

Packer make_packer(const std::vector<LatticePoint>& support, int power) {
  std::vector<std::int64_t> bounds(support.front().size(), 0);
  for (const auto& pt : support)
    for (std::size_t i = 0; i < pt.size(); ++i) bounds[i] = std::max(bounds[i], std::abs(pt[i]));
  for (auto& b : bounds) b *= std::max(power, 1);
  return Packer(bounds);
}

void check_support(const std::vector<LatticePoint>& support, const Coeffs& coeffs, int p,
                   const ConvolutionBudget& budget) {
  if (p < 2 || p % 2 != 0) throw InvalidArgument("exact exponential-sum norms need an even exponent");
  if (support.empty()) throw InvalidArgument("empty frequency set");
  if (support.size() != coeffs.size()) throw InvalidArgument("coefficient count does not match the support");
  for (const auto& pt : support)
    if (pt.size() != support.front().size()) throw InvalidArgument("lattice points of mixed dimension");
  if (std::pow(static_cast<double>(support.size()), p / 2) > budget.max_terms)
    throw BudgetExceeded("(p/2)-fold convolution exceeds the term budget");
}

double l2_sum(const SparsePoly& poly) {
  double acc = 0.0;
  for (const auto& [key, c] : poly) acc += std::norm(c);
  return acc;
}

std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

double coefficient_norm(const Coeffs& a) {
  double acc = 0.0;
  for (const auto& z : a) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace

double exp_sum_lp_norm(const std::vector<LatticePoint>& support, const Coeffs& coeffs, int p,
                       const ConvolutionBudget& budget) {
  check_support(support, coeffs, p, budget);
  const int q = p / 2;
  const Packer packer = make_packer(support, q);
  return std::pow(l2_sum(power_coefficients(support, coeffs, q, packer)), 1.0 / p);
}

KpBound kp_lower_bound(const ParaboloidSection& S, int p, int trials, std::uint64_t seed,
                       const ConvolutionBudget& budget) {
  const std::size_t size = S.points.size();
  Coeffs ones(size, 1.0);
  check_support(S.points, ones, p, budget);
  if (trials < 0) throw InvalidArgument("trial count must be non-negative");
  const int q = p / 2;
  const Packer packer = make_packer(S.points, q);

  auto ratio = [&](const Coeffs& a) {
    return std::pow(l2_sum(power_coefficients(S.points, a, q, packer)), 1.0 / p) / coefficient_norm(a);
  };

  KpBound best{ratio(ones), ones, "ones"};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Coeffs a(size);
    for (auto& z : a) z = {normal(rng), normal(rng)};
    const double norm = coefficient_norm(a);
    for (auto& z : a) z /= norm;
    const double r = ratio(a);
    if (r > best.value) best = {r, a, "random"};
  }

  // Power iteration a <- P_S(|f|^{p-2} f) / norm, monotone for the convex L^p norm.
  if (p > 2 && size > 1) {
    Coeffs a = best.best;
    std::vector<std::int64_t> offsets;
    for (const auto& pt : S.points) offsets.push_back(packer.offset(pt));
    for (int iter = 0; iter < 200; ++iter) {
      const SparsePoly fq = power_coefficients(S.points, a, q, packer);
      const SparsePoly fq1 = power_coefficients(S.points, a, q - 1, packer);
      Coeffs grad(size, 0.0);
      for (std::size_t i = 0; i < size; ++i)
        for (const auto& [key, c] : fq) {
          auto it = fq1.find(key - offsets[i]);
          if (it != fq1.end()) grad[i] += c * std::conj(it->second);
        }
      const double norm = coefficient_norm(grad);
      if (norm == 0.0) break;
      for (auto& z : grad) z /= norm;
      const double r = ratio(grad);
      const bool improved = r > best.value * (1.0 + 1e-14);
      if (r > best.value) best = {r, grad, "ascent"};
      a = std::move(grad);
      if (!improved) break;
    }
  }
  return best;
}

std::int64_t CountTable::count(std::int64_t n, std::int64_t j) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(n, j),
                             [](const CountEntry& e, const std::pair<std::int64_t, std::int64_t>& key) {
                               return std::make_pair(e.n, e.j) < key;
                             });
  if (it != entries.end() && it->n == n && it->j == j) return it->count;
  return 0;
}

std::int64_t CountTable::total() const {
  std::int64_t acc = 0;
  for (const auto& e : entries) acc += e.count;
  return acc;
}

CountTable representation_counts(std::int64_t N) {
  if (N < 0) throw InvalidArgument("count cutoff must be non-negative");
  if (N > kMaxCountCutoff) throw BudgetExceeded("representation counts are limited to N <= 256");
  CountTable table;
  table.N = N;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(3 * N * N + 1), 0);
  std::vector<std::int64_t> touched;
  for (std::int64_t n = -3 * N; n <= 3 * N; ++n) {
    for (std::int64_t n1 = -N; n1 <= N; ++n1) {
      const std::int64_t lo = std::max(-N, n - n1 - N);
      const std::int64_t hi = std::min(N, n - n1 + N);
      for (std::int64_t n2 = lo; n2 <= hi; ++n2) {
        const std::int64_t n3 = n - n1 - n2;
        const auto j = static_cast<std::size_t>(n1 * n1 + n2 * n2 + n3 * n3);
        if (counts[j]++ == 0) touched.push_back(static_cast<std::int64_t>(j));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      auto& c = counts[static_cast<std::size_t>(j)];
      table.entries.push_back({n, j, c});
      table.max_count = std::max(table.max_count, c);
      c = 0;
    }
    touched.clear();
  }
  return table;
}

std::int64_t brute_force_solution_count(std::int64_t A) {
  if (A < 0) throw InvalidArgument("X^2 + 3Y^2 = A needs A >= 0");
  if (A > kMaxBruteForce) throw BudgetExceeded("brute-force scan limited to A <= 1e8");
  std::int64_t count = 0;
  for (std::int64_t y = 0; 3 * y * y <= A; ++y) {
    const std::int64_t r = A - 3 * y * y;
    auto x = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r)));
    while (x * x > r) --x;
    while ((x + 1) * (x + 1) <= r) ++x;
    if (x * x == r) count += (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
  }
  return count;
}

std::int64_t eisenstein_solution_count(std::int64_t A) {
  if (A < 0) throw InvalidArgument("X^2 + 3Y^2 = A needs A >= 0");
  if (A == 0) return 1;
  if (A > kMaxFactorable) {
    if (A <= kMaxBruteForce) return brute_force_solution_count(A);
    throw Unfactored("A exceeds the trial-division factorization budget");
  }

  // 2 is inert in Z[rho]; elements of norm divisible by 4 are divisible by 2, and
  // exactly one third of the unit multiples of any other element lie in Z[sqrt(-3)].
  int v2 = 0;
  while (A % 2 == 0) {
    A /= 2;
    ++v2;
  }
  if (v2 % 2 == 1) return 0;
  std::int64_t units = v2 == 0 ? 2 : 6;

  // sum_{d | A} chi_{-3}(d) over the odd part.
  std::int64_t divisor_sum = 1;
  for (std::int64_t prime = 3; prime * prime <= A; prime += 2) {
    if (A % prime != 0) continue;
    int e = 0;
    while (A % prime == 0) {
      A /= prime;
      ++e;
    }
    if (prime == 3) continue;
    if (prime % 3 == 1) divisor_sum *= (e + 1);
    else if (e % 2 == 1) return 0;
  }
  if (A > 1) {
    if (A % 3 == 1) divisor_sum *= 2;
    else if (A % 3 == 2) return 0;
  }
  return units * divisor_sum;
}

GrowthFit growth_fit(const std::vector<std::int64_t>& N, const std::vector<std::int64_t>& max_counts) {
  if (N.size() != max_counts.size()) throw InvalidArgument("growth fit inputs differ in length");
  if (N.size() < 4) throw InvalidArgument("growth fit needs at least 4 sweep points");
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (N[i] < 8) throw InvalidArgument("growth fit needs N >= 8");
    if (max_counts[i] < 1) throw InvalidArgument("growth fit needs positive counts");
  }
  GrowthFit fit;
  fit.N = N;
  fit.max_counts = max_counts;
  std::vector<double> x(N.size());
  std::vector<double> y(N.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double logn = std::log(static_cast<double>(N[i]));
    x[i] = logn / std::log(logn);
    y[i] = std::log(static_cast<double>(max_counts[i]));
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  fit.c = sxy / sxx;

  double mean_l = 0.0;
  double mean_r = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    fit.residuals.push_back(y[i] - fit.c * x[i]);
    mean_l += std::log(static_cast<double>(N[i]));
    mean_r += fit.residuals.back();
  }
  mean_l /= static_cast<double>(N.size());
  mean_r /= static_cast<double>(N.size());
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double dl = std::log(static_cast<double>(N[i])) - mean_l;
    cov += dl * (fit.residuals[i] - mean_r);
    var += dl * dl;
  }
  fit.residual_trend = var > 0.0 ? cov / var : 0.0;
  return fit;
}

std::string to_json(const GrowthFit& fit) {
  nlohmann::ordered_json j;
  j["N"] = fit.N;
  j["max_counts"] = fit.max_counts;
  j["c"] = fit.c;
  j["residuals"] = fit.residuals;
  j["residual_trend"] = fit.residual_trend;
  return j.dump(2);
}

AdmissibilityEvidence default_admissibility_evidence() {
  AdmissibilityEvidence ev;
  ev.table = {
      {2, 6.0, "K_6(S_N) < exp(c log N / log log N)"},
      {3, 4.0, "K_4(S_{3,N}) << N^eps (n = 2)"},
      {4, 4.0, "K_4(S_{4,N}) << N^{1/4+eps} (n = 3)"},
      {5, 4.0, "K_4(S_{5,N}) << N^{1/2+eps} (n = 4)"},
  };
  ev.threshold_min_spatial_dim = 4;
  return ev;
}

AdmissibilityVerdict admissible_check(int d, double p, const AdmissibilityEvidence& evidence) {
  if (d < 2) throw InvalidArgument("admissibility is defined for d >= 2");
  const double p0 = 2.0 * (d + 1) / (d - 1);
  if (p < p0) return {AdmissibilityKind::Unknown, "p below 2(d+1)/(d-1)"};

  const int n = d - 1;
  if (n >= evidence.threshold_min_spatial_dim && p >= 2.0 * (n + 4) / n)
    return {AdmissibilityKind::ByThreshold, "n >= 4 and p >= 2(n+4)/n"};

  for (const auto& fact : evidence.table)
    if (fact.d == d && fact.p == p) return {AdmissibilityKind::ByTable, fact.source};

  const AdmissibilityFact* base = nullptr;
  for (const auto& fact : evidence.table)
    if (fact.d == d && fact.p >= p0 && fact.p < p && (base == nullptr || fact.p < base->p)) base = &fact;
  if (base != nullptr)
    return {AdmissibilityKind::Upgraded, "upgrade from admissible p1 = " + shortest(base->p) + ": " + base->source};

  return {AdmissibilityKind::Unknown, "no recorded estimate"};
}

std::string to_string(AdmissibilityKind kind) {
  switch (kind) {
    case AdmissibilityKind::ByTable: return "admissible-by-table";
    case AdmissibilityKind::ByThreshold: return "admissible-by-threshold";
    case AdmissibilityKind::Upgraded: return "upgraded";
    case AdmissibilityKind::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace sdlab
