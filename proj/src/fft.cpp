#include "sdlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sdlab::fft {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& extents, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(extents, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int e : extents) total *= static_cast<std::size_t>(e);
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), scratch,
                                   scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, std::span<const int> extents,
               Direction dir) {
  std::vector<int> dims(extents.begin(), extents.end());
  std::size_t total = 1;
  for (int e : dims) total *= static_cast<std::size_t>(e);
  if (total != data.size()) throw std::invalid_argument("fft: size does not match extents");
  if (total == 0) return;
  fftw_plan plan = cache().get(dims, static_cast<int>(dir));
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

void half_shift(std::span<std::complex<double>> data, std::span<const int> extents,
                unsigned axis_mask) {
  const std::size_t rank = extents.size();
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t a = rank; a-- > 1;) stride[a - 1] = stride[a] * static_cast<std::size_t>(extents[a]);

  std::vector<std::complex<double>> out(data.size());
  std::vector<std::size_t> idx(rank, 0);
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t dest = 0;
    for (std::size_t a = 0; a < rank; ++a) {
      std::size_t i = idx[a];
      if (axis_mask & (1u << a)) {
        const auto len = static_cast<std::size_t>(extents[a]);
        i = (i + len / 2) % len;
      }
      dest += i * stride[a];
    }
    out[dest] = data[flat];
    for (std::size_t a = rank; a-- > 0;) {
      if (++idx[a] < static_cast<std::size_t>(extents[a])) break;
      idx[a] = 0;
    }
  }
  std::copy(out.begin(), out.end(), data.begin());
}

}  // namespace sdlab::fft
