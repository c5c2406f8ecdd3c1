#include "rsm/kernels.hpp"

namespace rsm::kernels {

namespace {

std::uint64_t box_volume(const std::vector<long>& lo, const std::vector<long>& hi) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    total *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
  }
  return total;
}

void decode(std::uint64_t index, const std::vector<long>& lo, const std::vector<long>& hi, std::vector<long>& x) {
  for (std::size_t i = lo.size(); i-- > 0;) {
    const auto extent = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
    x[i] = lo[i] + static_cast<long>(index % extent);
    index /= extent;
  }
}

}  // namespace

std::uint64_t count_box_serial(const std::vector<long>& lo, const std::vector<long>& hi, const BoxPredicate& pred) {
  const std::uint64_t total = box_volume(lo, hi);
  std::vector<long> x(lo.size());
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    decode(i, lo, hi, x);
    if (pred(x)) ++count;
  }
  return count;
}

std::uint64_t count_box_parallel(const std::vector<long>& lo, const std::vector<long>& hi, const BoxPredicate& pred) {
  const std::uint64_t total = box_volume(lo, hi);
  std::uint64_t count = 0;
#ifdef RSM_HAVE_OPENMP
#pragma omp parallel reduction(+ : count)
#endif
  {
    std::vector<long> x(lo.size());
#ifdef RSM_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      decode(static_cast<std::uint64_t>(i), lo, hi, x);
      if (pred(x)) ++count;
    }
  }
  return count;
}

int max_threads() {
#ifdef RSM_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rsm::kernels
