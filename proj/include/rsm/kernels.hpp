#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#ifdef RSM_HAVE_OPENMP
#include <omp.h>
#endif

namespace rsm::kernels {

// Subsets are visited as masks 0 .. 2^n - 1. The parallel versions split that
// range into fixed chunks, reduce each chunk in mask order and then combine the
// chunk partials in chunk order, so the grouping never depends on the thread
// count.
inline constexpr std::uint64_t kChunks = 64;

template <class T, class Weight>
T reduce_subsets_serial(unsigned n, const Weight& weight, T zero) {
  const std::uint64_t total = std::uint64_t{1} << n;
  T acc = zero;
  for (std::uint64_t mask = 0; mask < total; ++mask) acc += weight(static_cast<std::uint32_t>(mask));
  return acc;
}

template <class T, class Weight>
T reduce_subsets_parallel(unsigned n, const Weight& weight, T zero) {
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = total < kChunks ? 1 : kChunks;
  const std::uint64_t per = total / chunks;
  std::vector<T> partial(chunks, zero);
#ifdef RSM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    T acc = zero;
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * per;
    for (std::uint64_t mask = lo; mask < lo + per; ++mask) acc += weight(static_cast<std::uint32_t>(mask));
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  T acc = zero;
  for (auto& p : partial) acc += p;
  return acc;
}

// Counts integer points x in the box lo <= x <= hi (componentwise) that
// satisfy pred. The box is linearised row-major.
using BoxPredicate = std::function<bool(const std::vector<long>&)>;

std::uint64_t count_box_serial(const std::vector<long>& lo, const std::vector<long>& hi, const BoxPredicate& pred);
std::uint64_t count_box_parallel(const std::vector<long>& lo, const std::vector<long>& hi, const BoxPredicate& pred);

int max_threads();

}  // namespace rsm::kernels
