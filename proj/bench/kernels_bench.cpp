// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "rsm/constructors.hpp"
#include "rsm/geometry.hpp"
#include "rsm/invariants.hpp"
#include "rsm/kernels.hpp"

using namespace rsm;

namespace {

Rsm random_rsm(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<long> r(0, static_cast<long>(n)), m(1, 9);
  std::vector<long> rank(std::size_t{1} << n);
  std::vector<Rational> mult(rank.size());
  for (std::size_t a = 0; a < rank.size(); ++a) {
    rank[a] = r(rng);
    mult[a] = m(rng);
  }
  return rsm_from_explicit(rank, mult, static_cast<long>(n));
}

void subset_sum_bench(benchmark::State& state, bool parallel) {
  const Rsm m = random_rsm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Poly z = subset_sum(
        m, [&](SubsetMask a) { return Poly::constant(m.mult(a)) * Poly::variable("q", -static_cast<int>(m.rank(a))); },
        parallel);
    benchmark::DoNotOptimize(z);
  }
  state.counters["threads"] = parallel ? kernels::max_threads() : 1;
}

void reduce_bench(benchmark::State& state, bool parallel) {
  const Rsm m = random_rsm(static_cast<std::size_t>(state.range(0)));
  const Rational t(3, 2);
  auto w = [&](std::uint32_t a) -> Rational { return m.mult(a) * pow_int(t, -m.rank(a)); };
  for (auto _ : state) {
    Rational s = parallel ? kernels::reduce_subsets_parallel(static_cast<unsigned>(m.size()), w, Rational(0))
                          : kernels::reduce_subsets_serial(static_cast<unsigned>(m.size()), w, Rational(0));
    benchmark::DoNotOptimize(s);
  }
}

void box_bench(benchmark::State& state, bool parallel) {
  const Zonotope z{3, {{1, 2, 0}, {0, 1, 2}, {2, 0, 1}, {1, 1, 1}}};
  for (auto _ : state) benchmark::DoNotOptimize(lattice_points_zonotope(z, state.range(0), parallel));
}

}  // namespace

BENCHMARK_CAPTURE(subset_sum_bench, serial, false)->Arg(10)->Arg(14);
BENCHMARK_CAPTURE(subset_sum_bench, parallel, true)->Arg(10)->Arg(14);
BENCHMARK_CAPTURE(reduce_bench, serial, false)->Arg(12)->Arg(16);
BENCHMARK_CAPTURE(reduce_bench, parallel, true)->Arg(12)->Arg(16);
BENCHMARK_CAPTURE(box_bench, serial, false)->Arg(2)->Arg(3);
BENCHMARK_CAPTURE(box_bench, parallel, true)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
