#include "rsm/expectation.hpp"

#include <cmath>
#include <random>
#include <string>
#include <unordered_map>

#include "rsm/kernels.hpp"

namespace rsm {

Model parse_model(std::string_view name) {
  if (name == "restriction") return Model::Restriction;
  if (name == "contraction") return Model::Contraction;
  throw InputError("unknown model '" + std::string(name) + "' (expected restriction or contraction)");
}

Rational subset_probability(const Rsm& m, const ProbabilityAssignment& p, SubsetMask a) {
  Rational out(1);
  for (std::size_t e = 0; e < m.size(); ++e) {
    const std::size_t label = m.labels()[e];
    if (label >= p.size()) throw InputError("missing probability for element " + std::to_string(label));
    if (contains(a, e)) {
      out *= p[label];
    } else {
      out *= 1 - p[label];
    }
  }
  return out;
}

Rsm random_minor(const Rsm& m, Model model, SubsetMask a) {
  return model == Model::Restriction ? m.restriction(a) : m.contraction(a);
}

namespace {

void check_small(const Rsm& m) {
  if (m.size() > kMaxMaterialize) throw PreconditionError("brute-force expectation is limited to 20 elements");
}

}  // namespace

Poly brute_force_expectation(const Rsm& m, Model model, const std::function<Poly(const Rsm&)>& f,
                             const ProbabilityAssignment& p) {
  check_small(m);
  return subset_sum(m, [&](SubsetMask a) {
    const Rational w = subset_probability(m, p, a);
    if (w == 0) return Poly();
    return f(random_minor(m, model, a)) * w;
  });
}

Rational expectation_value(const Rsm& m, Model model, const std::function<Rational(const Rsm&)>& f,
                           const ProbabilityAssignment& p) {
  check_small(m);
  return kernels::reduce_subsets_serial(
      static_cast<unsigned>(m.size()),
      [&](SubsetMask a) -> Rational {
        const Rational w = subset_probability(m, p, a);
        if (w == 0) return Rational(0);
        return w * f(random_minor(m, model, a));
      },
      Rational(0));
}

std::vector<Rational> expectation_values(const Rsm& m, Model model,
                                         const std::function<std::vector<Rational>(const Rsm&)>& f,
                                         const ProbabilityAssignment& p) {
  check_small(m);
  std::vector<Rational> total;
  const std::uint64_t count = std::uint64_t{1} << m.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    const auto a = static_cast<SubsetMask>(s);
    const Rational w = subset_probability(m, p, a);
    if (w == 0) continue;
    const auto values = f(random_minor(m, model, a));
    if (total.empty()) total.assign(values.size(), Rational(0));
    if (values.size() != total.size()) throw InputError("functional changed its arity");
    for (std::size_t i = 0; i < values.size(); ++i) total[i] += w * values[i];
  }
  if (total.empty()) total = std::vector<Rational>(f(m).size(), Rational(0));
  return total;
}

SampleReport monte_carlo(const Rsm& m, Model model, const std::function<Rational(const Rsm&)>& f,
                         const std::vector<double>& p, std::uint64_t n, std::uint64_t seed) {
  std::vector<double> local;
  for (std::size_t label : m.labels()) {
    if (label >= p.size()) throw InputError("missing probability for element " + std::to_string(label));
    if (!(p[label] >= 0.0 && p[label] <= 1.0)) throw InputError("probabilities must lie in [0, 1]");
    local.push_back(p[label]);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::unordered_map<SubsetMask, double> cache;
  double mean = 0, m2 = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    SubsetMask a = 0;
    for (std::size_t e = 0; e < local.size(); ++e)
      if (unit(rng) < local[e]) a |= SubsetMask{1} << e;
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, f(random_minor(m, model, a)).get_d()).first;
    // Welford update.
    const double x = it->second;
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  SampleReport r;
  r.estimate = mean;
  r.n = n;
  r.seed = seed;
  r.stderr_ = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return r;
}

}  // namespace rsm
