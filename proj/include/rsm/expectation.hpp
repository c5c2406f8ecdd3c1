#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "rsm/polynomial.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

enum class Model { Restriction, Contraction };

Model parse_model(std::string_view name);

// One probability per element, indexed by root label.
using ProbabilityAssignment = std::vector<Rational>;

/// Pr(E_p = A) = p^A (1 - p)^{E \ A}, with p pulled through the labels of m.
Rational subset_probability(const Rsm& m, const ProbabilityAssignment& p, SubsetMask a);

/// The random minor M|A or M/A.
Rsm random_minor(const Rsm& m, Model model, SubsetMask a);

/// sum_A f(M|A or M/A) Pr(E_p = A), exactly. n <= 20.
Poly brute_force_expectation(const Rsm& m, Model model, const std::function<Poly(const Rsm&)>& f,
                             const ProbabilityAssignment& p);

/// Same, for functionals with values in Q (or Q^k).
Rational expectation_value(const Rsm& m, Model model, const std::function<Rational(const Rsm&)>& f,
                           const ProbabilityAssignment& p);
std::vector<Rational> expectation_values(const Rsm& m, Model model,
                                         const std::function<std::vector<Rational>(const Rsm&)>& f,
                                         const ProbabilityAssignment& p);

struct SampleReport {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

/// i.i.d. Bernoulli(p_e) subsets; f is evaluated once per distinct subset.
SampleReport monte_carlo(const Rsm& m, Model model, const std::function<Rational(const Rsm&)>& f,
                         const std::vector<double>& p, std::uint64_t n, std::uint64_t seed);

}  // namespace rsm
