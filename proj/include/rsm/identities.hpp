#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rsm/expectation.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

enum class IdentityKind { Expectation, Pure };

enum class ParamKind {
  Scalar,             // one nonzero rational
  ElementVector,      // one nonzero rational per root label
  SubsetTable,        // one nonzero rational per subset of the ground set
  PositiveIntVector,  // k_e in 1..3 per root label
};

struct ParamSpec {
  std::string name;
  ParamKind kind;
};

struct Params {
  std::map<std::string, Rational> scalar;
  std::map<std::string, std::vector<Rational>> vector;  // by root label
  std::map<std::string, std::vector<Rational>> table;   // by mask
  std::map<std::string, std::vector<long>> ints;        // by root label

  const Rational& s(const std::string& name) const;
  const std::vector<Rational>& v(const std::string& name) const;
  const std::vector<Rational>& tab(const std::string& name) const;
  const std::vector<long>& k(const std::string& name) const;
};

using Values = std::vector<Rational>;

// One closed-form value and the left-hand component it must equal.
struct Target {
  std::size_t lhs = 0;
  Rational value;
};

struct IdentityRecord {
  std::string id;
  IdentityKind kind = IdentityKind::Expectation;
  Model model = Model::Restriction;
  std::vector<ParamSpec> params;
  // Pure identities that still take a probability vector.
  bool uses_probabilities = false;
  std::function<bool(const Rsm&)> applicable;
  // Restricts the probability vectors the closed form is stated for; null means all.
  std::function<bool(const Rsm&, const ProbabilityAssignment&)> admits;
  // Names the excluded value and the branch that covers the rest; shown with PoleError.
  std::string pole_note;
  // Expectation identities: functional of the random minor, averaged by brute force.
  // Arguments: the rsm, the random minor, the point.
  std::function<Values(const Rsm&, const Rsm&, const Params&)> inner;
  // Pure identities: left-hand side evaluated directly.
  std::function<Values(const Rsm&, const ProbabilityAssignment&, const Params&)> lhs;
  std::function<std::vector<Target>(const Rsm&, const ProbabilityAssignment&, const Params&)> rhs;
};

const std::vector<IdentityRecord>& identity_registry();
/// InputError for an unknown id.
const IdentityRecord& find_identity(std::string_view id);

/// Left-hand components: brute-force expectation or the direct sum.
Values evaluate_lhs(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params);

/// First closed-form value of the identity. PreconditionError when the
/// identity does not apply to m or p; PoleError at a pole.
Rational closed_form(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params);

struct PointOutcome {
  bool pass = false;
  std::string detail;
};

/// lhs against every target at one point; poles propagate as PoleError.
PointOutcome check_point(const IdentityRecord& rec, const Rsm& m, const ProbabilityAssignment& p, const Params& params);

struct ReportLine {
  bool pass = false;
  std::string id;
  std::string instance;
  std::size_t index = 0;
  std::string detail;
};

struct NamedProbability {
  std::string name;
  ProbabilityAssignment p;
};

/// The probability vectors tried for one trial, in schedule order. Vectors are
/// indexed by root label. Random entries come from rng.
std::vector<NamedProbability> probability_schedule(const IdentityRecord& rec, const Rsm& m, std::mt19937_64& rng);

/// Random parameter values for one point.
Params sample_params(const IdentityRecord& rec, const Rsm& m, std::mt19937_64& rng);

std::uint64_t derive_seed(std::string_view id, std::string_view instance, std::uint64_t base);

/// Checks rec on m at `trials` random points per probability vector. Point
/// index = schedule position * trials + trial. Inapplicable pairs give no lines.
std::vector<ReportLine> verify_identity(const IdentityRecord& rec, const std::string& instance, const Rsm& m,
                                        std::size_t trials, std::uint64_t seed);

struct NamedRsm {
  std::string name;
  Rsm rsm;
};

/// Every (identity, instance) pair, sorted by (id, instance, index).
std::vector<ReportLine> verify_all(const std::vector<const IdentityRecord*>& ids, const std::vector<NamedRsm>& corpus,
                                   std::size_t trials, std::uint64_t seed);

std::string format_line(const ReportLine& line);

}  // namespace rsm
