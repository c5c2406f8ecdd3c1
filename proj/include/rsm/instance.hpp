#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsm/expectation.hpp"
#include "rsm/rsm.hpp"

namespace rsm {

// An instance file: representation, multiplicity, optional probabilities.
//
//   {"name": "k3",
//    "representation": {"kind": "graph", "vertices": 3, "edges": [[0,1],[1,2],[0,2]]},
//    "multiplicity": {"kind": "trivial"},
//    "probabilities": ["1/2", "1/2", "1/2"]}
//
// Representation kinds: graph, vectors {dimension, vectors}, abelian
// {free_rank, torsion, elements}, explicit {size, rank, ambient_rank?}.
// Multiplicity kinds: trivial, arithmetic, lie_group {a, b, finite},
// explicit {table}. Subset tables are objects keyed by comma-joined sorted
// element indices, "" for the empty set. Rationals may be numbers or
// "num/den" strings.
struct Instance {
  std::string name;
  Rsm rsm;
  std::optional<ProbabilityAssignment> probabilities;
};

Instance parse_instance_text(std::string_view text, std::string_view origin);
Instance parse_instance(const std::filesystem::path& path);

/// Every *.json in dir, sorted by file name.
std::vector<Instance> load_corpus(const std::filesystem::path& dir);

std::string subset_key(SubsetMask a, std::size_t n);
SubsetMask parse_subset_key(std::string_view key, std::size_t n);

}  // namespace rsm
