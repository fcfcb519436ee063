#pragma once

#include <optional>
#include <vector>

#include "coxgraph/cycshift.hpp"
#include "coxgraph/graph.hpp"

namespace coxgraph::detail {

std::vector<Subset> spherical_subsets(const CoxeterSystem& sys);

// Path of edges from base to every vertex of g by breadth-first search.
struct BfsTree {
  std::vector<int> parent;  // -1 for the base, -2 if unreachable
  std::vector<Subset> label;
  std::vector<int> order;
};
BfsTree bfs_tree(const ConjGraph& g, int base);

// Shift-link between two cyclic shift classes through one K-conjugation.
std::optional<std::vector<CertStep>> link(const CycClass& from, const CycClass& to,
                                          const std::vector<Subset>& spherical);

}  // namespace coxgraph::detail
