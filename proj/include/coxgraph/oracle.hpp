#pragma once

#include <vector>

#include "coxgraph/affine.hpp"
#include "coxgraph/cycshift.hpp"
#include "coxgraph/graph.hpp"

namespace coxgraph {

// 2 * max l(w_0(K)) over spherical K.
int default_oracle_budget(const CoxeterSystem& sys);

struct OracleGraph {
  int min_length = 0;
  std::vector<std::vector<TwistedElement>> classes;  // cyclic shift classes, each ShortLex sorted
  ConjGraph graph;  // vertex i: class i; subset = support, representative = ShortLex-least element
  // Certificate per edge: an element of the lower class and the subset K.
  std::vector<std::pair<TwistedElement, Subset>> witnesses;

  // Index of the class containing v, or -1.
  int class_of(const TwistedElement& v) const;
};

// Brute-force structural conjugation graph from conjugates of length <= l_min + budget.
OracleGraph bfs_structural_oracle(const TwistedElement& w, int budget = -1, std::size_t cap = 3000000);
OracleGraph bfs_structural_oracle(const Element& w, int budget = -1, std::size_t cap = 3000000);

struct FiniteClassReport {
  std::vector<TwistedElement> members;  // whole twisted conjugacy class
  OracleGraph structure;                // shift classes of the minimal stratum and K-conjugation edges
};

// All twisted conjugacy classes of the finite group W_K (delta must preserve K).
std::vector<FiniteClassReport> finite_conjugacy_oracle(const CoxeterSystem& sys, Subset K, const Perm& delta,
                                                       std::size_t cap = 200000);

// Compares a pipeline graph whose vertices carry representatives with an oracle graph.
struct GraphMatch {
  bool ok = false;
  std::string reason;
};
GraphMatch match_graphs(const ConjGraph& pipeline, const OracleGraph& oracle, const Perm& twist = {});

// For each edge of g, a spherical K realizing a K-conjugation between the cyclic shift classes of the
// end representatives (0 if there is none).
std::vector<Subset> edge_witnesses(const ConjGraph& g, const CoxeterSystem& sys);

// Generators of Xi_eta from the action of the coroot translations of W on S^eta, reduced by descents
// in W^eta, as permutations of S^eta.
std::vector<Perm> xi_eta_oracle(const TransversalSystem& T);

}  // namespace coxgraph
