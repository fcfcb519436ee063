#pragma once

#include <optional>
#include <vector>

#include "coxgraph/cycshift.hpp"
#include "coxgraph/graph.hpp"

namespace coxgraph {

// delta-invariant spherical subsets K containing I.
std::vector<Subset> invariant_spherical_supersets(const CoxeterSystem& sys, const Perm& delta, Subset I);

// Connected component of I0 in the graph of delta-invariant spherical subsets under K-conjugation.
ConjGraph kdelta_component(const CoxeterSystem& sys, const Perm& delta, Subset I0,
                           std::size_t cap = 200000);

struct DeodharStep {
  Subset from = 0;  // J_{i-1}
  Subset to = 0;    // J_i
  int s = -1;
  Element nu;       // w_0(J_{i-1} u T_i) w_0(J_{i-1})
};

// Factorization w = nu_k ... nu_1 of w with w Pi_J = Pi_K.
std::vector<DeodharStep> deodhar_path(const CoxeterSystem& sys, const Perm& delta, Subset J, Subset K,
                                      const Element& w);

// Cyclically reduced conjugate elements of finite order share a shift class iff they share support.
bool same_cyc_class_finite(const TwistedElement& u, const TwistedElement& v);

// Structural conjugation graph of a cyclically reduced element of finite order.
ConjGraph finite_structural_graph(const TwistedElement& w);
ConjGraph finite_structural_graph(const Element& w);

// x in W_K with x^-1 u delta(x) = v, if any.
std::optional<Element> twisted_conjugate_bruteforce(const Element& u, const Element& v, const Perm& delta,
                                                    Subset K);

// Conjugacy test for cyclically reduced finite-order twisted elements; returns x with x^-1 v x in Cyc(u).
std::optional<Element> finite_order_conjugator(const TwistedElement& u, const TwistedElement& v,
                                               std::size_t cap = 200000);

}  // namespace coxgraph
