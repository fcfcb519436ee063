#pragma once

#include <vector>

#include "coxgraph/cycshift.hpp"
#include "coxgraph/graph.hpp"

namespace coxgraph {

// Largest spherical I with w normalizing W_I; requires Pc(w) = W.
Subset msn(const Element& w);

struct Standardized {
  Element v;          // x^-1 * w * x, first element of Cyc(w) with maximal msn
  Element conjugator; // x
  Subset I = 0;       // msn(v)
};
// Requires w cyclically reduced with Pc(w) = W.
Standardized mn(const Element& w);

struct RootDecomp {
  int n = 1;
  Element x;  // w = x^n with l(w) = n l(x)
};
// Maximal n with such a decomposition.
RootDecomp root_decomp(const Element& w);

// Checks that w = a x^n is the core splitting of a standard w with P_w^max = W_I.
bool is_core_splitting(const Element& w, Subset I, int n, const Element& a, const Element& x);

struct CoreSplitting {
  Element a;            // w = a * core^n
  Element core;
  int n = 1;
  Element standardizer; // x with v = x^-1 w x standard
  Subset I = 0;         // P_v^max = W_I
  Element std_a;        // v = std_a * std_core^n, std_a in W_I
  Element std_core;     // minimal in W_I std_core
};
// Requires w cyclically reduced with Pc(w) = W.
CoreSplitting core_splitting(const Element& w);

struct DeltaIwIndef {
  Subset I = 0;
  Perm delta;  // on S, identity outside I
  Subset I_w = 0;
  NormalizerSplit split;
};
// v standard: cyclically reduced with P_v^max = W_I for I = msn(v).
DeltaIwIndef delta_and_Iw_indefinite(const Element& v);

// Centraliser degree of a standard element.
int centraliser_degree(const Element& v);

struct IndefiniteGraphReport {
  Element reduced;          // cyclically reduced input
  Standardized standard;
  CoreSplitting core;       // of the standardized element
  DeltaIwIndef dw;
  Perm core_delta;          // delta_{w_c} on S
  int n_w = 1;
  std::vector<Perm> xi_w;   // all elements of Xi_w
  ConjGraph component;      // K^0_{delta_w}(I_w) in W_I
  ConjGraph graph;          // quotient by Xi_w with representatives
  ConjGraph tight;          // spherical-path closure, quotient by Xi_w
};
// Requires Pc(w) = W for W irreducible of indefinite type.
IndefiniteGraphReport structural_graph_indefinite(const Element& w);

}  // namespace coxgraph
