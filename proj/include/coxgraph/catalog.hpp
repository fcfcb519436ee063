#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coxgraph/element.hpp"

namespace coxgraph {

// Published shape of a structural graph; negative fields are not checked.
struct ExpectedShape {
  int vertices = -1;
  int edges = -1;
  int diameter = -1;
  int complete = -1;        // 0 or 1
  int tight_complete = -1;  // 0 or 1
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::function<SystemPtr()> system;
  std::function<Element(const CoxeterSystem&)> element;
  ExpectedShape expected;
};

// Built-in examples, in a fixed order.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_example(const std::string& name);

// Named constructions shared by the catalog and the acceptance checks.
Element d7_translation(const CoxeterSystem& d7);           // s0 r_theta in D7^(1)
Element e7_normalizer(const CoxeterSystem& e7);            // s0 w0(s1..s5) w0(s2..s7) s7 in E7^(1)
Element big_diameter_element(const CoxeterSystem& a, int n);  // in A_{4n+1}^(1)
SystemPtr bipartite_system();  // s1, s2 commuting, each joined to s3, s4, s5 by label 3
Element bipartite_core(const CoxeterSystem& sys);
SystemPtr twin_d4_system();    // chain a-b-c with d, e on b, m(d, e) = inf
Element twin_d4_core(const CoxeterSystem& sys);

}  // namespace coxgraph
