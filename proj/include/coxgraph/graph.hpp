#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coxgraph/element.hpp"
#include "coxgraph/subset.hpp"

namespace coxgraph {

// One step of a conjugation certificate in the ambient group.
struct CertStep {
  enum Kind { Shift, KConj } kind = Shift;
  Word shifts;     // Shift: generators applied as successive cyclic shifts
  Subset K = 0;    // KConj: conjugation by w_0(K)
  bool operator==(const CertStep&) const = default;
};

struct Vertex {
  Subset subset = 0;
  std::optional<Word> representative;
  std::vector<CertStep> certificate;
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  int from = 0;
  int to = 0;
  Subset label = 0;             // ShortLex-least label
  std::vector<Subset> labels;   // all labels, sorted
  bool operator==(const Edge&) const = default;
};

class ConjGraph {
 public:
  ConjGraph() = default;
  // names: labels of the abstract generator index space; ambient: names of the ambient generators.
  explicit ConjGraph(std::vector<std::string> names, std::vector<std::string> ambient = {})
      : names_(std::move(names)), ambient_(std::move(ambient)) {}

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& ambient() const { return ambient_; }
  void set_ambient(std::vector<std::string> a) { ambient_ = std::move(a); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Vertex>& vertices() { return vertices_; }
  int base() const { return base_; }
  void set_base(int b) { base_ = b; }
  std::size_t size() const { return vertices_.size(); }

  int find(Subset s) const;
  int add_vertex(Subset s);
  // Adds label K to the edge {i, j}; self-loops are ignored.
  void add_edge(int i, int j, Subset K);
  bool adjacent(int i, int j) const;
  std::vector<std::vector<int>> adjacency() const;

  // Sorts vertices lexicographically by subset and edges by endpoints.
  void canonicalize();

  bool connected() const;
  int diameter() const;
  bool complete() const;

  bool operator==(const ConjGraph& o) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> ambient_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  int base_ = 0;
};

// Quotient by the group generated by gens (permutations of the index space). Each orbit must lie in
// the vertex set or meet it in a single vertex, unless partial is set.
ConjGraph quotient(const ConjGraph& g, const std::vector<Perm>& gens, bool partial = false);

// Adds an edge between the ends of every path whose label union satisfies admissible.
ConjGraph tight_closure(const ConjGraph& g, const std::function<bool(Subset)>& admissible);

// Applies certificate steps to start; throws if a K-conjugation step is not admissible.
TwistedElement replay(const TwistedElement& start, const std::vector<CertStep>& steps);

std::string export_json(const ConjGraph& g);
std::string export_dot(const ConjGraph& g);
ConjGraph parse_json(const std::string& text);

}  // namespace coxgraph
