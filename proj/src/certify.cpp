#include "certify.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace coxgraph::detail {

std::vector<Subset> spherical_subsets(const CoxeterSystem& sys) {
  std::vector<Subset> out;
  for (Subset K = 1; K <= sys.all(); ++K)
    if (sys.spherical(K)) out.push_back(K);
  return out;
}

BfsTree bfs_tree(const ConjGraph& g, int base) {
  BfsTree t;
  t.parent.assign(g.size(), -2);
  t.label.assign(g.size(), 0);
  std::map<std::pair<int, int>, Subset> labels;
  for (const Edge& e : g.edges()) {
    labels[{e.from, e.to}] = e.label;
    labels[{e.to, e.from}] = e.label;
  }
  auto adj = g.adjacency();
  std::deque<int> q{base};
  t.parent[base] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    t.order.push_back(v);
    for (int u : adj[v]) {
      if (t.parent[u] != -2) continue;
      t.parent[u] = v;
      t.label[u] = labels.at({v, u});
      q.push_back(u);
    }
  }
  return t;
}

std::optional<std::vector<CertStep>> link(const CycClass& from, const CycClass& to, const std::vector<Subset>& spherical) {
  for (std::size_t i = 0; i < from.elements.size(); ++i) {
    const TwistedElement& u = from.elements[i];
    for (Subset K : spherical) {
      if (!normalizes(u, K)) continue;
      TwistedElement x = u.conj_by(longest_element(u.body.system(), K));
      auto it = to.index.find(x);
      if (it == to.index.end()) continue;
      Word back = to.path(it->second);
      std::reverse(back.begin(), back.end());
      std::vector<CertStep> steps;
      Word there = from.path(static_cast<int>(i));
      if (!there.empty()) steps.push_back({CertStep::Shift, there, 0});
      steps.push_back({CertStep::KConj, {}, K});
      if (!back.empty()) steps.push_back({CertStep::Shift, back, 0});
      return steps;
    }
  }
  return std::nullopt;
}

}  // namespace coxgraph::detail
