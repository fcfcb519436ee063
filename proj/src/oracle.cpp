#include "coxgraph/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace coxgraph {

namespace {

std::vector<Subset> spherical_subsets(const CoxeterSystem& sys, Subset within) {
  std::vector<Subset> out;
  for (Subset K = within;; K = (K - 1) & within) {
    if (K && sys.spherical(K)) out.push_back(K);
    if (K == 0) break;
  }
  std::sort(out.begin(), out.end(), sub::lex_less);
  return out;
}

// Shift classes and K-conjugation edges on a minimal-length stratum closed under both moves.
OracleGraph build_structure(const std::vector<TwistedElement>& stratum, Subset space) {
  OracleGraph out;
  if (stratum.empty()) return out;
  const CoxeterSystem& sys = stratum.front().body.system();
  out.min_length = stratum.front().length();
  std::unordered_map<TwistedElement, int, TwistedHash> where;
  for (const TwistedElement& v : stratum) where.emplace(v, -1);

  std::vector<TwistedElement> sorted = stratum;
  std::sort(sorted.begin(), sorted.end());
  for (const TwistedElement& v : sorted) {
    if (where.at(v) >= 0) continue;
    const int id = static_cast<int>(out.classes.size());
    std::vector<TwistedElement> cls{v};
    where[v] = id;
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (int s : sub::members(space)) {
        TwistedElement u = cls[k].conj(s);
        if (u.length() != out.min_length) {
          if (u.length() < out.min_length)
            throw Error(ErrorCode::InternalMismatch, "stratum element is not cyclically reduced");
          continue;
        }
        auto it = where.find(u);
        if (it == where.end()) throw Error(ErrorCode::BudgetTooSmall, "shift left the enumerated stratum");
        if (it->second < 0) {
          it->second = id;
          cls.push_back(u);
        }
      }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }

  out.graph = ConjGraph(sys.names(), sys.names());
  for (const auto& cls : out.classes) {
    int k = out.graph.add_vertex(cls.front().support());
    out.graph.vertices()[k].representative = cls.front().body.word();
  }
  std::map<std::pair<int, int>, int> edge_witness;
  auto Ks = spherical_subsets(sys, space);
  for (std::size_t i = 0; i < out.classes.size(); ++i)
    for (const TwistedElement& u : out.classes[i])
      for (Subset K : Ks) {
        if (!normalizes(u, K)) continue;
        TwistedElement v = k_conjugate(u, K);
        auto it = where.find(v);
        if (it == where.end()) throw Error(ErrorCode::BudgetTooSmall, "K-conjugate outside the enumerated stratum");
        const int j = it->second;
        if (j == static_cast<int>(i)) continue;
        out.graph.add_edge(static_cast<int>(i), j, K);
        std::pair<int, int> key{std::min(static_cast<int>(i), j), std::max(static_cast<int>(i), j)};
        if (!edge_witness.count(key)) {
          edge_witness[key] = static_cast<int>(out.witnesses.size());
          out.witnesses.push_back({u, K});
        }
      }
  out.graph.set_base(0);
  return out;
}

}  // namespace

int OracleGraph::class_of(const TwistedElement& v) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].begin(), classes[i].end(), v))
      return static_cast<int>(i);
  return -1;
}

int default_oracle_budget(const CoxeterSystem& sys) {
  int best = 0;
  for (Subset K : spherical_subsets(sys, sys.all())) best = std::max(best, longest_element(sys, K).length());
  return 2 * best;
}

OracleGraph bfs_structural_oracle(const TwistedElement& w, int budget, std::size_t cap) {
  const CoxeterSystem& sys = w.body.system();
  if (budget < 0) budget = default_oracle_budget(sys);
  TwistedElement start = cyclically_reduce(w).value;
  const int lmin = start.length();
  const int bound = lmin + budget;
  std::unordered_set<TwistedElement, TwistedHash> seen{start};
  std::vector<TwistedElement> frontier{start};
  std::vector<TwistedElement> stratum{start};
  while (!frontier.empty()) {
    std::vector<TwistedElement> next;
    for (const TwistedElement& v : frontier)
      for (int s = 0; s < sys.rank(); ++s) {
        TwistedElement u = v.conj(s);
        if (u.length() > bound) continue;
        if (u.length() < lmin) throw Error(ErrorCode::InternalMismatch, "conjugate shorter than the reduced seed");
        if (!seen.insert(u).second) continue;
        if (seen.size() > cap) throw Error(ErrorCode::TooLarge, "conjugacy search exceeds the cap");
        if (u.length() == lmin) stratum.push_back(u);
        next.push_back(std::move(u));
      }
    frontier = std::move(next);
  }
  return build_structure(stratum, sys.all());
}

OracleGraph bfs_structural_oracle(const Element& w, int budget, std::size_t cap) {
  return bfs_structural_oracle(TwistedElement(w), budget, cap);
}

std::vector<FiniteClassReport> finite_conjugacy_oracle(const CoxeterSystem& sys, Subset K, const Perm& delta,
                                                       std::size_t cap) {
  if (!sys.spherical(K)) throw Error(ErrorCode::NonSpherical, "finite oracle on " + sys.subset_name(K));
  if (!delta.empty() && perm::apply(delta, K) != K)
    throw Error(ErrorCode::PreconditionViolated, "twist does not preserve K");
  auto elems = enumerate_parabolic(sys, K, cap);
  std::unordered_map<TwistedElement, int, TwistedHash> index;
  std::vector<TwistedElement> tw;
  for (const Element& e : elems) {
    index.emplace(TwistedElement(e, delta), static_cast<int>(tw.size()));
    tw.emplace_back(e, delta);
  }
  std::vector<int> parent(tw.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < tw.size(); ++i)
    for (int s : sub::members(K)) {
      int j = index.at(tw[i].conj(s));
      int a = find(static_cast<int>(i)), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<TwistedElement>> groups;
  for (std::size_t i = 0; i < tw.size(); ++i) groups[find(static_cast<int>(i))].push_back(tw[i]);
  std::vector<FiniteClassReport> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    int lmin = members.front().length();
    for (const auto& m : members) lmin = std::min(lmin, m.length());
    std::vector<TwistedElement> stratum;
    for (const auto& m : members)
      if (m.length() == lmin) stratum.push_back(m);
    out.push_back({members, build_structure(stratum, K)});
  }
  std::sort(out.begin(), out.end(), [](const FiniteClassReport& a, const FiniteClassReport& b) {
    return a.structure.classes.front().front() < b.structure.classes.front().front();
  });
  return out;
}

GraphMatch match_graphs(const ConjGraph& pipeline, const OracleGraph& oracle, const Perm& twist) {
  if (oracle.classes.empty()) return {false, "empty oracle"};
  const CoxeterSystem& sys = oracle.classes.front().front().body.system();
  if (pipeline.size() != oracle.classes.size())
    return {false, "vertex count " + std::to_string(pipeline.size()) + " vs oracle " +
                       std::to_string(oracle.classes.size())};
  std::vector<int> image(pipeline.size(), -1);
  std::vector<bool> used(oracle.classes.size(), false);
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    const auto& rep = pipeline.vertices()[i].representative;
    if (!rep) return {false, "vertex without representative"};
    TwistedElement v(reduce(sys, *rep), twist);
    int c = oracle.class_of(v);
    if (c < 0) return {false, "representative " + word_string(*rep) + " outside every oracle class"};
    if (used[c]) return {false, "two vertices in one oracle class"};
    used[c] = true;
    image[i] = c;
  }
  for (std::size_t i = 0; i < pipeline.size(); ++i)
    for (std::size_t j = i + 1; j < pipeline.size(); ++j)
      if (pipeline.adjacent(static_cast<int>(i), static_cast<int>(j)) != oracle.graph.adjacent(image[i], image[j]))
        return {false, "edge mismatch between vertices " + std::to_string(i) + " and " + std::to_string(j)};
  return {true, ""};
}

namespace {

bool negative_root(const CoxeterSystem& sys, const RootVector& r) { return root::sign(sys, r) < 0; }

// The diagram automorphism of S^eta induced by y, after right multiplication by elements of W^eta.
Perm induced_automorphism(const TransversalSystem& T, Element y) {
  const CoxeterSystem& sys = *T.ambient;
  const int N = T.size();
  for (int step = 0;; ++step) {
    if (step > 100000) throw Error(ErrorCode::SearchBudgetExceeded, "descent in W^eta does not terminate");
    int g = 0;
    while (g < N && !negative_root(sys, y.apply(T.roots[g]))) ++g;
    if (g == N) break;
    y = y * T.elements[g];
  }
  Perm out(N);
  for (int g = 0; g < N; ++g) {
    auto j = T.generator_of_root(y.apply(T.roots[g]));
    if (!j) throw Error(ErrorCode::InternalMismatch, "element does not normalize S^eta");
    out[g] = *j;
  }
  return out;
}

}  // namespace

std::vector<Subset> edge_witnesses(const ConjGraph& g, const CoxeterSystem& sys) {
  std::vector<Subset> spherical;
  for (Subset K = 1; K <= sys.all(); ++K)
    if (sys.spherical(K)) spherical.push_back(K);
  std::vector<CycClass> classes;
  for (const Vertex& v : g.vertices()) {
    if (!v.representative) throw Error(ErrorCode::PreconditionViolated, "vertex without representative");
    classes.push_back(cyc_class(TwistedElement(reduce(sys, *v.representative))));
  }
  std::vector<Subset> out;
  for (const Edge& e : g.edges()) {
    Subset found = 0;
    for (const TwistedElement& x : classes[e.from].elements) {
      for (Subset K : spherical) {
        if (!normalizes(x, K)) continue;
        if (classes[e.to].index.count(x.conj_by(longest_element(sys, K)))) {
          found = K;
          break;
        }
      }
      if (found) break;
    }
    out.push_back(found);
  }
  return out;
}

std::vector<Perm> xi_eta_oracle(const TransversalSystem& T) {
  if (T.size() == 0) return {};
  const CoxeterSystem& sys = *T.ambient;
  auto g = affine_geometry(sys);
  std::vector<Perm> out;
  for (int i = 0; i < g->dim(); ++i) {
    QVec e(g->dim(), 0);
    e[i] = 1;
    out.push_back(induced_automorphism(T, translation_element(sys, e)));
  }
  return out;
}

}  // namespace coxgraph
