#include "coxgraph/finord.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace coxgraph {

namespace {

Perm full_delta(const CoxeterSystem& sys, const Perm& delta) {
  return delta.empty() ? perm::identity(sys.rank()) : delta;
}

void supersets(const CoxeterSystem& sys, const std::vector<Subset>& orbits, std::size_t k, Subset cur,
               std::vector<Subset>& out) {
  if (k == orbits.size()) {
    out.push_back(cur);
    return;
  }
  supersets(sys, orbits, k + 1, cur, out);
  Subset next = cur | orbits[k];
  if (sys.spherical(next)) supersets(sys, orbits, k + 1, next, out);
}

bool maps_simple_roots(const Element& w, Subset J, Subset K) {
  const CoxeterSystem& sys = w.system();
  Subset image = 0;
  for (int s : sub::members(J)) {
    RootVector c = w.column(s);
    Subset supp = root::support(sys, c);
    if (sub::size(supp) != 1 || c != root::simple(sys, sub::lowest(supp))) return false;
    image |= supp;
  }
  return image == K;
}

}  // namespace

std::vector<Subset> invariant_spherical_supersets(const CoxeterSystem& sys, const Perm& delta, Subset I) {
  std::vector<Subset> out;
  if (!sys.spherical(I)) return out;
  Perm d = full_delta(sys, delta);
  std::vector<Subset> orbits;
  Subset covered = I;
  for (int s = 0; s < sys.rank(); ++s) {
    if (sub::has(covered, s)) continue;
    Subset orbit = perm::closure({d}, sub::bit(s));
    covered |= orbit;
    orbits.push_back(orbit);
  }
  supersets(sys, orbits, 0, I, out);
  std::sort(out.begin(), out.end(), sub::lex_less);
  return out;
}

ConjGraph kdelta_component(const CoxeterSystem& sys, const Perm& delta, Subset I0, std::size_t cap) {
  Perm d = full_delta(sys, delta);
  if (perm::apply(d, I0) != I0 || !sys.spherical(I0))
    throw Error(ErrorCode::PreconditionViolated, "base vertex must be invariant and spherical");
  ConjGraph g(sys.names());
  g.add_vertex(I0);
  g.set_base(0);
  std::map<Subset, int> index{{I0, 0}};
  std::deque<Subset> queue{I0};
  while (!queue.empty()) {
    Subset I = queue.front();
    queue.pop_front();
    const int i = index.at(I);
    for (Subset K : invariant_spherical_supersets(sys, d, I)) {
      Subset J = perm::apply(opposition(sys, K), I);
      if (J == I) continue;
      auto it = index.find(J);
      if (it == index.end()) {
        if (g.size() >= cap) throw Error(ErrorCode::TooLarge, "K-conjugation component exceeds the cap");
        it = index.emplace(J, g.add_vertex(J)).first;
        queue.push_back(J);
      }
      g.add_edge(i, it->second, K);
    }
  }
  g.canonicalize();
  return g;
}

std::vector<DeodharStep> deodhar_path(const CoxeterSystem& sys, const Perm& delta, Subset J, Subset K,
                                      const Element& w) {
  Perm d = full_delta(sys, delta);
  if (perm::apply(d, J) != J || perm::apply(d, K) != K || !sys.spherical(J) || !sys.spherical(K))
    throw Error(ErrorCode::PreconditionViolated, "J and K must be invariant and spherical");
  if (twist_element(w, d) != w) throw Error(ErrorCode::PreconditionViolated, "w is not fixed by the twist");
  if (min_double_coset_rep(w, K, J) != w)
    throw Error(ErrorCode::PreconditionViolated, "w is not minimal in its double coset");
  if (!maps_simple_roots(w, J, K)) throw Error(ErrorCode::PreconditionViolated, "w does not map Pi_J onto Pi_K");

  std::vector<DeodharStep> steps;
  Element cur = w;
  Subset Jc = J;
  while (!cur.is_identity()) {
    int s = sub::lowest(cur.right_descents());
    Subset T = perm::closure({d}, sub::bit(s));
    Subset U = Jc | T;
    if (!sys.spherical(U)) throw Error(ErrorCode::VerificationFailed, "Deodhar step left the spherical world");
    Element nu = longest_element(sys, U) * longest_element(sys, Jc);
    Subset Jn = 0;
    for (int t : sub::members(Jc)) Jn |= root::support(sys, nu.column(t));
    Element rest = cur * nu.inverse();
    if (rest.length() + nu.length() != cur.length())
      throw Error(ErrorCode::VerificationFailed, "Deodhar factor is not length additive");
    steps.push_back({Jc, Jn, s, nu});
    cur = rest;
    Jc = Jn;
  }
  if (Jc != K) throw Error(ErrorCode::VerificationFailed, "Deodhar path ends away from K");
  return steps;
}

bool same_cyc_class_finite(const TwistedElement& u, const TwistedElement& v) {
  if (!is_cyclically_reduced(u) || !is_cyclically_reduced(v))
    throw Error(ErrorCode::NotCyclicallyReduced, "same_cyc_class_finite expects cyclically reduced input");
  return u.support() == v.support();
}

ConjGraph finite_structural_graph(const TwistedElement& w) {
  const CoxeterSystem& sys = w.body.system();
  if (!order(w)) throw Error(ErrorCode::InfiniteOrder, "finite-order pipeline on an element of infinite order");
  if (!is_cyclically_reduced(w)) throw Error(ErrorCode::NotCyclicallyReduced, "input must be cyclically reduced");
  ConjGraph g = kdelta_component(sys, w.twist, w.support());
  // Replay K-conjugations along a breadth-first tree in vertex order.
  const int base = g.base();
  std::vector<std::optional<TwistedElement>> rep(g.size());
  std::vector<std::vector<CertStep>> cert(g.size());
  rep[base] = w;
  auto adj = g.adjacency();
  std::deque<int> queue{base};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j : adj[i]) {
      if (rep[j]) continue;
      Subset K = 0;
      for (const Edge& e : g.edges())
        if ((e.from == std::min(i, j)) && (e.to == std::max(i, j))) K = e.label;
      rep[j] = k_conjugate(*rep[i], K);
      if (rep[j]->support() != g.vertices()[j].subset)
        throw Error(ErrorCode::VerificationFailed, "K-conjugate lands on an unexpected support");
      cert[j] = cert[i];
      cert[j].push_back(CertStep{CertStep::KConj, {}, K});
      queue.push_back(j);
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.vertices()[i].representative = rep[i]->body.word();
    g.vertices()[i].certificate = cert[i];
  }
  return g;
}

ConjGraph finite_structural_graph(const Element& w) { return finite_structural_graph(TwistedElement(w)); }

std::optional<Element> twisted_conjugate_bruteforce(const Element& u, const Element& v, const Perm& delta,
                                                    Subset K) {
  const CoxeterSystem& sys = u.system();
  if (!sys.spherical(K)) throw Error(ErrorCode::NonSpherical, "twisted conjugacy in " + sys.subset_name(K));
  TwistedElement tu(u, delta), tv(v, delta);
  for (const Element& x : *parabolic_elements(sys, K))
    if (tu.conj_by(x) == tv) return x;
  return std::nullopt;
}

std::optional<Element> finite_order_conjugator(const TwistedElement& u, const TwistedElement& v,
                                               std::size_t cap) {
  const CoxeterSystem& sys = u.body.system();
  const int n = sys.rank();
  Perm du = full_delta(sys, u.twist), dv = full_delta(sys, v.twist);
  if (du != dv) return std::nullopt;
  if (!is_cyclically_reduced(u) || !is_cyclically_reduced(v))
    throw Error(ErrorCode::NotCyclicallyReduced, "finite_order_conjugator expects cyclically reduced input");
  if (u.length() != v.length()) return std::nullopt;
  const Subset Iu = u.support(), Iv = v.support();
  CycClass cu = cyc_class(u);
  // Breadth-first search over W by length for twist-fixed minimal double coset representatives.
  std::vector<Element> layer{Element(sys)};
  std::unordered_set<Element, ElementHash> seen{layer.front()};
  std::size_t visited = 1;
  while (!layer.empty()) {
    for (const Element& x : layer) {
      if (twist_element(x, du) != x) continue;
      if (min_double_coset_rep(x, Iv, Iu) != x) continue;
      if (!maps_simple_roots(x, Iu, Iv)) continue;
      TwistedElement c = v.conj_by(x);
      if (cu.contains(c)) return x;
    }
    std::vector<Element> next;
    for (const Element& x : layer)
      for (int s = 0; s < n; ++s) {
        if (x.right_descent(s)) continue;
        Element y = x.rmul(s);
        if (seen.insert(y).second) next.push_back(y);
      }
    visited += next.size();
    if (visited > cap) throw Error(ErrorCode::SearchBudgetExceeded, "conjugator search exceeded the cap");
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace coxgraph
