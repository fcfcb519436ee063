#include "coxgraph/indefinite.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "certify.hpp"
#include "coxgraph/errors.hpp"
#include "coxgraph/finord.hpp"

namespace coxgraph {

namespace {

void require_full_closure(const Element& w) {
  const CoxeterSystem& sys = w.system();
  if (parabolic_closure(w).K != sys.all())
    throw Error(ErrorCode::NotFullClosure, w.str() + " lies in a proper parabolic subgroup");
}

Subset msn_unchecked(const Element& w) {
  const CoxeterSystem& sys = w.system();
  Subset out = 0;
  for (int s = 0; s < sys.rank(); ++s) {
    if (sub::has(out, s)) continue;
    Subset J = sub::bit(s);
    for (;;) {
      Subset next = J;
      for (int t : sub::members(J)) next |= root::support(sys, w.column(t));
      if (!sys.spherical(next)) {
        J = 0;
        break;
      }
      if (next == J) break;
      J = next;
    }
    out |= J;
  }
  if (!sys.spherical(out) || !normalizes(w, out))
    throw Error(ErrorCode::InternalMismatch, "union of spherical orbit closures is not normalized");
  return out;
}

Element product(const CoxeterSystem& sys, const Word& w) { return Element(sys).rmul(w); }

Perm restrict_perm(const Perm& p, Subset I, int n) {
  Perm out = perm::identity(n);
  for (int s : sub::members(I)) out[s] = p[s];
  return out;
}

// Every element of Cyc_min(x) has no proper length-additive root.
bool all_weakly_indivisible(const Element& x) {
  TwistedElement r = cyclically_reduce(TwistedElement(x)).value;
  CycClass c = cyc_class(r);
  for (int i : c.minimal())
    if (root_decomp(c.elements[i].body).n != 1) return false;
  return true;
}

// Core of a P-reduced y with P_y^max = W_I, y = core^n.
RootDecomp core_of(const Element& y, Subset I) {
  const CoxeterSystem& sys = y.system();
  if (y.is_identity()) return {1, y};
  Reduction red = cyclically_reduce(TwistedElement(y));
  CycClass c = cyc_class(red.value);
  const int k = sub::size(I);
  int best = -1;
  RootDecomp out{0, Element(sys)};
  for (int i : c.minimal()) {
    const Element& u = c.elements[i].body;
    Subset Iu = msn_unchecked(u);
    if (sub::size(Iu) != k || min_coset_rep(u, Iu, Side::Left) != u) continue;
    RootDecomp r = root_decomp(u);
    if (r.n <= out.n) continue;
    out = r;
    best = i;
  }
  if (best < 0) throw Error(ErrorCode::VerificationFailed, "no standard reduced element in the shift class");
  Element z = red.conjugator * product(sys, c.path(best));
  Element cand = min_coset_rep(z * out.x * z.inverse(), I, Side::Left);
  if (cand.pow(out.n) != y) throw Error(ErrorCode::VerificationFailed, "transported root does not power back");
  return {out.n, cand};
}

ConjGraph lift_component(const CoxeterSystem& sys, Subset I, const Perm& delta, Subset I_w) {
  std::vector<int> gens = sub::members(I);
  const int k = static_cast<int>(gens.size());
  Matrix m(k, std::vector<int>(k));
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    names.push_back(sys.names()[gens[i]]);
    for (int j = 0; j < k; ++j) m[i][j] = sys.m(gens[i], gens[j]);
  }
  SystemPtr sub_sys = CoxeterSystem::make(m, names);
  std::map<int, int> local;
  for (int i = 0; i < k; ++i) local[gens[i]] = i;
  auto down = [&](Subset s) {
    Subset out = 0;
    for (int g : sub::members(s)) out |= sub::bit(local.at(g));
    return out;
  };
  auto up = [&](Subset s) {
    Subset out = 0;
    for (int i : sub::members(s)) out |= sub::bit(gens[i]);
    return out;
  };
  Perm d(k);
  for (int i = 0; i < k; ++i) d[i] = local.at(delta[gens[i]]);
  ConjGraph small = kdelta_component(*sub_sys, d, down(I_w));
  ConjGraph g(sys.names(), sys.names());
  for (const Vertex& x : small.vertices()) g.add_vertex(up(x.subset));
  for (const Edge& e : small.edges())
    for (Subset L : e.labels) g.add_edge(e.from, e.to, up(L));
  g.set_base(small.base());
  g.canonicalize();
  return g;
}

}  // namespace

Subset msn(const Element& w) {
  require_full_closure(w);
  return msn_unchecked(w);
}

Standardized mn(const Element& w) {
  if (!is_cyclically_reduced(w)) throw Error(ErrorCode::NotCyclicallyReduced, w.str());
  require_full_closure(w);
  const CoxeterSystem& sys = w.system();
  CycClass c = cyc_class(w);
  Standardized out;
  int best = -1;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    Subset I = msn_unchecked(c.elements[i].body);
    if (best >= 0 && sub::size(I) <= sub::size(out.I)) continue;
    best = static_cast<int>(i);
    out.I = I;
  }
  out.v = c.elements[best].body;
  out.conjugator = product(sys, c.path(best));
  if (w.conj_by(out.conjugator) != out.v) throw Error(ErrorCode::VerificationFailed, "shift path does not conjugate");
  return out;
}

RootDecomp root_decomp(const Element& w) {
  const int l = w.length();
  if (l == 0) return {1, w};
  for (int d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    // Prefixes of length d of reduced words of w.
    std::set<Element> layer{Element(w.system())};
    for (int step = 0; step < d; ++step) {
      std::set<Element> next;
      for (const Element& p : layer) {
        Element rest = p.inverse() * w;
        for (int s : sub::members(rest.left_descents())) next.insert(p.rmul(s));
      }
      layer = std::move(next);
    }
    for (const Element& x : layer)
      if (x.pow(l / d) == w) return {l / d, x};
  }
  return {1, w};
}

bool is_core_splitting(const Element& w, Subset I, int n, const Element& a, const Element& x) {
  if (n < 1 || a * x.pow(n) != w) return false;
  if (!sub::within(a.support(), I) || min_coset_rep(x, I, Side::Left) != x) return false;
  return all_weakly_indivisible(x);
}

CoreSplitting core_splitting(const Element& w) {
  Standardized st = mn(w);
  NormalizerSplit split = normalizer_split(st.v, st.I);
  RootDecomp core = core_of(split.n_I, st.I);
  CoreSplitting out;
  out.n = core.n;
  out.I = st.I;
  out.standardizer = st.conjugator;
  out.std_a = split.w_I;
  out.std_core = core.x;
  if (!is_core_splitting(st.v, st.I, core.n, split.w_I, core.x))
    throw Error(ErrorCode::VerificationFailed, "core splitting check failed for " + st.v.str());
  const Element& x = st.conjugator;
  out.a = x * split.w_I * x.inverse();
  out.core = x * core.x * x.inverse();
  if (out.a * out.core.pow(out.n) != w) throw Error(ErrorCode::VerificationFailed, "transported splitting");
  return out;
}

DeltaIwIndef delta_and_Iw_indefinite(const Element& v) {
  const CoxeterSystem& sys = v.system();
  if (!is_cyclically_reduced(v)) throw Error(ErrorCode::NotStandard, v.str() + " is not cyclically reduced");
  DeltaIwIndef out;
  out.I = msn(v);
  out.split = normalizer_split(v, out.I);
  auto p = induced_permutation(out.split.n_I, out.I);
  if (!p) throw Error(ErrorCode::NotStandard, "normalizer part does not permute the simple roots");
  out.delta = restrict_perm(*p, out.I, sys.rank());
  out.I_w = perm::closure({out.delta}, out.split.w_I.support());
  return out;
}

namespace {

int degree_from(const CoreSplitting& cs, const Perm& d) {
  const Element& a = cs.std_a;
  const int m = cs.n;
  int e = 1;
  while (twist_element(a, perm::power(d, e)) != a) ++e;
  const int mprime = (m - 1) % e + 1;
  Perm dm = perm::power(d, m);
  for (int n = 1; n <= mprime; ++n) {
    if (mprime % n != 0) continue;
    Element dn = twist_element(a, perm::power(d, n));
    if (twisted_conjugate_bruteforce(dn, a, dm, cs.I)) return n;
  }
  throw Error(ErrorCode::VerificationFailed, "centraliser degree does not divide m'");
}

Perm core_delta(const CoreSplitting& cs) {
  auto p = induced_permutation(cs.std_core, cs.I);
  if (!p) throw Error(ErrorCode::VerificationFailed, "core does not permute Pi_I");
  return restrict_perm(*p, cs.I, cs.std_core.system().rank());
}

}  // namespace

int centraliser_degree(const Element& v) {
  CoreSplitting cs = core_splitting(v);
  if (!cs.standardizer.is_identity()) throw Error(ErrorCode::NotStandard, v.str());
  return degree_from(cs, core_delta(cs));
}

IndefiniteGraphReport structural_graph_indefinite(const Element& w) {
  const CoxeterSystem& sys = w.system();
  require_full_closure(w);
  IndefiniteGraphReport R;
  R.reduced = cyclically_reduce(TwistedElement(w)).value.body;
  R.standard = mn(R.reduced);
  const Element& v = R.standard.v;
  const int lmin = R.reduced.length();
  auto least = [&](const Element& x) {
    TwistedElement r = cyclically_reduce(TwistedElement(x)).value;
    if (r.length() != lmin) throw Error(ErrorCode::InternalMismatch, "representative is not of minimal length");
    return cyc_min(r).elements.front();
  };

  R.core = core_splitting(v);
  R.dw = delta_and_Iw_indefinite(v);
  if (R.dw.I != R.standard.I) throw Error(ErrorCode::InternalMismatch, "standard subset changed");
  R.core_delta = core_delta(R.core);
  if (perm::power(R.core_delta, R.core.n) != R.dw.delta)
    throw Error(ErrorCode::VerificationFailed, "delta_w is not a power of the core automorphism");

  if (R.dw.I == 0) {
    ConjGraph g(sys.names(), sys.names());
    g.add_vertex(0);
    g.vertices()[0].representative = least(v).body.word();
    R.xi_w = {perm::identity(sys.rank())};
    R.component = R.graph = R.tight = g;
    return R;
  }

  R.n_w = degree_from(R.core, R.core_delta);
  Perm gen = perm::power(R.core_delta, R.n_w);
  if (perm::compose(gen, R.dw.delta) != perm::compose(R.dw.delta, gen))
    throw Error(ErrorCode::InternalMismatch, "Xi_w does not commute with delta_w");
  R.xi_w = perm::generate({gen}, sys.rank());
  R.component = lift_component(sys, R.dw.I, R.dw.delta, R.dw.I_w);
  const ConjGraph& G = R.component;
  ConjGraph q = quotient(G, {gen});

  detail::BfsTree paths = detail::bfs_tree(G, G.base());
  std::vector<TwistedElement> reps(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    int gi = G.find(q.vertices()[i].subset);
    std::vector<Subset> labels;
    for (int x = gi; paths.parent[x] >= 0; x = paths.parent[x]) labels.push_back(paths.label[x]);
    std::reverse(labels.begin(), labels.end());
    Element u(sys);
    for (Subset L : labels) u = u * longest_element(sys, L);
    reps[i] = least(v.conj_by(u));
    q.vertices()[i].representative = reps[i].body.word();
    q.vertices()[i].certificate.clear();
  }

  auto spherical = detail::spherical_subsets(sys);
  std::map<int, CycClass> classes;
  auto cls = [&](int i) -> const CycClass& {
    auto it = classes.find(i);
    if (it == classes.end()) it = classes.emplace(i, cyc_class(reps[i])).first;
    return it->second;
  };
  detail::BfsTree tree = detail::bfs_tree(q, q.base());
  for (int c : tree.order) {
    int p = tree.parent[c];
    if (p < 0) continue;
    auto steps = detail::link(cls(p), cls(c), spherical);
    if (!steps) throw Error(ErrorCode::VerificationFailed, "no K-conjugation links adjacent classes");
    auto cert = q.vertices()[p].certificate;
    cert.insert(cert.end(), steps->begin(), steps->end());
    if (replay(reps[q.base()], cert) != reps[c])
      throw Error(ErrorCode::VerificationFailed, "certificate does not replay");
    q.vertices()[c].certificate = cert;
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    if (tree.parent[i] == -2) throw Error(ErrorCode::InternalMismatch, "quotient graph is not connected");
  R.graph = q;

  ConjGraph tight = tight_closure(G, [&](Subset K) { return sys.spherical(K); });
  R.tight = quotient(tight, {gen});
  for (Vertex& x : R.tight.vertices()) {
    int i = R.graph.find(x.subset);
    if (i < 0) throw Error(ErrorCode::InternalMismatch, "tight quotient has a new vertex");
    x = R.graph.vertices()[i];
  }
  R.tight.set_base(R.graph.base());
  return R;
}

}  // namespace coxgraph
