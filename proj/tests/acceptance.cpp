#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "common.hpp"
#include "coxgraph/affine.hpp"
#include "coxgraph/catalog.hpp"
#include "coxgraph/errors.hpp"
#include "coxgraph/finord.hpp"
#include "coxgraph/indefinite.hpp"
#include "coxgraph/oracle.hpp"

using namespace coxgraph;

namespace {

// Wall-clock limits in seconds; 0 means none.
constexpr double kLimitD7 = 10;
constexpr double kLimitE7 = 60;
constexpr double kLimitXiSweep = 600;
constexpr double kLimitAffineOracle = 600;

constexpr int kAffineWords = 50;
constexpr int kAffineMaxLength = 8;
constexpr int kIndefiniteWords = 20;
constexpr int kIndefiniteMaxLength = 10;
constexpr int kMatsumotoPairs = 10000;
constexpr int kStraightSamples = 100;

// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << count_ - failed_ << "/" << count_ << " checks";
    for (const auto& n : notes_) out << "; " << n;
    for (const auto& f : failures_) out << "; failed: " << f;
    if (failed_ > static_cast<int>(failures_.size())) out << "; ...";
    return out.str();
  }

 private:
  int count_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

Subset named(const CoxeterSystem& sys, const std::vector<std::string>& names) {
  Subset out = 0;
  for (const std::string& n : names) {
    auto it = std::find(sys.names().begin(), sys.names().end(), n);
    if (it == sys.names().end()) throw std::runtime_error("unknown generator " + n);
    out |= sub::bit(static_cast<int>(it - sys.names().begin()));
  }
  return out;
}

Perm cycles(const CoxeterSystem& sys, const std::vector<std::vector<std::string>>& cs) {
  Perm p = perm::identity(sys.rank());
  for (const auto& c : cs)
    for (std::size_t i = 0; i < c.size(); ++i)
      p[sub::lowest(named(sys, {c[i]}))] = sub::lowest(named(sys, {c[(i + 1) % c.size()]}));
  return p;
}

std::set<Perm> group(const std::vector<Perm>& gens, int n) {
  auto all = perm::generate(gens, n);
  return std::set<Perm>(all.begin(), all.end());
}

int edge_between(const ConjGraph& g, Subset a, Subset b) {
  int i = g.find(a), j = g.find(b);
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const Edge& e = g.edges()[k];
    if ((e.from == i && e.to == j) || (e.from == j && e.to == i)) return static_cast<int>(k);
  }
  return -1;
}

bool in_quotient(const AffineGraphReport& R, Subset J) {
  for (const Perm& p : R.xi_w)
    if (R.graph.find(perm::apply(p, J)) >= 0) return true;
  return false;
}

bool is_cycle(const ConjGraph& g) {
  if (g.size() < 3 || g.edges().size() != g.size() || !g.connected()) return false;
  for (const auto& nb : g.adjacency())
    if (nb.size() != 2) return false;
  return true;
}

bool same_shape(const ConjGraph& a, const ConjGraph& b) {
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.vertices()[i].subset != b.vertices()[i].subset) return false;
  for (std::size_t i = 0; i < a.edges().size(); ++i)
    if (a.edges()[i].from != b.edges()[i].from || a.edges()[i].to != b.edges()[i].to) return false;
  return true;
}

// Representatives have the input length and certificates replay from the base vertex.
bool certificates_replay(const ConjGraph& g, const Element& reduced) {
  if (g.size() == 0) return false;
  const CoxeterSystem& sys = reduced.system();
  TwistedElement base(reduce(sys, *g.vertices()[g.base()].representative));
  for (const Vertex& v : g.vertices()) {
    if (!v.representative) return false;
    TwistedElement rep(reduce(sys, *v.representative));
    if (rep.length() != reduced.length()) return false;
    if (replay(base, v.certificate) != rep) return false;
  }
  return true;
}

std::string str(long long n) { return std::to_string(n); }

std::string label(const CoxeterSystem& sys) {
  const TypeTag& t = sys.type()[0];
  if (t.is_finite() || t.is_affine()) return t.name();
  return "rank " + str(sys.rank()) + " indefinite";
}

void criterion1(Check& c) {
  auto d7 = affine_system('D', 7);
  AffineGraphReport R = structural_graph_affine(reduce(*d7, {1, 3, 4, 5, 6}) * d7_translation(*d7));
  const CoxeterSystem& E = *R.T.sys;
  c.expect(R.xi_w.size() == 1, "Xi_w trivial");
  c.expect(perm::is_identity(R.dw.delta), "delta_w = id");
  c.expect(R.dw.I_w == named(E, {"s1", "s3", "s4", "s5", "s6"}), "I_w");
  c.expect(R.graph.size() == 4 && R.graph.edges().size() == 4, "4 vertices, 4 edges");
  c.expect(is_cycle(R.graph), "cycle");
  c.expect(same_shape(R.graph, R.tight), "tight graph coincides");
  const Subset v3456 = named(E, {"s1", "s3", "s4", "s5", "s6"});
  const Subset v3457 = named(E, {"s1", "s3", "s4", "s5", "s7"});
  const Subset vt457 = named(E, {"s1", "tau2", "s4", "s5", "s7"});
  const Subset vt456 = named(E, {"s1", "tau2", "s4", "s5", "s6"});
  struct Expected {
    Subset a, b;
    std::vector<std::string> label;
  };
  const std::vector<Expected> edges{
      {v3456, v3457, {"s1", "s3", "s4", "s5", "s6", "s7"}},
      {v3456, vt456, {"s1", "tau2", "s3", "s4", "s5", "s6"}},
      {v3457, vt457, {"s1", "tau2", "s3", "s4", "s5", "s7"}},
      {vt456, vt457, {"s1", "tau2", "s4", "s5", "s6", "s7"}},
  };
  for (const Expected& e : edges) {
    int k = edge_between(R.graph, e.a, e.b);
    std::string name = E.subset_name(e.a) + "-" + E.subset_name(e.b);
    c.expect(k >= 0, "edge " + name);
    if (k >= 0) c.expect(R.graph.edges()[k].label == named(E, e.label), "label of " + name);
  }
  for (Subset K : edge_witnesses(R.graph, *d7)) c.expect(K != 0, "edge realized by a K-conjugation in W");
  c.expect(certificates_replay(R.graph, R.reduced), "certificates replay");
}

void criterion2(Check& c) {
  auto d7 = affine_system('D', 7);
  AffineGraphReport R = structural_graph_affine(reduce(*d7, {3, 4, 5, 6}) * d7_translation(*d7));
  const CoxeterSystem& E = *R.T.sys;
  const int N = E.rank();
  const Subset v3456 = named(E, {"s3", "s4", "s5", "s6"});
  const Subset v3457 = named(E, {"s3", "s4", "s5", "s7"});
  const Subset vt457 = named(E, {"tau2", "s4", "s5", "s7"});
  const Subset vt456 = named(E, {"tau2", "s4", "s5", "s6"});
  c.expect(R.component.size() == 4 && R.component.edges().size() == 4, "K-graph has 4 vertices and 4 edges");
  c.expect(is_cycle(R.component), "K-graph is a cycle");
  c.expect(edge_between(R.component, v3456, v3457) >= 0 && edge_between(R.component, v3457, vt457) >= 0 &&
               edge_between(R.component, vt457, vt456) >= 0 && edge_between(R.component, vt456, v3456) >= 0,
           "cycle order 3456, 3457, tau457, tau456");
  Perm s1s2 = perm::compose(cycles(E, {{"tau1", "s1"}}), cycles(E, {{"tau2", "s3"}, {"s6", "s7"}}));
  c.expect(group(R.xi_eta_gens, N) == group({s1s2}, N), "Xi_eta = <sigma1 sigma2>");
  c.expect(R.graph.size() == 2, "2-vertex quotient");
  c.expect(in_quotient(R, v3456) && in_quotient(R, v3457), "quotient classes [I_w], [I_3457]");
  c.expect(certificates_replay(R.graph, R.reduced), "certificates replay");
}

void criterion3(Check& c) {
  auto e7 = affine_system('E', 7);
  const CoxeterSystem& S = *e7;
  Element x = e7_normalizer(S);
  auto p = induced_permutation(x, sub::of({2, 3, 4, 5, 7}));
  Perm swap25 = perm::identity(S.rank());
  std::swap(swap25[2], swap25[5]);
  c.expect(p && *p == swap25, "x normalizes J, swapping s2 and s5");
  c.expect(is_translation(x.pow(2)), "x^2 is a translation");
  c.expect(!is_translation(x), "x is not a translation");

  auto run = [&](const Word& u, int n) { return structural_graph_affine(reduce(S, u) * x.pow(n)); };
  AffineGraphReport R1 = run({4}, 1);
  const CoxeterSystem& E = *R1.T.sys;
  const int N = E.rank();
  c.expect(R1.standard.I_eta == (S.all() & ~sub::of({0, 6})), "I_eta = S - {s0, s6}");
  Perm g = perm::compose(cycles(E, {{"tau1", "s2", "s1", "s5"}, {"s3", "s4"}}), cycles(E, {{"tau2", "s7"}}));
  c.expect(group(R1.xi_eta_gens, N) == group({g}, N), "Xi_eta = <sigma_s2 sigma_s7>");
  c.expect(R1.dw.delta == perm::compose(g, g), "delta_x = (sigma_s2 sigma_s7)^2");
  c.expect(R1.component.size() == 2, "case 1: K-graph has 2 vertices");
  c.expect(R1.graph.size() == 1, "case 1: single-vertex quotient");

  AffineGraphReport R2 = run({4, 7}, 1);
  c.expect(R2.graph.size() == 2 && in_quotient(R2, named(E, {"s3", "s7"})), "case 2: {s4,s7} and {s3,s7}");

  AffineGraphReport R3 = run({1, 4, 5}, 2);
  c.expect(perm::is_identity(R3.dw.delta), "case 3: delta_w = id");
  c.expect(R3.component.size() == 8, "case 3: 8-vertex K-graph");
  c.expect(R3.graph.size() == 2 && in_quotient(R3, named(E, {"s1", "s3", "s5"})), "case 3: 2-vertex quotient");

  AffineGraphReport R4 = run({1, 4, 5, 7}, 2);
  c.expect(R4.graph.size() == 4, "case 4: 4-vertex quotient");
  c.expect(!R4.graph.complete(), "case 4: quotient not complete");
  c.expect(R4.tight.complete(), "case 4: tight closure complete");
  for (const AffineGraphReport* R : {&R1, &R2, &R3, &R4})
    c.expect(certificates_replay(R->graph, R->reduced), "certificates replay");
}

void criterion4(Check& c) {
  for (int n : {1, 2}) {
    auto sys = affine_system('A', 4 * n + 1);
    AffineGraphReport R = structural_graph_affine(big_diameter_element(*sys, n));
    const std::string tag = "n=" + str(n) + ": ";
    const int k = 2 * n + 1;
    c.expect(static_cast<int>(R.graph.size()) == k && is_cycle(R.graph), tag + str(k) + "-cycle (got " + str(R.graph.size()) + " vertices, " + str(R.graph.edges().size()) +
                      " edges)");
    c.expect(same_shape(R.tight, R.graph), tag + "tight closure equals the graph");
    c.expect(R.graph.diameter() == n, tag + "diameter " + str(n) + " (got " + str(R.graph.diameter()) + ")");
    c.expect(certificates_replay(R.graph, R.reduced), tag + "certificates replay");
    if (n == 2) {
      int witnessed = 0;
      for (Subset K : edge_witnesses(R.graph, *sys)) witnessed += K != 0;
      c.note("n=2 edges with a spherical K-conjugation witness: " + str(witnessed) + "/" +
             str(R.graph.edges().size()));
    }
  }
}

void criterion5(Check& c) {
  auto check_family = [&](char f, int l, const std::vector<std::vector<std::vector<int>>>& listed) {
    auto sys = affine_system(f, l);
    const TypeTag& t = sys->type()[0];
    const std::string tag = t.name();
    std::vector<int> special;
    for (int k = 0; k <= l; ++k)
      if (sub::has(t.special, t.gen(k))) special.push_back(k);
    // Restriction to special vertices, as Kac indices.
    auto restrict = [&](const Perm& p) {
      std::vector<int> r;
      for (int k : special) r.push_back(t.vertex_of(p[t.gen(k)]));
      return r;
    };
    std::set<std::vector<int>> got, want;
    auto gens = extended_autgroup(*sys, t);
    for (const Perm& p : gens) c.expect(is_diagram_automorphism(*sys, p, sys->all()), tag + " automorphism");
    for (const Perm& p : perm::generate(gens, sys->rank())) got.insert(restrict(p));
    std::vector<Perm> listed_gens;
    for (const auto& cs : listed) {
      Perm p = perm::identity(sys->rank());
      for (const auto& cyc : cs)
        for (std::size_t i = 0; i < cyc.size(); ++i) p[t.gen(cyc[i])] = t.gen(cyc[(i + 1) % cyc.size()]);
      listed_gens.push_back(p);
    }
    for (const Perm& p : perm::generate(listed_gens, sys->rank())) want.insert(restrict(p));
    c.expect(got == want, tag + " special-vertex permutations");
  };
  for (int l = 1; l <= 8; ++l) {
    std::vector<int> all(l + 1);
    for (int i = 0; i <= l; ++i) all[i] = i;
    check_family('A', l, {{all}});
  }
  for (int l = 3; l <= 8; ++l) check_family('B', l, {{{0, 1}}});
  for (int l = 2; l <= 8; ++l) check_family('C', l, {{{0, l}}});
  for (int l = 4; l <= 8; ++l) {
    if (l % 2)
      check_family('D', l, {{{0, l - 1, 1, l}}});
    else
      check_family('D', l, {{{0, 1}, {l - 1, l}}, {{0, l - 1}, {1, l}}});
  }
  check_family('E', 6, {{{0, 1, 6}}});
  check_family('E', 7, {{{0, 7}}});
  check_family('E', 8, {});
  check_family('F', 4, {});
  check_family('G', 2, {});
}

void criterion6(Check& c) {
  std::vector<SystemPtr> systems;
  for (int l = 1; l <= 6; ++l) systems.push_back(affine_system('A', l));
  for (int l = 3; l <= 6; ++l) systems.push_back(affine_system('B', l));
  for (int l = 2; l <= 6; ++l) systems.push_back(affine_system('C', l));
  for (int l = 4; l <= 6; ++l) systems.push_back(affine_system('D', l));
  systems.push_back(affine_system('E', 6));
  systems.push_back(affine_system('F', 4));
  systems.push_back(affine_system('G', 2));
  int cases = 0, table_ok = 0, lattice_ok = 0;
  for (const auto& sys : systems) {
    auto g = affine_geometry(*sys);
    Subset fin = sys->all() & ~sub::bit(g->node());
    for (Subset I = fin; I != 0; I = (I - 1) & fin) {
      if (sub::size(I) > g->dim() - 1) continue;
      TransversalSystem T = transversal_system(*sys, I);
      auto oracle = group(xi_eta_oracle(T), T.size());
      bool t_ok = group(xi_eta(T), T.size()) == oracle;
      bool l_ok = group(xi_eta_lattice(T), T.size()) == oracle;
      ++cases;
      table_ok += t_ok;
      lattice_ok += l_ok;
      c.expect(t_ok, "table " + g->tag().name() + " " + sys->subset_name(I));
    }
  }
  c.note(str(cases) + " subsets; table agrees on " + str(table_ok) + ", coweight computation on " + str(lattice_ok));
}

void criterion7(Check& c) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> len(1, kAffineMaxLength);
  for (auto sys : {affine_system('A', 2), affine_system('C', 2), affine_system('G', 2), affine_system('A', 3)}) {
    const std::string tag = affine_geometry(*sys)->tag().name();
    int compared = 0, skipped = 0, multi = 0;
    while (compared < kAffineWords) {
      Element w = reduce(*sys, testing_util::random_word(rng, sys->rank(), len(rng)));
      w = cyclically_reduce(TwistedElement(w)).value.body;
      QVec h = translation_power(w);
      if (std::all_of(h.begin(), h.end(), [](const Rational& x) { return x == 0; })) {
        ++skipped;
        continue;
      }
      AffineGraphReport R = structural_graph_affine(w);
      GraphMatch m = match_graphs(R.graph, bfs_structural_oracle(w));
      c.expect(m.ok, tag + " " + w.str() + ": " + m.reason);
      c.expect(certificates_replay(R.graph, R.reduced), tag + " " + w.str() + " certificates");
      multi += R.graph.size() > 1;
      ++compared;
    }
    c.note(tag + ": " + str(compared) + " compared, " + str(multi) + " with several vertices, " + str(skipped) +
           " of finite order skipped");
  }
}

void criterion8(Check& c) {
  std::vector<SystemPtr> systems{finite_system('A', 1), finite_system('A', 2), finite_system('A', 3),
                                 finite_system('A', 4), finite_system('B', 2), finite_system('B', 3),
                                 finite_system('B', 4), finite_system('D', 4), finite_system('F', 4),
                                 finite_system('H', 3), finite_system('H', 4)};
  for (int m = 5; m <= 12; ++m) systems.push_back(finite_system('I', 2, m));
  long long elements = 0, classes = 0;
  for (const auto& sys : systems) {
    const std::string tag = sys->type()[0].name();
    for (const auto& rep : finite_conjugacy_oracle(*sys, sys->all(), {})) {
      ++classes;
      const auto& st = rep.structure;
      std::set<Subset> supports;
      for (std::size_t i = 0; i < st.classes.size(); ++i) {
        supports.insert(st.graph.vertices()[i].subset);
        for (const TwistedElement& u : st.classes[i]) {
          ++elements;
          c.expect(u.support() == st.graph.vertices()[i].subset, tag + " support constant on " + u.body.str());
          for (std::size_t j = 0; j < st.classes.size(); ++j)
            c.expect(same_cyc_class_finite(u, st.classes[j].front()) == (i == j),
                     tag + " support criterion " + u.body.str());
          GraphMatch m = match_graphs(finite_structural_graph(u), st);
          c.expect(m.ok, tag + " " + u.body.str() + ": " + m.reason);
        }
      }
      c.expect(supports.size() == st.classes.size(), tag + " shift classes have distinct supports");
    }
  }
  c.note(str(systems.size()) + " types, " + str(classes) + " classes, " + str(elements) +
         " cyclically reduced elements");
}

void criterion9(Check& c) {
  {
    auto sys = bipartite_system();
    Element x = bipartite_core(*sys);
    Element s1 = Element::generator(*sys, 0);
    Element w = s1 * x.pow(2);
    CoreSplitting cs = core_splitting(w);
    c.expect(cs.n == 2 && cs.std_a == s1 && cs.std_core == x, "bipartite s1 x^2 splits as s1 * x^2");
    for (const TwistedElement& u : cyc_class(w).elements) {
      CoreSplitting k = core_splitting(u.body);
      Element v = u.body.conj_by(k.standardizer);
      c.expect(k.a * k.core.pow(k.n) == u.body && k.std_a * k.std_core.pow(k.n) == v &&
                   is_core_splitting(v, k.I, k.n, k.std_a, k.std_core),
               "round trip " + u.body.str());
    }
    IndefiniteGraphReport R = structural_graph_indefinite(w);
    c.expect(R.n_w == 2, "bipartite s1 x^2 has centraliser degree 2");
  }
  for (SystemPtr sys : {testing_util::triangle(3, 3, 7), bipartite_system()}) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> len(1, kIndefiniteMaxLength);
    int compared = 0, skipped = 0;
    while (compared < kIndefiniteWords) {
      Element w = reduce(*sys, testing_util::random_word(rng, sys->rank(), len(rng)));
      if (parabolic_closure(w).K != sys->all()) {
        ++skipped;
        continue;
      }
      ++compared;
      const std::string tag = label(*sys) + " " + w.str();
      IndefiniteGraphReport R = structural_graph_indefinite(w);
      GraphMatch m = match_graphs(R.graph, bfs_structural_oracle(w));
      c.expect(m.ok, tag + ": " + m.reason);
      c.expect(certificates_replay(R.graph, R.reduced), tag + " certificates");
      CoreSplitting k = core_splitting(R.reduced);
      Element v = R.reduced.conj_by(k.standardizer);
      c.expect(k.a * k.core.pow(k.n) == R.reduced && is_core_splitting(v, k.I, k.n, k.std_a, k.std_core),
               tag + " core splitting round trip");
    }
    c.note(label(*sys) + ": " + str(compared) + " words with full parabolic closure, " + str(skipped) + " skipped");
  }
}

void criterion10(Check& c) {
  std::mt19937 rng(10);
  for (auto sys : {affine_system('A', 3), affine_system('G', 2), finite_system('H', 3), testing_util::triangle(3, 3, 7),
                   finite_system('I', 2, 8), affine_system('E', 6)}) {
    const std::string tag = label(*sys);
    int bad = 0;
    for (int trial = 0; trial < kMatsumotoPairs; ++trial) {
      Word p = testing_util::random_word(rng, sys->rank(), 12), q = testing_util::random_word(rng, sys->rank(), 12);
      Element w = reduce(*sys, p);
      Word a = testing_util::random_reduced_word(rng, w), b = testing_util::random_reduced_word(rng, w);
      Element wa = reduce(*sys, a), wb = reduce(*sys, b);
      Word pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      bool ok = wa == wb && wa.word() == wb.word() && static_cast<int>(a.size()) == w.length() &&
                reduce(*sys, pq) == w * reduce(*sys, q) && reduce(*sys, w.word()) == w;
      bad += !ok;
    }
    c.expect(bad == 0, tag + " Matsumoto round trips (" + str(bad) + " bad)");
  }

  for (auto sys : {finite_system('D', 4), finite_system('B', 4), finite_system('H', 4), affine_system('C', 3)}) {
    const std::string tag = label(*sys);
    int splits = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Element w = reduce(*sys, testing_util::random_word(rng, sys->rank(), 1 + trial % 20));
      for (Subset I = 1; I <= sys->all(); ++I) {
        if (!sys->spherical(I) || !normalizes(w, I)) continue;
        NormalizerSplit s = normalizer_split(w, I);
        ++splits;
        c.expect(s.w_I * s.n_I == w && s.w_I.length() + s.n_I.length() == w.length() &&
                     sub::within(s.w_I.support(), I) && induced_permutation(s.n_I, I).has_value(),
                 tag + " normalizer split of " + w.str());
      }
    }
    for (Subset K = 1; K <= sys->all(); ++K) {
      if (!sys->spherical(K)) continue;
      Element w0 = longest_element(*sys, K);
      Perm op = opposition(*sys, K);
      for (Subset I = K; I != 0; I = (I - 1) & K) {
        if (perm::apply(op, I) != I) continue;
        NormalizerSplit s = normalizer_split(w0, I);
        ++splits;
        c.expect(s.w_I == longest_element(*sys, I) && s.w_I.length() + s.n_I.length() == w0.length(),
                 tag + " normalizer split of w0(" + sys->subset_name(K) + ")");
      }
    }
    c.note(tag + ": " + str(splits) + " normalizer splits");
  }

  for (auto sys : {affine_system('E', 6), affine_system('C', 4), finite_system('H', 4), affine_system('G', 2)}) {
    for (Subset K = 1; K <= sys->all(); ++K) {
      if (!sys->spherical(K)) continue;
      Element w0 = longest_element(*sys, K);
      Perm op = opposition(*sys, K);
      bool ok = (w0 * w0).is_identity() && perm::apply(op, K) == K;
      for (int s : sub::members(K))
        ok = ok && w0.column(s) == root::negate(root::simple(*sys, op[s])) &&
             Element::generator(*sys, s).conj_by(w0) == Element::generator(*sys, op[s]);
      c.expect(ok, "w0(" + sys->subset_name(K) + ") involution and opposition");
    }
  }

  int straight = 0, sampled = 0;
  std::vector<SystemPtr> affine{affine_system('A', 2), affine_system('C', 2), affine_system('G', 2),
                                affine_system('A', 3)};
  for (int i = 0; i < kStraightSamples; ++i) {
    const auto& sys = affine[i % affine.size()];
    Element w = reduce(*sys, testing_util::random_word(rng, sys->rank(), 1 + i % 12));
    if (i % 3 == 0) w = cyclically_reduce(TwistedElement(w)).value.body;
    int k = 1;
    translation_power(w, &k);
    Element wk = w.pow(k);
    c.expect(is_translation(wk), "w^k is a translation for " + w.str());
    bool criterion = wk.length() == k * w.length();
    bool direct = true;
    for (int m = 2; m <= 4 * k; ++m) direct = direct && w.pow(m).length() == m * w.length();
    c.expect(criterion == direct, "straightness of " + w.str());
    straight += direct;
    ++sampled;
  }
  c.note(str(sampled) + " affine samples, " + str(straight) + " straight");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double limit;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "D7^(1) four-cycle with edge labels", kLimitD7, criterion1},
      {2, "D7^(1) quotient by Xi_eta", 0, criterion2},
      {3, "E7^(1) suite", kLimitE7, criterion3},
      {4, "A_{4n+1}^(1) large-diameter family, n = 1, 2", 0, criterion4},
      {5, "extended automorphism groups", 0, criterion5},
      {6, "Xi_eta table against the oracle, rank <= 6", kLimitXiSweep, criterion6},
      {7, "affine pipeline against the oracle", kLimitAffineOracle, criterion7},
      {8, "finite pipeline against class enumeration", 0, criterion8},
      {9, "indefinite pipeline against the oracle", 0, criterion9},
      {10, "element layer properties", 0, criterion10},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit > 0) c.expect(secs < cr.limit, "runtime limit " + str(static_cast<long long>(cr.limit)) + " s");
    failed += !c.ok();
    std::printf("criterion %2d %s  %s [%.1f s] %s\n", cr.id, c.ok() ? "PASS" : "FAIL", cr.title.c_str(), secs,
                c.summary().c_str());
    std::fflush(stdout);
  }
  return failed;
}
