#include "coxgraph/affine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "coxgraph/errors.hpp"
#include "coxgraph/finord.hpp"
#include "certify.hpp"

namespace coxgraph {

using detail::bfs_tree;
using detail::BfsTree;
using detail::link;
using detail::spherical_subsets;

namespace {

struct Solution {
  std::optional<QVec> particular;
  std::vector<QVec> kernel;
};

// A x = b over Q, A with n columns.
Solution solve(QMat A, QVec b, int n) {
  const int m = static_cast<int>(A.size());
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int r = row;
    while (r < m && A[r][col] == 0) ++r;
    if (r == m) continue;
    std::swap(A[r], A[row]);
    std::swap(b[r], b[row]);
    Rational inv = 1 / A[row][col];
    for (auto& x : A[row]) x *= inv;
    b[row] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][col] == 0) continue;
      Rational f = A[i][col];
      for (int j = 0; j < n; ++j) A[i][j] -= f * A[row][j];
      b[i] -= f * b[row];
    }
    pivots.push_back(col);
    ++row;
  }
  Solution out;
  bool consistent = true;
  for (int i = row; i < m; ++i) consistent = consistent && b[i] == 0;
  if (consistent) {
    QVec x(n, 0);
    for (int i = 0; i < row; ++i) x[pivots[i]] = b[i];
    out.particular = x;
  }
  std::vector<bool> pivot(n, false);
  for (int c : pivots) pivot[c] = true;
  for (int f = 0; f < n; ++f) {
    if (pivot[f]) continue;
    QVec v(n, 0);
    v[f] = 1;
    for (int i = 0; i < row; ++i) v[pivots[i]] = -A[i][f];
    out.kernel.push_back(v);
  }
  return out;
}

QVec add(const QVec& a, const QVec& b) {
  QVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

QVec sub_vec(const QVec& a, const QVec& b) {
  QVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return denominator(x) == 1; });
}

// Point of x0 + span(kernel) with coefficients depending on attempt.
QVec generic_point(const QVec& x0, const std::vector<QVec>& kernel, int attempt) {
  QVec p = x0;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    Rational c(static_cast<long long>(2 * j + 1 + attempt), static_cast<long long>(97 + 31 * j + 13 * attempt));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += c * kernel[j][i];
  }
  return p;
}

struct AlcoveWalk {
  Element b;      // p = b(q) with q in the closed fundamental alcove
  QVec q;
  Subset walls = 0;  // walls through q
};

AlcoveWalk walk_to_alcove(const AffineGeometry& g, QVec p) {
  const CoxeterSystem& sys = g.system();
  Word letters;
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw Error(ErrorCode::InternalMismatch, "alcove walk did not terminate");
    int found = -1;
    for (int s = 0; s < sys.rank() && found < 0; ++s)
      if (g.wall(s, p) < 0) found = s;
    if (found < 0) break;
    p = g.reflect(found, p);
    letters.push_back(found);
  }
  AlcoveWalk out{reduce(sys, letters), p, 0};
  for (int s = 0; s < sys.rank(); ++s)
    if (g.wall(s, p) == 0) out.walls |= sub::bit(s);
  return out;
}

// Standardizes the pointwise fixer of the affine subspace x0 + span(kernel): returns (v, I) with
// fixer = v W_I v^-1 and v minimal in v W_I.
std::pair<Element, Subset> standardize_fixer(const AffineGeometry& g, const QVec& x0, const std::vector<QVec>& kernel) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    AlcoveWalk wk = walk_to_alcove(g, generic_point(x0, kernel, attempt));
    Element binv = wk.b.inverse();
    std::vector<QVec> probes{x0};
    for (const QVec& k : kernel) probes.push_back(add(x0, k));
    bool ok = true;
    for (const QVec& x : probes) {
      QVec y = affine_action(binv, x);
      for (int s : sub::members(wk.walls)) ok = ok && g.wall(s, y) == 0;
    }
    if (ok) return {min_coset_rep(wk.b, wk.walls, Side::Right), wk.walls};
  }
  throw Error(ErrorCode::InternalMismatch, "no generic point found on the fixed subspace");
}

Perm compose_all(const std::vector<Perm>& ps, int n) {
  Perm out = perm::identity(n);
  for (const Perm& p : ps) out = perm::compose(p, out);
  return out;
}

}  // namespace

AffineGeometry::AffineGeometry(const CoxeterSystem& sys) : sys_(&sys) {
  if (!sys.is_irreducible_affine()) throw Error(ErrorCode::NotAffine, "system is not of irreducible affine type");
  tag_ = sys.type().front();
  node_ = tag_.gen(0);
  coord_.assign(sys.rank(), -1);
  for (int s = 0; s < sys.rank(); ++s) {
    if (s == node_) continue;
    coord_[s] = static_cast<int>(finite_.size());
    finite_.push_back(s);
  }
  const int n = dim();
  const Representation& rep = sys.rep();
  for (int s : finite_) theta_.push_back(tag_.marks[tag_.vertex_of(s)]);
  // sum_i c_i a(i, j) = -a(node, j) for every finite j.
  QMat A(n, QVec(n));
  QVec b(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) A[j][i] = rep.a_int(finite_[i], finite_[j]);
    b[j] = -rep.a_int(node_, finite_[j]);
  }
  Solution sol = solve(A, b, n);
  if (!sol.particular || !sol.kernel.empty() || !integral(*sol.particular))
    throw Error(ErrorCode::InternalMismatch, "coroot of the highest root is not integral");
  for (const Rational& c : *sol.particular) theta_vee_.push_back(static_cast<long long>(numerator(c)));
}

Rational AffineGeometry::pairing(int s, const QVec& x) const {
  const Representation& rep = sys_->rep();
  Rational out = 0;
  for (int i = 0; i < dim(); ++i)
    if (x[i] != 0) out += x[i] * rep.a_int(finite_[i], s);
  return out;
}

Rational AffineGeometry::wall(int s, const QVec& x) const { return pairing(s, x) + (s == node_ ? 1 : 0); }

QVec AffineGeometry::reflect(int s, const QVec& x) const {
  QVec out = x;
  Rational f = wall(s, x);
  if (f == 0) return out;
  if (s == node_) {
    for (int i = 0; i < dim(); ++i) out[i] += f * theta_vee_[i];
  } else {
    out[coord_[s]] -= f;
  }
  return out;
}

Rational AffineGeometry::root_function(const RootVector& beta, const QVec& x) const {
  const std::int64_t c0 = beta[node_];
  Rational out = c0;
  for (int k = 0; k < dim(); ++k) {
    std::int64_t gk = beta[finite_[k]] - c0 * theta_[k];
    if (gk != 0) out += Rational(gk) * pairing(finite_[k], x);
  }
  return out;
}

std::shared_ptr<const AffineGeometry> affine_geometry(const CoxeterSystem& sys) {
  return sys.memo<AffineGeometry>(2, 0, [&] { return AffineGeometry(sys); });
}

QVec AffineMap::operator()(const QVec& x) const {
  QVec out = h;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (U[i][j] != 0 && x[j] != 0) out[i] += U[i][j] * x[j];
  return out;
}

AffineMap AffineMap::operator*(const AffineMap& o) const {
  const std::size_t n = h.size();
  AffineMap out;
  out.U.assign(n, QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (U[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out.U[i][j] += U[i][k] * o.U[k][j];
    }
  out.h = (*this)(o.h);
  return out;
}

bool AffineMap::is_translation() const {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (U[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

AffineMap AffineMap::identity(int n) {
  AffineMap m;
  m.U.assign(n, QVec(n, 0));
  for (int i = 0; i < n; ++i) m.U[i][i] = 1;
  m.h.assign(n, 0);
  return m;
}

QVec affine_action(const Element& w, const QVec& x) {
  auto g = affine_geometry(w.system());
  if (static_cast<int>(x.size()) != g->dim()) throw Error(ErrorCode::PreconditionViolated, "point has the wrong dimension");
  QVec p = x;
  const Word& word = w.word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) p = g->reflect(*it, p);
  return p;
}

AffineMap affine_map(const Element& w) {
  auto g = affine_geometry(w.system());
  const int n = g->dim();
  AffineMap m;
  m.h = affine_action(w, QVec(n, 0));
  m.U.assign(n, QVec(n, 0));
  for (int j = 0; j < n; ++j) {
    QVec e(n, 0);
    e[j] = 1;
    QVec col = sub_vec(affine_action(w, e), m.h);
    for (int i = 0; i < n; ++i) m.U[i][j] = col[i];
  }
  return m;
}

bool is_translation(const Element& w) {
  auto g = affine_geometry(w.system());
  const int n = g->dim();
  QVec d0 = affine_action(w, QVec(n, 0));
  for (int j = 0; j < n; ++j) {
    QVec e(n, 0);
    e[j] = 1;
    if (sub_vec(affine_action(w, e), e) != d0) return false;
  }
  return true;
}

Element translation_element(const CoxeterSystem& sys, const QVec& lambda) {
  auto g = affine_geometry(sys);
  const int n = g->dim();
  if (static_cast<int>(lambda.size()) != n) throw Error(ErrorCode::PreconditionViolated, "vector has the wrong dimension");
  // Interior point c of the fundamental alcove: <alpha_s, c> = eps for every finite s.
  long long h = 1;
  for (long long m : g->theta()) h += m;
  QMat A(n, QVec(n));
  QVec b(n, Rational(1, h));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) A[j][i] = sys.rep().a_int(g->finite()[i], g->finite()[j]);
  QVec c = *solve(A, b, n).particular;
  AlcoveWalk wk = walk_to_alcove(*g, add(c, lambda));
  if (wk.q != c || !affine_map(wk.b).is_translation())
    throw Error(ErrorCode::PreconditionViolated, "vector is not in the coroot lattice");
  return wk.b;
}

namespace {

int map_order(const AffineMap& m) {
  const int n = static_cast<int>(m.h.size());
  AffineMap lin = m;
  lin.h.assign(n, 0);
  AffineMap p = lin;
  for (int k = 1; k <= 1000; ++k) {
    if (p.is_translation()) return k;
    p = p * lin;
  }
  throw Error(ErrorCode::InternalMismatch, "linear part has no finite order");
}

AffineMap map_power(const AffineMap& m, int k) {
  AffineMap out = AffineMap::identity(static_cast<int>(m.h.size()));
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

int linear_order(const Element& w) { return map_order(affine_map(w)); }

QVec translation_power(const Element& w, int* k) {
  AffineMap m = affine_map(w);
  int order = map_order(m);
  if (k) *k = order;
  return map_power(m, order).h;
}

Standardization p_w_infty_standardize(const Element& w) {
  auto g = affine_geometry(w.system());
  const CoxeterSystem& sys = w.system();
  QVec h = translation_power(w);
  if (is_zero(h)) throw Error(ErrorCode::FiniteOrder, "element has finite order");
  Word letters;
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw Error(ErrorCode::InternalMismatch, "chamber walk did not terminate");
    int found = -1;
    for (int s : g->finite())
      if (found < 0 && g->pairing(s, h) < 0) found = s;
    if (found < 0) break;
    h = g->reflect(found, h);
    letters.push_back(found);
  }
  Standardization out;
  for (int s : g->finite())
    if (g->pairing(s, h) == 0) out.I_eta |= sub::bit(s);
  out.a_w = min_coset_rep(reduce(sys, letters), out.I_eta, Side::Right);
  out.v = w.conj_by(out.a_w);
  out.direction = h;
  return out;
}

int TransversalSystem::index_of(int ambient_gen) const {
  for (int i = 0; i < size(); ++i)
    if (gen_of[i] == ambient_gen) return i;
  return -1;
}

Subset TransversalSystem::lift(Subset ambient_set) const {
  Subset out = 0;
  for (int s : sub::members(ambient_set)) {
    int i = index_of(s);
    if (i < 0) throw Error(ErrorCode::PreconditionViolated, "generator outside I_eta");
    out |= sub::bit(i);
  }
  return out;
}

Element TransversalSystem::expand(const Word& w) const {
  Element out(*ambient);
  for (int s : w) out = out * elements.at(s);
  return out;
}

Element TransversalSystem::longest(Subset L) const { return expand(longest_element(*sys, L).word()); }

Word TransversalSystem::rewrite(const Element& g) const {
  Word rev;
  Element x = g;
  for (int guard = 0; !x.is_identity(); ++guard) {
    if (guard > 100000) throw Error(ErrorCode::InternalMismatch, "rewriting did not terminate");
    int found = -1;
    for (int i = 0; i < size() && found < 0; ++i)
      if (root::sign(*ambient, x.apply(roots[i])) < 0) found = i;
    if (found < 0) throw Error(ErrorCode::NotStandard, "element does not lie in W^eta");
    x = x * elements[found];
    rev.push_back(found);
  }
  return Word(rev.rbegin(), rev.rend());
}

std::optional<int> TransversalSystem::generator_of_root(const RootVector& beta) const {
  RootVector neg = root::negate(beta);
  for (int i = 0; i < size(); ++i)
    if (roots[i] == beta || roots[i] == neg) return i;
  return std::nullopt;
}

TransversalSystem transversal_system(const CoxeterSystem& sys, Subset I_eta) {
  auto g = affine_geometry(sys);
  if (sub::has(I_eta, g->node()) || !sub::within(I_eta, sys.all()))
    throw Error(ErrorCode::PreconditionViolated, "I_eta must avoid the affine node");
  TransversalSystem T;
  T.ambient = &sys;
  T.I_eta = I_eta;
  T.components = components(sys, I_eta);
  auto min_kac = [&](Subset c) {
    int best = 1 << 30;
    for (int s : sub::members(c)) best = std::min(best, g->kac(s));
    return best;
  };
  std::sort(T.components.begin(), T.components.end(), [&](Subset a, Subset b) { return min_kac(a) < min_kac(b); });
  if (I_eta == 0) return T;

  const Representation& rep = sys.rep();
  for (int s : sub::members(I_eta)) {
    T.gen_of.push_back(s);
    T.elements.push_back(Element::generator(sys, s));
    T.roots.push_back(root::simple(sys, s));
  }
  RootVector delta(sys.rank(), 0);
  for (int s = 0; s < sys.rank(); ++s) delta[s] = g->tag().marks[g->kac(s)];
  std::vector<int> heights;
  for (Subset c : T.components) {
    auto gens = sub::members(c);
    const int n = static_cast<int>(gens.size());
    Matrix cartan(n, std::vector<int>(n));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) cartan[p][q] = static_cast<int>(rep.a_int(gens[p], gens[q]));
    auto roots = positive_roots(cartan);
    const std::vector<long long>* theta = &roots.front();
    long long best = -1;
    for (const auto& rt : roots) {
      long long h = 0;
      for (long long x : rt) h += x;
      if (h > best) {
        best = h;
        theta = &rt;
      }
    }
    heights.push_back(static_cast<int>(best));
    RootVector beta = delta;
    for (int p = 0; p < n; ++p) beta[gens[p]] -= (*theta)[p];
    Word word = reflection_word(sys, beta);
    T.tau.push_back(static_cast<int>(T.gen_of.size()));
    T.gen_of.push_back(-1);
    T.tau_words.push_back(word);
    T.elements.push_back(reduce(sys, word));
    T.roots.push_back(beta);
  }
  const int N = T.size();
  Matrix m(N, std::vector<int>(N, 1));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      auto o = order(T.elements[i] * T.elements[j]);
      m[i][j] = m[j][i] = o ? static_cast<int>(*o) : kInf;
    }
  std::vector<std::string> names;
  for (int i = 0; i < N; ++i) names.push_back(T.gen_of[i] >= 0 ? sys.names()[T.gen_of[i]] : "");
  for (std::size_t c = 0; c < T.tau.size(); ++c) names[T.tau[c]] = "tau" + std::to_string(c + 1);
  T.sys = CoxeterSystem::make(m, names);
  for (std::size_t c = 0; c < T.components.size(); ++c) {
    Subset members = T.lift(T.components[c]) | sub::bit(T.tau[c]);
    TypeTag ext = classify_component(*T.sys, members, T.tau[c]);
    TypeTag fin = classify_component(sys, T.components[c]);
    bool family_ok = ext.family == fin.family || (fin.family == 'B' && (ext.family == 'B' || ext.family == 'C')) ||
                     (fin.family == 'A' && fin.rank == 1 && ext.family == 'A');
    if (ext.kind != Kind::Affine || ext.rank != fin.rank || !family_ok)
      throw Error(ErrorCode::InternalMismatch, "extension of " + sys.subset_name(T.components[c]) + " is " + ext.name());
    // Height of the highest root is the Coxeter number minus one.
    long long h = 0;
    for (int mk : ext.marks) h += mk;
    if (h - 1 != heights[c]) throw Error(ErrorCode::InternalMismatch, "highest root height disagrees with the marks");
    T.ext.push_back(ext);
    T.ext_members.push_back(members);
  }
  return T;
}

StandardSplitting standard_splitting(const Element& w) {
  auto g = affine_geometry(w.system());
  const int n = g->dim();
  AffineMap m = affine_map(w);
  int k = map_order(m);
  QVec ht = map_power(m, k).h;
  if (is_zero(ht)) throw Error(ErrorCode::FiniteOrder, "element has finite order");
  QVec mu = ht;
  for (auto& x : mu) x /= k;
  // Fixed points of x -> w(x - mu): (U - 1) x = mu - h.
  QMat A = m.U;
  for (int i = 0; i < n; ++i) A[i][i] -= 1;
  Solution sol = solve(A, sub_vec(mu, m.h), n);
  if (!sol.particular) throw Error(ErrorCode::InternalMismatch, "elliptic part has no fixed point");
  auto [v, I] = standardize_fixer(*g, *sol.particular, sol.kernel);
  Element x = w.conj_by(v);
  NormalizerSplit split = normalizer_split(x, I);
  StandardSplitting out;
  out.v = v;
  out.I = I;
  out.w0 = v * split.w_I * v.inverse();
  out.winf = v * split.n_I * v.inverse();
  return out;
}

DeltaIw delta_and_Iw_affine(const Element& v, const TransversalSystem& T) {
  DeltaIw out;
  out.splitting = standard_splitting(v);
  const int N = T.size();
  out.delta = perm::identity(N);
  for (int i = 0; i < N; ++i) {
    auto j = T.generator_of_root(out.splitting.winf.apply(T.roots[i]));
    if (!j) throw Error(ErrorCode::NotStandard, "winf does not normalize S^eta");
    out.delta[i] = *j;
  }
  if (N > 0 && !is_diagram_automorphism(*T.sys, out.delta, T.sys->all()))
    throw Error(ErrorCode::NotStandard, "conjugation by winf is not a diagram automorphism of S^eta");
  Subset supp = 0;
  if (!out.splitting.w0.is_identity()) {
    if (N == 0) throw Error(ErrorCode::NotStandard, "torsion part outside W^eta");
    for (int s : T.rewrite(out.splitting.w0)) supp |= sub::bit(s);
  }
  out.I_w = N > 0 ? perm::closure({out.delta}, supp) : 0;
  return out;
}

Perm sigma_gen(const TransversalSystem& T, int s) {
  const int N = T.size();
  for (std::size_t c = 0; c < T.components.size(); ++c)
    if (sub::has(T.components[c], s)) return sigma_s(*T.sys, T.ext[c], T.tau[c], T.index_of(s));
  return perm::identity(N);
}

Perm sigma_component(const TransversalSystem& T, int c) {
  auto g = affine_geometry(*T.ambient);
  int best = -1;
  for (int s : sub::members(T.components[c]))
    if (best < 0 || g->kac(s) < g->kac(best)) best = s;
  return sigma_gen(T, best);
}

std::vector<Perm> xi_full(const TransversalSystem& T) {
  std::vector<Perm> out;
  for (const TypeTag& ext : T.ext)
    for (const Perm& p : extended_autgroup(*T.sys, ext)) out.push_back(p);
  return out;
}

std::vector<Perm> xi_eta(const TransversalSystem& T) {
  if (T.I_eta == 0) return {};
  auto g = affine_geometry(*T.ambient);
  const TypeTag& tag = g->tag();
  const int l = tag.rank;
  const int N = T.size();
  const int r = static_cast<int>(T.components.size());
  std::set<int> Ibar;
  for (int s : sub::members(T.I_eta)) Ibar.insert(g->kac(s));
  auto in_I = [&](int k) { return Ibar.count(k) != 0; };
  // Kac indices outside I_eta, optionally skipping some.
  auto outside_even = [&](std::set<int> skip) {
    for (int k = 0; k <= l; ++k)
      if (!in_I(k) && !skip.count(k) && k % 2 != 0) return false;
    return true;
  };
  std::vector<Perm> sigma;
  for (int c = 0; c < r; ++c) sigma.push_back(sigma_component(T, c));
  auto sg = [&](int k) { return sigma_gen(T, tag.gen(k)); };
  auto prod = [&](std::vector<Perm> ps) { return compose_all(ps, N); };
  auto sq = [&](const Perm& p) { return perm::compose(p, p); };
  auto is_I = [&](std::vector<int> ks) {
    Subset want = 0;
    for (int k : ks) want |= sub::bit(tag.gen(k));
    return want == T.I_eta;
  };
  // sigma_1^2, sigma_1 sigma_j.
  auto even_group = [&](int upto) {
    std::vector<Perm> out{sq(sigma[0])};
    for (int j = 1; j < upto; ++j) out.push_back(prod({sigma[0], sigma[j]}));
    return out;
  };

  switch (tag.family) {
    case 'A': {
      bool isolated = true;
      for (int k = 0; k <= l; ++k)
        for (int k2 = k + 1; k2 <= l; ++k2)
          if (!in_I(k) && !in_I(k2) && g->system().adjacent(tag.gen(k), tag.gen(k2))) isolated = false;
      if (!isolated) return xi_full(T);
      std::vector<Perm> out;
      for (int j = 1; j < r; ++j) out.push_back(prod({perm::inverse(sigma[0]), sigma[j]}));
      return out;
    }
    case 'B':
      if (outside_even({})) return even_group(r);
      return xi_full(T);
    case 'C': {
      if (!in_I(l)) return xi_full(T);
      return std::vector<Perm>(sigma.begin(), sigma.end() - 1);
    }
    case 'D': {
      if (in_I(l - 2) && in_I(l - 1) && in_I(l)) {
        if (outside_even({})) return even_group(r);
        return sigma;
      }
      if (in_I(l - 1) && in_I(l)) {
        if (outside_even({})) {
          auto out = even_group(r - 2);
          out.push_back(prod({sigma[0], sigma[r - 2], sigma[r - 1]}));
          return out;
        }
        std::vector<Perm> out(sigma.begin(), sigma.end() - 2);
        out.push_back(prod({sigma[r - 2], sigma[r - 1]}));
        return out;
      }
      bool both_out = !in_I(l - 1) && !in_I(l);
      if (l % 2 == 0 && outside_even({l - 1, l}) && !both_out) return even_group(r);
      return xi_full(T);
    }
    case 'E':
      if (l == 6) {
        if (is_I({1, 3, 5, 6}) || is_I({1, 2, 3, 5, 6})) return {sg(2), prod({sg(3), sg(5)})};
        return xi_full(T);
      }
      if (l == 7) {
        for (Subset extra = 0; extra < 4; ++extra) {
          std::vector<int> ks{2, 5, 6, 7};
          if (extra & 1) ks.push_back(1);
          if (extra & 2) ks.push_back(3);
          if (is_I(ks)) return {sg(1), sg(3), prod({sg(2), sg(5)})};
        }
        if (is_I({2, 3, 4, 5, 6, 7})) return {sg(3)};
        if (is_I({1, 2, 3, 4, 5, 7})) return {prod({sg(2), sg(7)})};
        if (is_I({2, 3, 4, 5, 7})) return {sg(3), prod({sg(2), sg(7)})};
      }
      return xi_full(T);
    default:
      return xi_full(T);
  }
}

namespace {

// Solves C^T x = b for the Cartan block C of a component.
QVec solve_transpose(const std::vector<int>& gens, const Representation& rep, QVec b) {
  const int n = static_cast<int>(gens.size());
  QMat A(n, QVec(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) A[k][j] = rep.a_int(gens[j], gens[k]);
  for (int col = 0; col < n; ++col) {
    int r = col;
    while (A[r][col] == 0) ++r;
    std::swap(A[r], A[col]);
    std::swap(b[r], b[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col || A[i][col] == 0) continue;
      Rational f = A[i][col] / A[col][col];
      for (int j = 0; j < n; ++j) A[i][j] -= f * A[col][j];
      b[i] -= f * b[col];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

bool congruent(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (denominator(Rational(a[i] - b[i])) != 1) return false;
  return true;
}

}  // namespace

std::vector<Perm> xi_eta_lattice(const TransversalSystem& T) {
  if (T.size() == 0) return {};
  const CoxeterSystem& sys = *T.ambient;
  const Representation& rep = sys.rep();
  auto g = affine_geometry(sys);
  const int N = T.size();
  struct Block {
    std::vector<int> gens;
    std::vector<std::pair<QVec, Perm>> classes;  // minuscule coweights and their automorphisms
  };
  std::vector<Block> blocks;
  for (std::size_t c = 0; c < T.components.size(); ++c) {
    Block blk;
    blk.gens = sub::members(T.components[c]);
    const int n = static_cast<int>(blk.gens.size());
    for (int p = 0; p < n; ++p) {
      int idx = T.index_of(blk.gens[p]);
      if (!sub::has(T.ext[c].special, idx)) continue;
      QVec e(n, 0);
      e[p] = 1;
      blk.classes.emplace_back(solve_transpose(blk.gens, rep, e), sigma_s(*T.sys, T.ext[c], T.tau[c], idx));
    }
    blocks.push_back(std::move(blk));
  }
  std::vector<Perm> out;
  for (int i : g->finite()) {
    Perm total = perm::identity(N);
    for (const Block& blk : blocks) {
      QVec b;
      for (int k : blk.gens) b.push_back(Rational(rep.a_int(i, k)));
      QVec x = solve_transpose(blk.gens, rep, b);
      if (congruent(x, QVec(x.size(), 0))) continue;
      const Perm* found = nullptr;
      for (const auto& [y, p] : blk.classes)
        if (congruent(x, y)) found = &p;
      if (!found) throw Error(ErrorCode::InternalMismatch, "coweight class has no special vertex");
      total = perm::compose(*found, total);
    }
    out.push_back(total);
  }
  return out;
}

namespace {

bool same_vertices(const ConjGraph& a, const ConjGraph& b) {
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.vertices()[i].subset != b.vertices()[i].subset) return false;
  for (std::size_t i = 0; i < a.edges().size(); ++i)
    if (a.edges()[i] != b.edges()[i]) return false;
  return true;
}

}  // namespace

AffineGraphReport structural_graph_affine(const Element& w) {
  const CoxeterSystem& sys = w.system();
  affine_geometry(sys);
  AffineGraphReport R;
  R.reduced = cyclically_reduce(TwistedElement(w)).value.body;
  R.standard = p_w_infty_standardize(R.reduced);
  R.T = transversal_system(sys, R.standard.I_eta);
  const TransversalSystem& T = R.T;
  const int lmin = R.reduced.length();
  auto least = [&](const Element& x) {
    TwistedElement r = cyclically_reduce(TwistedElement(x)).value;
    if (r.length() != lmin) throw Error(ErrorCode::InternalMismatch, "representative is not of minimal length");
    return cyc_min(r).elements.front();
  };

  if (T.size() == 0) {
    ConjGraph g(std::vector<std::string>{}, sys.names());
    g.add_vertex(0);
    g.vertices()[0].representative = least(R.reduced).body.word();
    R.dw.splitting = standard_splitting(R.standard.v);
    R.component = R.graph = R.tight = g;
    return R;
  }

  R.dw = delta_and_Iw_affine(R.standard.v, T);
  const int N = T.size();
  R.component = kdelta_component(*T.sys, R.dw.delta, R.dw.I_w);
  R.component.set_ambient(sys.names());
  const ConjGraph& G = R.component;

  R.xi_eta_gens = xi_eta_lattice(T);
  R.xi_eta_table = xi_eta(T);
  {
    auto a = perm::generate(R.xi_eta_gens, N);
    auto b = perm::generate(R.xi_eta_table, N);
    R.table_agrees = std::set<Perm>(a.begin(), a.end()) == std::set<Perm>(b.begin(), b.end());
  }
  for (const Perm& p : perm::generate(R.xi_eta_gens, N))
    if (G.find(perm::apply(p, R.dw.I_w)) >= 0) R.xi_w.push_back(p);
  for (const Perm& a : R.xi_w)
    for (const Perm& b : R.xi_w)
      if (std::find(R.xi_w.begin(), R.xi_w.end(), perm::compose(a, b)) == R.xi_w.end())
        throw Error(ErrorCode::InternalMismatch, "Xi_w is not a group");

  ConjGraph q = quotient(G, R.xi_w);
  ConjGraph q_eta = quotient(G, R.xi_eta_gens, true);
  if (!same_vertices(q, q_eta)) throw Error(ErrorCode::InternalMismatch, "quotients by Xi_w and Xi_eta differ");

  // Representatives from paths in the component.
  BfsTree paths = bfs_tree(G, G.base());
  const Element& v = R.standard.v;
  std::vector<TwistedElement> reps(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    int gi = G.find(q.vertices()[i].subset);
    Element u(sys);
    std::vector<Subset> labels;
    for (int x = gi; paths.parent[x] >= 0; x = paths.parent[x]) labels.push_back(paths.label[x]);
    std::reverse(labels.begin(), labels.end());
    for (Subset L : labels) u = u * T.longest(L);
    reps[i] = least(v.conj_by(u));
    q.vertices()[i].representative = reps[i].body.word();
    q.vertices()[i].certificate.clear();
  }

  // Certificates along a breadth-first tree of the quotient.
  auto spherical = spherical_subsets(sys);
  std::map<int, CycClass> classes;
  auto cls = [&](int i) -> const CycClass& {
    auto it = classes.find(i);
    if (it == classes.end()) it = classes.emplace(i, cyc_class(reps[i])).first;
    return it->second;
  };
  BfsTree tree = bfs_tree(q, q.base());
  for (int c : tree.order) {
    int p = tree.parent[c];
    if (p < 0) continue;
    auto steps = link(cls(p), cls(c), spherical);
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

  ConjGraph tight = tight_closure(G, [&](Subset K) { return T.sys->spherical(K); });
  R.tight = quotient(tight, R.xi_w);
  for (Vertex& x : R.tight.vertices()) {
    int i = R.graph.find(x.subset);
    if (i < 0) throw Error(ErrorCode::InternalMismatch, "tight quotient has a new vertex");
    x = R.graph.vertices()[i];
  }
  R.tight.set_base(R.graph.base());
  return R;
}

std::optional<KConjCertificate> k_conj_certificate(const TransversalSystem& T, const Element& w, Subset L,
                                                   std::size_t cap) {
  const CoxeterSystem& sys = *T.ambient;
  if (!T.sys || !T.sys->spherical(L)) throw Error(ErrorCode::NonSpherical, "L must be spherical in S^eta");
  const int lmin = cyclically_reduce(TwistedElement(w)).value.length();
  std::vector<RootVector> simple;
  for (int s = 0; s < sys.rank(); ++s) simple.push_back(root::simple(sys, s));
  auto simple_index = [&](const RootVector& r) {
    auto it = std::find(simple.begin(), simple.end(), r);
    return it == simple.end() ? -1 : static_cast<int>(it - simple.begin());
  };

  // b = a^-1 grows by left multiplication while b(Pi_L) stays positive; a(Pi_K) = Pi_L at the leaves.
  struct Node {
    Element b;
    std::vector<RootVector> roots;
  };
  std::vector<Node> level{{Element(sys), {}}};
  for (int l : sub::members(L)) level[0].roots.push_back(T.roots[l]);
  std::size_t visited = 0;
  while (!level.empty()) {
    std::vector<KConjCertificate> hits;
    for (const Node& node : level) {
      Subset K = 0;
      bool standard = true;
      for (const RootVector& r : node.roots) {
        int k = simple_index(r);
        if (k < 0) standard = false;
        else K |= sub::bit(k);
      }
      if (standard) hits.push_back({node.b.inverse(), K});
    }
    std::sort(hits.begin(), hits.end(), [](const KConjCertificate& x, const KConjCertificate& y) {
      return x.a < y.a;
    });
    for (const KConjCertificate& h : hits)
      if (w.conj_by(h.a).length() == lmin) return h;

    std::vector<Node> next;
    std::set<Word> seen;
    for (const Node& node : level)
      for (int s = 0; s < sys.rank(); ++s) {
        if (std::find(node.roots.begin(), node.roots.end(), simple[s]) != node.roots.end()) continue;
        Element b = Element::generator(sys, s) * node.b;
        if (b.length() != node.b.length() + 1 || !seen.insert(b.word()).second) continue;
        if (++visited > cap) throw Error(ErrorCode::SearchBudgetExceeded, "no admissible conjugator within the cap");
        Node child{b, {}};
        for (const RootVector& r : node.roots) child.roots.push_back(root::reflect(sys, s, r));
        next.push_back(std::move(child));
      }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace coxgraph
