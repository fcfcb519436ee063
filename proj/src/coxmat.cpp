#include "coxgraph/coxmat.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

#include "coxgraph/scalar.hpp"
#include "json.hpp"

namespace coxgraph {

namespace {

using Q = boost::rational<long long>;

int coxeter_from_product(long long p) {
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return kInf;
  }
}

std::vector<int> row_signature(const Matrix& m, int i) {
  std::vector<int> sig;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (static_cast<int>(j) != i && m[i][j] != 2) sig.push_back(m[i][j]);
  std::sort(sig.begin(), sig.end());
  return sig;
}

std::vector<int> row_signature(const CoxeterSystem& sys, const std::vector<int>& gens, int g) {
  std::vector<int> sig;
  for (int h : gens)
    if (h != g && sys.m(g, h) != 2) sig.push_back(sys.m(g, h));
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Enumerates bijections positions -> gens preserving labels, in lexicographic order.
// The callback returns false to stop.
void match_all(const Matrix& ref, const CoxeterSystem& sys, const std::vector<int>& gens,
               int anchor, const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(ref.size());
  if (static_cast<int>(gens.size()) != n) return;
  std::vector<std::vector<int>> ref_sig(n), gen_sig(n);
  for (int p = 0; p < n; ++p) ref_sig[p] = row_signature(ref, p);
  for (int i = 0; i < n; ++i) gen_sig[i] = row_signature(sys, gens, gens[i]);
  {
    auto a = ref_sig, b = gen_sig;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return;
  }
  std::vector<int> assign(n, -1);
  std::vector<bool> used(n, false);
  bool stop = false;
  std::function<void(int)> rec = [&](int p) {
    if (stop) return;
    if (p == n) {
      if (!visit(assign)) stop = true;
      return;
    }
    for (int i = 0; i < n && !stop; ++i) {
      if (used[i] || gen_sig[i] != ref_sig[p]) continue;
      if (p == 0 && anchor >= 0 && gens[i] != anchor) continue;
      bool ok = true;
      for (int q = 0; q < p && ok; ++q) ok = ref[p][q] == sys.m(gens[i], assign[q]);
      if (!ok) continue;
      used[i] = true;
      assign[p] = gens[i];
      rec(p + 1);
      used[i] = false;
    }
  };
  rec(0);
}

std::optional<std::vector<int>> match_first(const Matrix& ref, const CoxeterSystem& sys,
                                            const std::vector<int>& gens, int anchor) {
  std::optional<std::vector<int>> out;
  match_all(ref, sys, gens, anchor, [&](const std::vector<int>& a) {
    out = a;
    return false;
  });
  return out;
}

// Automorphisms of a reference diagram, as position permutations.
std::vector<std::vector<int>> reference_automorphisms(const Matrix& ref) {
  const int n = static_cast<int>(ref.size());
  std::vector<std::vector<int>> out;
  std::vector<int> assign(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      out.push_back(assign);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool ok = true;
      for (int q = 0; q < p && ok; ++q) ok = ref[p][q] == ref[i][assign[q]];
      if (!ok) continue;
      used[i] = true;
      assign[p] = i;
      rec(p + 1);
      used[i] = false;
    }
  };
  rec(0);
  return out;
}

std::vector<Q> root_lengths(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Q> len(n, Q(0));
  for (int start = 0; start < n; ++start) {
    if (len[start] != Q(0)) continue;
    len[start] = Q(1);
    std::vector<int> queue{start};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      int i = queue[k];
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0 || len[j] != Q(0)) continue;
        len[j] = len[i] * Q(a[i][j], a[j][i]);
        queue.push_back(j);
      }
    }
  }
  Q mx = *std::max_element(len.begin(), len.end());
  for (auto& l : len) l = l * Q(2) / mx;
  return len;
}

Reference build_reference(Kind kind, char family, int rank, int m) {
  Reference r;
  r.kind = kind;
  r.family = family;
  r.rank = rank;
  r.m = m;
  if (kind == Kind::Finite) {
    r.offset = 1;
    if (family == 'H' || family == 'I') {
      r.cox.assign(rank, std::vector<int>(rank, 2));
      for (int i = 0; i < rank; ++i) r.cox[i][i] = 1;
      if (family == 'I') {
        r.cox[0][1] = r.cox[1][0] = m;
      } else {
        r.cox[0][1] = r.cox[1][0] = 5;
        for (int i = 1; i + 1 < rank; ++i) r.cox[i][i + 1] = r.cox[i + 1][i] = 3;
      }
    } else {
      r.cartan = finite_cartan(family, rank);
      r.cox = cartan_to_coxeter(r.cartan);
    }
    return r;
  }
  r.offset = 0;
  Matrix fin = finite_cartan(family, rank);
  auto roots = positive_roots(fin);
  const auto* theta = &roots.front();
  long long best = -1;
  for (const auto& rt : roots) {
    long long h = std::accumulate(rt.begin(), rt.end(), 0LL);
    if (h > best) {
      best = h;
      theta = &rt;
    }
  }
  auto len = root_lengths(fin);
  const int l = rank;
  r.cartan.assign(l + 1, std::vector<int>(l + 1, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) r.cartan[i + 1][j + 1] = fin[i][j];
  r.cartan[0][0] = 2;
  r.marks.assign(l + 1, 1);
  for (int j = 0; j < l; ++j) {
    Q ip(0);  // (theta, alpha_j)
    for (int i = 0; i < l; ++i) ip += Q((*theta)[i]) * Q(fin[i][j]) * len[i] / Q(2);
    Q a0j = -ip;
    Q aj0 = Q(-2) * ip / len[j];
    r.cartan[0][j + 1] = static_cast<int>(boost::rational_cast<long long>(a0j));
    r.cartan[j + 1][0] = static_cast<int>(boost::rational_cast<long long>(aj0));
    r.marks[j + 1] = static_cast<int>((*theta)[j]);
  }
  r.cox = cartan_to_coxeter(r.cartan);
  return r;
}

struct Candidate {
  Kind kind;
  char family;
  int rank;
  int m;
};

std::vector<Candidate> candidates(int n, int label) {
  std::vector<Candidate> c;
  if (n == 1) return {{Kind::Finite, 'A', 1, 0}};
  if (n == 2) {
    switch (label) {
      case 3: return {{Kind::Finite, 'A', 2, 0}};
      case 4: return {{Kind::Finite, 'B', 2, 0}};
      case 6: return {{Kind::Finite, 'G', 2, 0}};
      case kInf: return {{Kind::Affine, 'A', 1, 0}};
      default: return {{Kind::Finite, 'I', 2, label}};
    }
  }
  c.push_back({Kind::Finite, 'A', n, 0});
  c.push_back({Kind::Finite, 'B', n, 0});
  if (n >= 4) c.push_back({Kind::Finite, 'D', n, 0});
  if (n >= 6 && n <= 8) c.push_back({Kind::Finite, 'E', n, 0});
  if (n == 4) c.push_back({Kind::Finite, 'F', 4, 0});
  if (n == 3 || n == 4) c.push_back({Kind::Finite, 'H', n, 0});
  const int l = n - 1;
  c.push_back({Kind::Affine, 'A', l, 0});
  if (l >= 3) c.push_back({Kind::Affine, 'B', l, 0});
  if (l >= 2) c.push_back({Kind::Affine, 'C', l, 0});
  if (l >= 4) c.push_back({Kind::Affine, 'D', l, 0});
  if (l >= 6 && l <= 8) c.push_back({Kind::Affine, 'E', l, 0});
  if (l == 4) c.push_back({Kind::Affine, 'F', 4, 0});
  if (l == 2) c.push_back({Kind::Affine, 'G', 2, 0});
  return c;
}

std::vector<std::vector<int>> special_cycles(char family, int l) {
  switch (family) {
    case 'A': {
      std::vector<int> cyc(l + 1);
      std::iota(cyc.begin(), cyc.end(), 0);
      return {cyc};
    }
    case 'B': return {{0, 1}};
    case 'C': return {{0, l}};
    case 'D':
      if (l % 2 == 1) return {{0, l - 1, 1, l}};
      return {};
    case 'E':
      if (l == 6) return {{0, 1, 6}};
      if (l == 7) return {{0, 7}};
      return {};
    default: return {};
  }
}

}  // namespace

std::string TypeTag::name() const {
  std::string base(1, family);
  if (kind == Kind::Indefinite) return "Indefinite";
  if (family == 'I') base += "_2(" + std::to_string(m) + ")";
  else base += "_" + std::to_string(rank);
  if (kind == Kind::Affine) base += "^(1)";
  return base;
}

int TypeTag::vertex_of(int g) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == g) return static_cast<int>(k);
  return -1;
}

std::string Reference::name() const {
  TypeTag t;
  t.kind = kind;
  t.family = family;
  t.rank = rank;
  t.m = m;
  return t.name();
}

Matrix finite_cartan(char family, int n) {
  Matrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto bond = [&](int i, int j, int aij = -1, int aji = -1) {
    a[i - 1][j - 1] = aij;
    a[j - 1][i - 1] = aji;
  };
  switch (family) {
    case 'A':
      for (int i = 1; i < n; ++i) bond(i, i + 1);
      break;
    case 'B':
      for (int i = 1; i + 1 < n; ++i) bond(i, i + 1);
      bond(n - 1, n, -1, -2);
      break;
    case 'C':
      for (int i = 1; i + 1 < n; ++i) bond(i, i + 1);
      bond(n - 1, n, -2, -1);
      break;
    case 'D':
      for (int i = 1; i + 1 < n; ++i) bond(i, i + 1);
      bond(n - 2, n);
      break;
    case 'E':
      bond(1, 3);
      bond(2, 4);
      for (int i = 3; i < n; ++i) bond(i, i + 1);
      break;
    case 'F':
      bond(1, 2);
      bond(2, 3, -1, -2);
      bond(3, 4);
      break;
    case 'G':
      bond(1, 2, -1, -3);
      break;
    default:
      throw Error(ErrorCode::InternalMismatch, std::string("no Cartan matrix for ") + family);
  }
  return a;
}

Matrix cartan_to_coxeter(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  Matrix m(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m[i][j] = coxeter_from_product(static_cast<long long>(a[i][j]) * a[j][i]);
  return m;
}

std::vector<std::vector<long long>> positive_roots(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<long long>> roots;
  std::map<std::vector<long long>, int> seen;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> e(n, 0);
    e[i] = 1;
    seen[e] = static_cast<int>(roots.size());
    roots.push_back(e);
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      auto b = roots[k];
      long long c = 0;
      for (int j = 0; j < n; ++j) c += static_cast<long long>(a[i][j]) * b[j];
      b[i] -= c;
      bool positive = std::all_of(b.begin(), b.end(), [](long long x) { return x >= 0; });
      bool nonzero = std::any_of(b.begin(), b.end(), [](long long x) { return x != 0; });
      if (!positive || !nonzero) continue;
      if (seen.count(b)) continue;
      if (roots.size() > 100000)
        throw Error(ErrorCode::TooLarge, "root system is not finite");
      seen[b] = static_cast<int>(roots.size());
      roots.push_back(b);
    }
  }
  return roots;
}

const Reference& reference(Kind kind, char family, int rank, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, char, int, int>, std::unique_ptr<Reference>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(static_cast<int>(kind), family, rank, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Reference>(build_reference(kind, family, rank, m))).first;
  return *it->second;
}

std::vector<Subset> components(const CoxeterSystem& sys, Subset I) {
  std::vector<Subset> out;
  Subset rest = I;
  while (rest) {
    int s = sub::lowest(rest);
    Subset comp = sub::bit(s);
    std::vector<int> queue{s};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (int t : sub::members(rest & ~comp)) {
        if (sys.adjacent(queue[k], t)) {
          comp |= sub::bit(t);
          queue.push_back(t);
        }
      }
    }
    out.push_back(comp);
    rest &= ~comp;
  }
  return out;
}

TypeTag classify_component(const CoxeterSystem& sys, Subset comp, int anchor) {
  TypeTag tag;
  tag.members = comp;
  auto gens = sub::members(comp);
  const int n = static_cast<int>(gens.size());
  int label = n == 2 ? sys.m(gens[0], gens[1]) : 0;
  for (const Candidate& c : candidates(n, label)) {
    if (anchor >= 0 && c.kind != Kind::Affine) continue;
    const Reference& ref = reference(c.kind, c.family, c.rank, c.m);
    auto assign = match_first(ref.cox, sys, gens, c.kind == Kind::Affine ? anchor : -1);
    if (!assign) continue;
    tag.kind = c.kind;
    tag.family = c.family;
    tag.rank = c.rank;
    tag.m = c.m;
    if (c.kind == Kind::Finite) {
      tag.labels.assign(n + 1, -1);
      for (int p = 0; p < n; ++p) tag.labels[p + 1] = (*assign)[p];
    } else {
      tag.labels = *assign;
      tag.marks = ref.marks;
      for (int p = 0; p < n; ++p)
        if (ref.marks[p] == 1) tag.special |= sub::bit((*assign)[p]);
    }
    return tag;
  }
  tag.kind = Kind::Indefinite;
  return tag;
}

std::vector<TypeTag> classify(const CoxeterSystem& sys, Subset I) {
  std::vector<TypeTag> out;
  for (Subset c : components(sys, I)) out.push_back(classify_component(sys, c));
  return out;
}

Perm opposition(const CoxeterSystem& sys, Subset K) {
  Perm p = perm::identity(sys.rank());
  for (const TypeTag& t : classify(sys, K)) {
    if (t.kind != Kind::Finite)
      throw Error(ErrorCode::NonSpherical, "opposition of " + sys.subset_name(K));
    auto swap = [&](int a, int b) {
      p[t.gen(a)] = t.gen(b);
      p[t.gen(b)] = t.gen(a);
    };
    const int n = t.rank;
    if (t.family == 'A' && n >= 2) {
      for (int k = 1; k <= n / 2; ++k) swap(k, n + 1 - k);
    } else if (t.family == 'D' && n % 2 == 1) {
      swap(n - 1, n);
    } else if (t.family == 'E' && n == 6) {
      swap(1, 6);
      swap(3, 5);
    } else if (t.family == 'I' && t.m % 2 == 1) {
      swap(1, 2);
    }
  }
  return p;
}

std::vector<Perm> extended_autgroup(const CoxeterSystem& sys, const TypeTag& tag) {
  if (tag.kind != Kind::Affine) throw Error(ErrorCode::NotAffine, tag.name());
  const Reference& ref = reference(Kind::Affine, tag.family, tag.rank);
  const int l = tag.rank;
  std::vector<std::vector<std::pair<int, int>>> image_maps;  // vertex -> image on special vertices
  for (const auto& cyc : special_cycles(tag.family, l)) {
    std::vector<std::pair<int, int>> images;
    for (std::size_t i = 0; i < cyc.size(); ++i) images.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
    image_maps.push_back(images);
  }
  if (tag.family == 'D' && l % 2 == 0) {
    image_maps.push_back({{0, 1}, {1, 0}, {l - 1, l}, {l, l - 1}});
    image_maps.push_back({{0, l - 1}, {l - 1, 0}, {1, l}, {l, 1}});
  }
  auto autos = reference_automorphisms(ref.cox);
  std::vector<Perm> gens;
  for (const auto& images : image_maps) {
    const std::vector<int>* found = nullptr;
    for (const auto& a : autos) {
      bool ok = true;
      for (int k = 0; k <= l && ok; ++k) {
        if (ref.marks[k] != 1) continue;
        int image = k;
        for (auto [x, y] : images)
          if (x == k) image = y;
        ok = a[k] == image;
      }
      if (!ok) continue;
      if (found) throw Error(ErrorCode::InternalMismatch, "non-unique extension in " + tag.name());
      found = &a;
    }
    if (!found) throw Error(ErrorCode::InternalMismatch, "no extension in " + tag.name());
    Perm p = perm::identity(sys.rank());
    for (int k = 0; k <= l; ++k) p[tag.gen(k)] = tag.gen((*found)[k]);
    gens.push_back(p);
  }
  return gens;
}

Perm sigma_s(const CoxeterSystem& sys, const TypeTag& tag, int tau, int s) {
  if (!sub::has(tag.special, s) || !sub::has(tag.special, tau)) return perm::identity(sys.rank());
  for (const Perm& g : perm::generate(extended_autgroup(sys, tag), sys.rank()))
    if (g[tau] == s) return g;
  throw Error(ErrorCode::InternalMismatch, "no extended automorphism maps tau to s");
}

bool is_diagram_automorphism(const CoxeterSystem& sys, const Perm& p, Subset domain) {
  if (perm::apply(p, domain) != domain) return false;
  for (int s : sub::members(domain))
    for (int t : sub::members(domain))
      if (sys.m(p[s], p[t]) != sys.m(s, t)) return false;
  return true;
}

CoxeterSystem::CoxeterSystem(Matrix matrix, std::vector<std::string> names)
    : matrix_(std::move(matrix)), names_(std::move(names)) {
  const int n = static_cast<int>(matrix_.size());
  if (n == 0 || n > 64) throw Error(ErrorCode::ParseError, "rank must be in 1..64");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(matrix_[i].size()) != n) throw Error(ErrorCode::ParseError, "matrix not square");
    if (matrix_[i][i] != 1) throw Error(ErrorCode::ParseError, "diagonal entries must be 1");
    for (int j = 0; j < n; ++j) {
      if (matrix_[i][j] != matrix_[j][i]) throw Error(ErrorCode::ParseError, "matrix not symmetric");
      if (i != j && matrix_[i][j] != kInf && matrix_[i][j] < 2)
        throw Error(ErrorCode::ParseError, "off-diagonal labels must be >= 2 or 0 for infinity");
    }
  }
  if (names_.empty())
    for (int i = 0; i < n; ++i) names_.push_back("s" + std::to_string(i));
  if (static_cast<int>(names_.size()) != n) throw Error(ErrorCode::ParseError, "wrong number of names");
  type_ = classify(*this, all());
  rep_ = std::make_unique<Representation>(*this);
}

CoxeterSystem::~CoxeterSystem() = default;

std::shared_ptr<const CoxeterSystem> CoxeterSystem::make(Matrix matrix, std::vector<std::string> names) {
  return std::make_shared<const CoxeterSystem>(std::move(matrix), std::move(names));
}

bool CoxeterSystem::is_crystallographic() const {
  for (const auto& row : matrix_)
    for (int m : row)
      if (m != 1 && m != 2 && m != 3 && m != 4 && m != 6 && m != kInf) return false;
  return true;
}

bool CoxeterSystem::is_irreducible_affine() const {
  return type_.size() == 1 && type_[0].kind == Kind::Affine;
}

bool CoxeterSystem::is_finite() const {
  return std::all_of(type_.begin(), type_.end(), [](const TypeTag& t) { return t.kind == Kind::Finite; });
}

bool CoxeterSystem::spherical(Subset I) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = spherical_cache_.find(I);
    if (it != spherical_cache_.end()) return it->second;
  }
  bool result = true;
  for (Subset c : components(*this, I)) {
    // Quick rejections before matching: infinite bonds and cycles.
    int edges = 0;
    auto ms = sub::members(c);
    for (std::size_t a = 0; a < ms.size() && result; ++a)
      for (std::size_t b = a + 1; b < ms.size(); ++b) {
        if (matrix_[ms[a]][ms[b]] == kInf) result = false;
        if (adjacent(ms[a], ms[b])) ++edges;
      }
    if (!result) break;
    if (edges != static_cast<int>(ms.size()) - 1) {
      result = false;
      break;
    }
    if (classify_component(*this, c).kind != Kind::Finite) {
      result = false;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  spherical_cache_[I] = result;
  return result;
}

Matrix read_matrix_json(const std::string& text, std::vector<std::string>* names) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.contains("matrix")) throw Error(ErrorCode::ParseError, "missing \"matrix\"");
  Matrix m = j.at("matrix").get<Matrix>();
  if (j.contains("rank") && j.at("rank").get<int>() != static_cast<int>(m.size()))
    throw Error(ErrorCode::ParseError, "rank does not match matrix size");
  if (names && j.contains("names")) *names = j.at("names").get<std::vector<std::string>>();
  return m;
}

std::string write_matrix_json(const CoxeterSystem& sys) {
  nlohmann::json j;
  j["rank"] = sys.rank();
  j["matrix"] = sys.matrix();
  j["names"] = sys.names();
  return j.dump();
}

SystemPtr finite_system(char family, int n, int m) {
  const Reference& r = reference(Kind::Finite, family, n, m);
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
  return CoxeterSystem::make(r.cox, names);
}

SystemPtr affine_system(char family, int l) {
  const Reference& r = reference(Kind::Affine, family, l);
  return CoxeterSystem::make(r.cox);
}

}  // namespace coxgraph
