#include "coxgraph/element.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace coxgraph {

namespace {

const Representation& rep_of(const CoxeterSystem& sys) { return sys.rep(); }

bool same_twist(const Perm& a, const Perm& b) {
  bool ia = a.empty() || perm::is_identity(a);
  bool ib = b.empty() || perm::is_identity(b);
  if (ia || ib) return ia == ib;
  return a == b;
}

int block_sign(const Ring& ring, const std::int64_t* blocks, int n) {
  const int d = ring.degree();
  if (d == 1) {
    for (int i = 0; i < n; ++i)
      if (blocks[i] != 0) return blocks[i] > 0 ? 1 : -1;
    return 0;
  }
  int best = -1;
  long double best_mag = -1.0L;
  for (int i = 0; i < n; ++i) {
    const std::int64_t* b = blocks + static_cast<std::size_t>(i) * d;
    bool nz = std::any_of(b, b + d, [](std::int64_t x) { return x != 0; });
    if (!nz) continue;
    long double mag = std::fabs(ring.approx(b));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best < 0) return 0;
  return ring.sign(blocks + static_cast<std::size_t>(best) * d);
}

}  // namespace

namespace root {

RootVector simple(const CoxeterSystem& sys, int s) {
  const int d = rep_of(sys).d();
  RootVector v(static_cast<std::size_t>(sys.rank()) * d, 0);
  v[static_cast<std::size_t>(s) * d] = 1;
  return v;
}

bool is_zero(const RootVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

int sign(const CoxeterSystem& sys, const RootVector& v) {
  return block_sign(rep_of(sys).ring(), v.data(), sys.rank());
}

Subset support(const CoxeterSystem& sys, const RootVector& v) {
  const int d = rep_of(sys).d();
  Subset out = 0;
  for (int i = 0; i < sys.rank(); ++i)
    for (int k = 0; k < d; ++k)
      if (v[static_cast<std::size_t>(i) * d + k] != 0) out |= sub::bit(i);
  return out;
}

RootVector reflect(const CoxeterSystem& sys, int s, const RootVector& v) {
  const Representation& r = rep_of(sys);
  const int d = r.d();
  RootVector out = v;
  std::vector<std::int64_t> acc(d, 0), tmp(d, 0);
  for (int t = 0; t < sys.rank(); ++t) {
    const std::int64_t* vt = &v[static_cast<std::size_t>(t) * d];
    if (std::all_of(vt, vt + d, [](std::int64_t x) { return x == 0; })) continue;
    r.ring().mul(r.A(s, t), vt, tmp.data());
    for (int k = 0; k < d; ++k) acc[k] = checked_add(acc[k], tmp[k]);
  }
  for (int k = 0; k < d; ++k)
    out[static_cast<std::size_t>(s) * d + k] = checked_sub(out[static_cast<std::size_t>(s) * d + k], acc[k]);
  return out;
}

RootVector negate(const RootVector& v) {
  RootVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

long double height(const CoxeterSystem& sys, const RootVector& v) {
  const Representation& r = rep_of(sys);
  long double h = 0.0L;
  for (int i = 0; i < sys.rank(); ++i) h += r.ring().approx(&v[static_cast<std::size_t>(i) * r.d()]);
  return h;
}

std::string format(const CoxeterSystem& sys, const RootVector& v) {
  const Representation& r = rep_of(sys);
  std::string out = "(";
  for (int i = 0; i < sys.rank(); ++i) {
    if (i) out += ", ";
    out += r.ring().format(&v[static_cast<std::size_t>(i) * r.d()]);
  }
  return out + ")";
}

}  // namespace root

Element::Element(const CoxeterSystem& sys) : sys_(&sys) {
  const int n = sys.rank();
  const int d = sys.rep().d();
  mat_.assign(static_cast<std::size_t>(n) * n * d, 0);
  for (int i = 0; i < n; ++i) mat_[(static_cast<std::size_t>(i) * n + i) * d] = 1;
  inv_ = mat_;
  word_ = Word{};
}

Element Element::generator(const CoxeterSystem& sys, int s) { return Element(sys).rmul(s); }

void Element::right_act(const CoxeterSystem& sys, std::vector<std::int64_t>& m, int s) {
  const Representation& r = sys.rep();
  const int n = r.n();
  const int d = r.d();
  std::int64_t* cs = &m[static_cast<std::size_t>(s) * n * d];
  if (d == 1) {
    for (int t : r.row_support(s)) {
      const std::int64_t a = r.a_int(s, t);
      std::int64_t* ct = &m[static_cast<std::size_t>(t) * n];
      for (int i = 0; i < n; ++i)
        if (cs[i] != 0) ct[i] = checked_sub(ct[i], checked_mul(a, cs[i]));
    }
    for (int i = 0; i < n; ++i) cs[i] = -cs[i];
    return;
  }
  std::vector<std::int64_t> tmp(d);
  for (int t : r.row_support(s)) {
    std::int64_t* ct = &m[static_cast<std::size_t>(t) * n * d];
    for (int i = 0; i < n; ++i) {
      const std::int64_t* x = cs + static_cast<std::size_t>(i) * d;
      if (std::all_of(x, x + d, [](std::int64_t v) { return v == 0; })) continue;
      r.ring().mul(r.A(s, t), x, tmp.data());
      for (int k = 0; k < d; ++k) ct[i * d + k] = checked_sub(ct[i * d + k], tmp[k]);
    }
  }
  for (int i = 0; i < n * d; ++i) cs[i] = -cs[i];
}

void Element::left_act(const CoxeterSystem& sys, std::vector<std::int64_t>& m, int s) {
  const Representation& r = sys.rep();
  const int n = r.n();
  const int d = r.d();
  if (d == 1) {
    for (int j = 0; j < n; ++j) {
      std::int64_t* col = &m[static_cast<std::size_t>(j) * n];
      std::int64_t v = -col[s];
      for (int k : r.row_support(s))
        if (col[k] != 0) v = checked_sub(v, checked_mul(r.a_int(s, k), col[k]));
      col[s] = v;
    }
    return;
  }
  std::vector<std::int64_t> v(d), tmp(d);
  for (int j = 0; j < n; ++j) {
    std::int64_t* col = &m[static_cast<std::size_t>(j) * n * d];
    for (int k = 0; k < d; ++k) v[k] = -col[s * d + k];
    for (int k2 : r.row_support(s)) {
      const std::int64_t* x = col + static_cast<std::size_t>(k2) * d;
      if (std::all_of(x, x + d, [](std::int64_t q) { return q == 0; })) continue;
      r.ring().mul(r.A(s, k2), x, tmp.data());
      for (int k = 0; k < d; ++k) v[k] = checked_sub(v[k], tmp[k]);
    }
    for (int k = 0; k < d; ++k) col[s * d + k] = v[k];
  }
}

int Element::col_sign(const std::vector<std::int64_t>& m, int s) const {
  const int n = sys_->rank();
  const int d = sys_->rep().d();
  return block_sign(sys_->rep().ring(), &m[static_cast<std::size_t>(s) * n * d], n);
}

void Element::rmul_in_place(int s) {
  bool down = col_sign(mat_, s) < 0;
  right_act(*sys_, mat_, s);
  left_act(*sys_, inv_, s);
  length_ += down ? -1 : 1;
  word_.reset();
}

void Element::lmul_in_place(int s) {
  bool down = col_sign(inv_, s) < 0;
  left_act(*sys_, mat_, s);
  right_act(*sys_, inv_, s);
  length_ += down ? -1 : 1;
  word_.reset();
}

const Word& Element::word() const {
  if (word_) return *word_;
  Word w;
  std::vector<std::int64_t> m = inv_;
  const int n = sys_->rank();
  for (;;) {
    int found = -1;
    for (int s = 0; s < n && found < 0; ++s)
      if (col_sign(m, s) < 0) found = s;
    if (found < 0) break;
    w.push_back(found);
    right_act(*sys_, m, found);
    if (static_cast<int>(w.size()) > length_)
      throw Error(ErrorCode::InternalMismatch, "reduced word longer than the tracked length");
  }
  if (static_cast<int>(w.size()) != length_)
    throw Error(ErrorCode::InternalMismatch, "reduced word shorter than the tracked length");
  word_ = std::move(w);
  return *word_;
}

bool Element::right_descent(int s) const { return col_sign(mat_, s) < 0; }
bool Element::left_descent(int s) const { return col_sign(inv_, s) < 0; }

Subset Element::right_descents() const {
  Subset out = 0;
  for (int s = 0; s < sys_->rank(); ++s)
    if (right_descent(s)) out |= sub::bit(s);
  return out;
}

Subset Element::left_descents() const {
  Subset out = 0;
  for (int s = 0; s < sys_->rank(); ++s)
    if (left_descent(s)) out |= sub::bit(s);
  return out;
}

Element Element::rmul(int s) const {
  Element e = *this;
  e.rmul_in_place(s);
  return e;
}

Element Element::lmul(int s) const {
  Element e = *this;
  e.lmul_in_place(s);
  return e;
}

Element Element::rmul(const Word& w) const {
  Element e = *this;
  for (int s : w) e.rmul_in_place(s);
  return e;
}

Element Element::lmul(const Word& w) const {
  Element e = *this;
  for (auto it = w.rbegin(); it != w.rend(); ++it) e.lmul_in_place(*it);
  return e;
}

Element Element::operator*(const Element& other) const {
  if (length_ >= other.length_) return rmul(other.word());
  return other.lmul(word());
}

Element Element::inverse() const {
  Element e = *this;
  std::swap(e.mat_, e.inv_);
  e.word_.reset();
  return e;
}

Element Element::conj_by(const Element& x) const {
  Element e = *this;
  for (int s : x.word()) {
    e.lmul_in_place(s);
    e.rmul_in_place(s);
  }
  return e;
}

Element Element::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Element result(*sys_);
  Element base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Subset Element::support() const {
  Subset out = 0;
  for (int s : word()) out |= sub::bit(s);
  return out;
}

RootVector Element::column(int s) const {
  const int n = sys_->rank();
  const int d = sys_->rep().d();
  auto first = mat_.begin() + static_cast<std::ptrdiff_t>(s) * n * d;
  return RootVector(first, first + static_cast<std::ptrdiff_t>(n) * d);
}

namespace {

RootVector apply_matrix(const CoxeterSystem& sys, const std::vector<std::int64_t>& m, const RootVector& v) {
  const Representation& r = sys.rep();
  const int n = r.n();
  const int d = r.d();
  RootVector out(static_cast<std::size_t>(n) * d, 0);
  std::vector<std::int64_t> tmp(d);
  for (int j = 0; j < n; ++j) {
    const std::int64_t* vj = &v[static_cast<std::size_t>(j) * d];
    if (std::all_of(vj, vj + d, [](std::int64_t x) { return x == 0; })) continue;
    const std::int64_t* col = &m[static_cast<std::size_t>(j) * n * d];
    for (int i = 0; i < n; ++i) {
      r.ring().mul(col + static_cast<std::size_t>(i) * d, vj, tmp.data());
      for (int k = 0; k < d; ++k) out[i * d + k] = checked_add(out[i * d + k], tmp[k]);
    }
  }
  return out;
}

}  // namespace

RootVector Element::apply(const RootVector& v) const { return apply_matrix(*sys_, mat_, v); }
RootVector Element::apply_inverse(const RootVector& v) const { return apply_matrix(*sys_, inv_, v); }

bool Element::operator<(const Element& o) const {
  if (length_ != o.length_) return length_ < o.length_;
  return word() < o.word();
}

std::size_t Element::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (std::int64_t x : mat_) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Element::str() const { return word_string(word(), sys_); }

TwistedElement TwistedElement::conj(int s) const {
  return TwistedElement(body.lmul(s).rmul(act(s)), twist);
}

TwistedElement TwistedElement::conj_by(const Element& x) const {
  TwistedElement e = *this;
  for (int s : x.word()) e = e.conj(s);
  return e;
}

Subset TwistedElement::support() const {
  Subset s = body.support();
  if (twist.empty()) return s;
  return perm::closure({twist}, s);
}

bool TwistedElement::operator==(const TwistedElement& o) const {
  return body == o.body && same_twist(twist, o.twist);
}

std::size_t TwistedElement::hash() const {
  std::size_t h = body.hash();
  if (twisted())
    for (int x : twist) h = h * 31 + static_cast<std::size_t>(x);
  return h;
}

Element reduce(const CoxeterSystem& sys, const Word& word) {
  for (int s : word)
    if (s < 0 || s >= sys.rank()) throw Error(ErrorCode::ParseError, "generator index out of range");
  return Element(sys).rmul(word);
}

Element twist_element(const Element& w, const Perm& p) {
  if (p.empty()) return w;
  Word out;
  for (int s : w.word()) out.push_back(p[s]);
  return reduce(w.system(), out);
}

Element longest_element(const CoxeterSystem& sys, Subset K) {
  if (!sys.spherical(K)) throw Error(ErrorCode::NonSpherical, "longest element of " + sys.subset_name(K));
  Element w(sys);
  for (;;) {
    int s = -1;
    for (int t : sub::members(K))
      if (!w.right_descent(t)) {
        s = t;
        break;
      }
    if (s < 0) break;
    w = w.rmul(s);
  }
  return w;
}

Element min_coset_rep(const Element& w, Subset K, Side side) {
  Element x = w;
  for (;;) {
    Subset d = (side == Side::Right ? x.right_descents() : x.left_descents()) & K;
    if (!d) return x;
    int s = sub::lowest(d);
    x = side == Side::Right ? x.rmul(s) : x.lmul(s);
  }
}

Element min_double_coset_rep(const Element& w, Subset J, Subset K) {
  Element x = w;
  for (;;) {
    Subset l = x.left_descents() & J;
    Subset r = x.right_descents() & K;
    if (!l && !r) return x;
    x = l ? x.lmul(sub::lowest(l)) : x.rmul(sub::lowest(r));
  }
}

bool normalizes(const Element& w, Subset K) {
  for (int s : sub::members(K))
    if (!sub::within(root::support(w.system(), w.column(s)), K)) return false;
  return true;
}

bool normalizes(const TwistedElement& w, Subset K) {
  for (int s : sub::members(K))
    if (!sub::within(root::support(w.body.system(), w.body.column(w.act(s))), K)) return false;
  return true;
}

std::optional<Perm> induced_permutation(const Element& n, Subset K) {
  const CoxeterSystem& sys = n.system();
  Perm p = perm::identity(sys.rank());
  for (int s : sub::members(K)) {
    RootVector c = n.column(s);
    Subset supp = root::support(sys, c);
    if (sub::size(supp) != 1 || !sub::within(supp, K)) return std::nullopt;
    int t = sub::lowest(supp);
    if (c != root::simple(sys, t)) return std::nullopt;
    p[s] = t;
  }
  return p;
}

NormalizerSplit normalizer_split(const Element& w, Subset I) {
  if (!normalizes(w, I)) throw Error(ErrorCode::NotNormalizing, w.str() + " on " + w.system().subset_name(I));
  Element n = min_coset_rep(w, I, Side::Left);
  Element wi = w * n.inverse();
  if (wi.length() + n.length() != w.length())
    throw Error(ErrorCode::VerificationFailed, "normalizer split is not length additive");
  if (!induced_permutation(n, I))
    throw Error(ErrorCode::VerificationFailed, "normalizer part does not stabilize the simple roots");
  return {wi, n};
}

TwistedSplit normalizer_split(const TwistedElement& w, Subset I) {
  if (!normalizes(w, I)) throw Error(ErrorCode::NotNormalizing, "twisted element");
  Element n = min_coset_rep(w.body, I, Side::Left);
  Element wi = w.body * n.inverse();
  if (wi.length() + n.length() != w.body.length())
    throw Error(ErrorCode::VerificationFailed, "normalizer split is not length additive");
  return {wi, TwistedElement(n, w.twist)};
}

Word reflection_word(const CoxeterSystem& sys, const RootVector& beta) {
  if (root::sign(sys, beta) <= 0) throw Error(ErrorCode::NotARoot, "not a positive vector");
  // Ties go to the smallest index, except that the affine node is tried last.
  std::vector<int> order;
  int affine_node = sys.is_irreducible_affine() ? sys.type().front().gen(0) : -1;
  for (int s = 0; s < sys.rank(); ++s)
    if (s != affine_node) order.push_back(s);
  if (affine_node >= 0) order.push_back(affine_node);
  Word path;
  RootVector b = beta;
  for (int guard = 0; guard < 100000; ++guard) {
    Subset supp = root::support(sys, b);
    if (sub::size(supp) == 1 && b == root::simple(sys, sub::lowest(supp))) {
      Word out = path;
      out.push_back(sub::lowest(supp));
      out.insert(out.end(), path.rbegin(), path.rend());
      return out;
    }
    long double h = root::height(sys, b);
    int best = -1;
    long double best_h = h;
    RootVector best_v;
    for (int s : order) {
      RootVector c = root::reflect(sys, s, b);
      long double hc = root::height(sys, c);
      if (hc < best_h - 1e-9L) {
        best_h = hc;
        best = s;
        best_v = std::move(c);
      }
    }
    if (best < 0 || root::sign(sys, best_v) <= 0)
      throw Error(ErrorCode::NotARoot, "height descent stalled at " + root::format(sys, b));
    path.push_back(best);
    b = std::move(best_v);
  }
  throw Error(ErrorCode::NotARoot, "height descent did not terminate");
}

std::vector<Element> enumerate_parabolic(const CoxeterSystem& sys, Subset K, std::size_t cap) {
  if (!sys.spherical(K)) throw Error(ErrorCode::NonSpherical, "enumeration of " + sys.subset_name(K));
  std::vector<Element> out{Element(sys)};
  std::unordered_set<Element, ElementHash> seen{out.front()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s : sub::members(K)) {
      if (out[i].right_descent(s)) continue;
      Element e = out[i].rmul(s);
      if (seen.insert(e).second) {
        out.push_back(std::move(e));
        if (out.size() > cap) throw Error(ErrorCode::TooLarge, "parabolic subgroup exceeds the cap");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const std::vector<Element>> parabolic_elements(const CoxeterSystem& sys, Subset K) {
  return sys.memo<std::vector<Element>>(1, K, [&] { return enumerate_parabolic(sys, K); });
}

std::string word_string(const Word& w, const CoxeterSystem* sys) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += sys ? sys->names()[w[i]] : std::to_string(w[i]);
  }
  return out;
}

Word parse_word(const std::string& text, const CoxeterSystem* sys) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream is(cleaned);
  Word out;
  std::string tok;
  while (is >> tok) {
    bool numeric = std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    int idx = -1;
    if (numeric) {
      idx = std::stoi(tok);
    } else if (sys) {
      const auto& names = sys->names();
      auto it = std::find(names.begin(), names.end(), tok);
      if (it != names.end()) idx = static_cast<int>(it - names.begin());
    }
    if (idx < 0 || (sys && idx >= sys->rank())) throw Error(ErrorCode::ParseError, "bad generator '" + tok + "'");
    out.push_back(idx);
  }
  return out;
}

}  // namespace coxgraph
