#include "coxgraph/cycshift.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace coxgraph {

Word CycClass::path(int i) const {
  Word rev;
  for (int k = i; parent[k] >= 0; k = parent[k]) rev.push_back(via[k]);
  return Word(rev.rbegin(), rev.rend());
}

std::vector<int> CycClass::minimal() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].length() == min_length) out.push_back(static_cast<int>(i));
  std::sort(out.begin(), out.end(), [&](int a, int b) { return elements[a] < elements[b]; });
  return out;
}

CycClass cyc_class(const TwistedElement& w, std::size_t cap) {
  CycClass c;
  const int n = w.body.system().rank();
  using Key = std::tuple<int, Word, int>;
  std::set<Key> work;
  auto add = [&](TwistedElement v, int parent, int s) {
    auto [it, fresh] = c.index.emplace(v, static_cast<int>(c.elements.size()));
    if (!fresh) return;
    if (c.elements.size() >= cap) throw Error(ErrorCode::TooLarge, "cyclic shift class exceeds the cap");
    work.emplace(v.length(), v.body.word(), it->second);
    c.elements.push_back(std::move(v));
    c.parent.push_back(parent);
    c.via.push_back(s);
  };
  add(w, -1, -1);
  c.min_length = w.length();
  while (!work.empty()) {
    auto node = work.begin();
    const int i = std::get<2>(*node);
    work.erase(node);
    const TwistedElement v = c.elements[i];
    c.min_length = std::min(c.min_length, v.length());
    for (int s = 0; s < n; ++s) {
      TwistedElement u = v.conj(s);
      if (u.length() <= v.length()) add(std::move(u), i, s);
    }
  }
  return c;
}

CycClass cyc_class(const Element& w, std::size_t cap) { return cyc_class(TwistedElement(w), cap); }

CycMin cyc_min(const TwistedElement& w) {
  CycClass c = cyc_class(w);
  CycMin out;
  for (int i : c.minimal()) {
    out.elements.push_back(c.elements[i]);
    out.witness.push_back(c.path(i));
  }
  return out;
}

CycMin cyc_min(const Element& w) { return cyc_min(TwistedElement(w)); }

Reduction cyclically_reduce(const TwistedElement& w) {
  const int n = w.body.system().rank();
  TwistedElement cur = w;
  Element x(w.body.system());
  for (;;) {
    // Explore the equal-length shift component of cur until a shorter shift appears.
    std::unordered_map<TwistedElement, Element, TwistedHash> seen;
    std::deque<TwistedElement> queue;
    seen.emplace(cur, x);
    queue.push_back(cur);
    bool dropped = false;
    while (!queue.empty() && !dropped) {
      TwistedElement v = queue.front();
      queue.pop_front();
      const Element xv = seen.at(v);
      for (int s = 0; s < n; ++s) {
        TwistedElement u = v.conj(s);
        if (u.length() < v.length()) {
          cur = u;
          x = xv.rmul(s);
          dropped = true;
          break;
        }
        if (u.length() == v.length() && !seen.count(u)) {
          seen.emplace(u, xv.rmul(s));
          queue.push_back(u);
        }
      }
    }
    if (!dropped) return {cur, x};
  }
}

bool is_cyclically_reduced(const TwistedElement& w) { return cyclically_reduce(w).value.length() == w.length(); }
bool is_cyclically_reduced(const Element& w) { return is_cyclically_reduced(TwistedElement(w)); }

TwistedElement k_conjugate(const TwistedElement& w, Subset K) {
  const CoxeterSystem& sys = w.body.system();
  if (!sys.spherical(K)) throw Error(ErrorCode::NonSpherical, "K-conjugation by " + sys.subset_name(K));
  if (!normalizes(w, K)) throw Error(ErrorCode::NotNormalizing, "K-conjugation by " + sys.subset_name(K));
  Element w0 = longest_element(sys, K);
  TwistedElement out = w.conj_by(w0);
  if (out.length() != w.length())
    throw Error(ErrorCode::InternalMismatch, "K-conjugation changed the length");
  return out;
}

Element k_conjugate(const Element& w, Subset K) { return k_conjugate(TwistedElement(w), K).body; }

ParabolicClosure parabolic_closure(const Element& w) {
  Reduction r = cyclically_reduce(TwistedElement(w));
  return {r.conjugator, r.value.body.support()};
}

std::optional<long long> order(const TwistedElement& w) {
  const CoxeterSystem& sys = w.body.system();
  Reduction r = cyclically_reduce(w);
  if (!sys.spherical(r.value.support())) return std::nullopt;
  const TwistedElement& v = r.value;
  const int n = sys.rank();
  // (u d)^k = u d(u) ... d^{k-1}(u) d^k
  Element prod(sys);
  Perm dk = perm::identity(n);
  for (long long k = 1;; ++k) {
    prod = prod * twist_element(v.body, dk);
    dk = perm::compose(v.twist.empty() ? perm::identity(n) : v.twist, dk);
    if (prod.is_identity() && perm::is_identity(dk)) return k;
    if (k > 1000000) throw Error(ErrorCode::InternalMismatch, "order search did not terminate");
  }
}

std::optional<long long> order(const Element& w) { return order(TwistedElement(w)); }

namespace {

bool tight_via(const Element& u, const Element& v, Subset K) {
  const CoxeterSystem& sys = u.system();
  for (const Element& x : *parabolic_elements(sys, K)) {
    if (u.conj_by(x) != v) continue;
    if ((x.inverse() * u).length() == x.length() + u.length()) return true;
    if ((u * x).length() == u.length() + x.length()) return true;
  }
  return false;
}

}  // namespace

bool elementarily_tightly_conjugate(const Element& u, const Element& v) {
  if (u.length() != v.length()) return false;
  const CoxeterSystem& sys = u.system();
  for (int s = 0; s < sys.rank(); ++s)
    if (u.conj(s) == v) return true;
  for (Subset K = 1; K <= sys.all(); ++K) {
    if (!sub::within(K, sys.all()) || !sys.spherical(K)) continue;
    if (!normalizes(u, K) || !normalizes(v, K)) continue;
    if (tight_via(u, v, K)) return true;
  }
  return u == v;
}

}  // namespace coxgraph
