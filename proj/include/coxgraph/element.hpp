#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxgraph/coxmat.hpp"
#include "coxgraph/scalar.hpp"

namespace coxgraph {

using Word = std::vector<int>;

// Vector of V in the simple-root basis: n blocks of ring coefficients.
using RootVector = std::vector<std::int64_t>;

namespace root {
RootVector simple(const CoxeterSystem& sys, int s);
bool is_zero(const RootVector& v);
// Sign of a vector all of whose nonzero coordinates share one sign.
int sign(const CoxeterSystem& sys, const RootVector& v);
Subset support(const CoxeterSystem& sys, const RootVector& v);
RootVector reflect(const CoxeterSystem& sys, int s, const RootVector& v);
RootVector negate(const RootVector& v);
long double height(const CoxeterSystem& sys, const RootVector& v);
std::string format(const CoxeterSystem& sys, const RootVector& v);
}  // namespace root

class Element {
 public:
  Element() = default;
  explicit Element(const CoxeterSystem& sys);

  static Element identity(const CoxeterSystem& sys) { return Element(sys); }
  static Element generator(const CoxeterSystem& sys, int s);

  const CoxeterSystem& system() const { return *sys_; }
  bool valid() const { return sys_ != nullptr; }
  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }
  // ShortLex-least reduced word.
  const Word& word() const;

  bool right_descent(int s) const;  // l(ws) < l(w)
  bool left_descent(int s) const;   // l(sw) < l(w)
  Subset right_descents() const;
  Subset left_descents() const;

  Element rmul(int s) const;
  Element lmul(int s) const;
  Element conj(int s) const { return lmul(s).rmul(s); }
  Element rmul(const Word& w) const;
  Element lmul(const Word& w) const;
  Element operator*(const Element& other) const;
  Element inverse() const;
  // x^-1 * this * x
  Element conj_by(const Element& x) const;
  Element pow(int k) const;

  Subset support() const;
  RootVector column(int s) const;  // w(e_s)
  RootVector apply(const RootVector& v) const;
  RootVector apply_inverse(const RootVector& v) const;

  bool operator==(const Element& o) const { return mat_ == o.mat_; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  // ShortLex order.
  bool operator<(const Element& o) const;
  std::size_t hash() const;
  std::string str() const;

 private:
  void rmul_in_place(int s);
  void lmul_in_place(int s);
  static void right_act(const CoxeterSystem& sys, std::vector<std::int64_t>& m, int s);
  static void left_act(const CoxeterSystem& sys, std::vector<std::int64_t>& m, int s);
  int col_sign(const std::vector<std::int64_t>& m, int s) const;

  const CoxeterSystem* sys_ = nullptr;
  int length_ = 0;
  std::vector<std::int64_t> mat_;  // column-major: column t is w(e_t)
  std::vector<std::int64_t> inv_;  // matrix of w^-1
  mutable std::optional<Word> word_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

// Element of W x| Aut(W,S), written body * twist.
struct TwistedElement {
  Element body;
  Perm twist;  // empty means identity

  TwistedElement() = default;
  explicit TwistedElement(Element b, Perm t = {}) : body(std::move(b)), twist(std::move(t)) {}

  int length() const { return body.length(); }
  bool twisted() const { return !twist.empty() && !perm::is_identity(twist); }
  int act(int s) const { return twist.empty() ? s : twist[s]; }
  // s * body * twist(s)
  TwistedElement conj(int s) const;
  // x^-1 * body * twist(x)
  TwistedElement conj_by(const Element& x) const;
  Subset support() const;
  bool operator==(const TwistedElement& o) const;
  bool operator!=(const TwistedElement& o) const { return !(*this == o); }
  bool operator<(const TwistedElement& o) const { return body < o.body; }
  std::size_t hash() const;
};

struct TwistedHash {
  std::size_t operator()(const TwistedElement& e) const { return e.hash(); }
};

Element reduce(const CoxeterSystem& sys, const Word& word);
// Applies a diagram automorphism to an element.
Element twist_element(const Element& w, const Perm& p);

Element longest_element(const CoxeterSystem& sys, Subset K);

enum class Side { Left, Right };
// Minimal representative of W_K w (Left) or w W_K (Right).
Element min_coset_rep(const Element& w, Subset K, Side side);
// Minimal representative of W_J w W_K.
Element min_double_coset_rep(const Element& w, Subset J, Subset K);

bool normalizes(const Element& w, Subset K);
bool normalizes(const TwistedElement& w, Subset K);

struct NormalizerSplit {
  Element w_I;
  Element n_I;
};
NormalizerSplit normalizer_split(const Element& w, Subset I);

struct TwistedSplit {
  Element w_I;
  TwistedElement n_I;
};
TwistedSplit normalizer_split(const TwistedElement& w, Subset I);

// Word of the reflection in a positive real root, as a palindrome.
Word reflection_word(const CoxeterSystem& sys, const RootVector& beta);

// Permutation of K induced by a Pi_K-stabilizing element (n e_s = e_{p(s)}).
std::optional<Perm> induced_permutation(const Element& n, Subset K);

// All elements of a finite parabolic subgroup in ShortLex order.
std::vector<Element> enumerate_parabolic(const CoxeterSystem& sys, Subset K,
                                         std::size_t cap = 2000000);
// Cached per system.
std::shared_ptr<const std::vector<Element>> parabolic_elements(const CoxeterSystem& sys, Subset K);

std::string word_string(const Word& w, const CoxeterSystem* sys = nullptr);
Word parse_word(const std::string& text, const CoxeterSystem* sys = nullptr);

}  // namespace coxgraph

template <>
struct std::hash<coxgraph::Element> {
  std::size_t operator()(const coxgraph::Element& e) const { return e.hash(); }
};
template <>
struct std::hash<coxgraph::TwistedElement> {
  std::size_t operator()(const coxgraph::TwistedElement& e) const { return e.hash(); }
};
