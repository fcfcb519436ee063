#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "coxgraph/element.hpp"

namespace coxgraph {

// Cyclic shift class of a (twisted) element with a shift path back to the seed.
struct CycClass {
  std::vector<TwistedElement> elements;  // discovery order; elements[0] is the seed
  std::vector<int> parent;               // -1 for the seed
  std::vector<int> via;                  // generator s with elements[i] = s * elements[parent] * twist(s)
  std::unordered_map<TwistedElement, int, TwistedHash> index;
  int min_length = 0;

  bool contains(const TwistedElement& v) const { return index.count(v) != 0; }
  // Generators s_1..s_k with elements[i] = conj_by(s_1 ... s_k) of the seed.
  Word path(int i) const;
  // Indices of the minimal-length stratum in ShortLex order.
  std::vector<int> minimal() const;
};

CycClass cyc_class(const TwistedElement& w, std::size_t cap = 5000000);
CycClass cyc_class(const Element& w, std::size_t cap = 5000000);

struct CycMin {
  std::vector<TwistedElement> elements;  // ShortLex order
  std::vector<Word> witness;             // shift path from the seed
};

CycMin cyc_min(const TwistedElement& w);
CycMin cyc_min(const Element& w);

bool is_cyclically_reduced(const TwistedElement& w);
bool is_cyclically_reduced(const Element& w);

// A minimal-length element of Cyc(w) reached by strictly decreasing shifts where possible.
struct Reduction {
  TwistedElement value;  // x^-1 * w * twist(x)
  Element conjugator;    // x
};
Reduction cyclically_reduce(const TwistedElement& w);

// w_0(K) * w * twist(w_0(K)).
TwistedElement k_conjugate(const TwistedElement& w, Subset K);
Element k_conjugate(const Element& w, Subset K);

// Pc(w) = a * W_K * a^-1.
struct ParabolicClosure {
  Element a;
  Subset K = 0;
};
ParabolicClosure parabolic_closure(const Element& w);

// Order of w (twist included); nullopt means infinite.
std::optional<long long> order(const TwistedElement& w);
std::optional<long long> order(const Element& w);

// u, v are elementarily tightly conjugate.
bool elementarily_tightly_conjugate(const Element& u, const Element& v);

}  // namespace coxgraph
