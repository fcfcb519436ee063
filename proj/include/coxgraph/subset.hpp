#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace coxgraph {

// Bitset over generator indices 0..63.
using Subset = std::uint64_t;

// Permutation of an index space; p[i] is the image of i.
using Perm = std::vector<int>;

namespace sub {

constexpr Subset bit(int i) { return Subset{1} << i; }
constexpr bool has(Subset s, int i) { return (s >> i) & 1U; }
constexpr int size(Subset s) { return std::popcount(s); }
constexpr Subset full(int n) { return n >= 64 ? ~Subset{0} : bit(n) - 1; }
constexpr bool within(Subset a, Subset b) { return (a & ~b) == 0; }
constexpr int lowest(Subset s) { return s ? std::countr_zero(s) : -1; }

inline std::vector<int> members(Subset s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

inline Subset of(const std::vector<int>& v) {
  Subset s = 0;
  for (int i : v) s |= bit(i);
  return s;
}

// Lexicographic order on the sorted member lists.
inline bool lex_less(Subset a, Subset b) {
  auto ma = members(a), mb = members(b);
  return ma < mb;
}

std::string to_string(Subset s, const std::vector<std::string>& names = {});

}  // namespace sub

namespace perm {

Perm identity(int n);
Perm compose(const Perm& a, const Perm& b);  // x -> a[b[x]]
Perm inverse(const Perm& p);
Perm power(const Perm& p, long long k);
bool is_identity(const Perm& p);
Subset apply(const Perm& p, Subset s);
int order(const Perm& p);
// Closure of a set of generators under composition (identity included).
std::vector<Perm> generate(const std::vector<Perm>& gens, int n);
// Smallest p-invariant superset of s.
Subset closure(const std::vector<Perm>& ps, Subset s);
std::string to_cycles(const Perm& p, const std::vector<std::string>& names = {});

}  // namespace perm

}  // namespace coxgraph
