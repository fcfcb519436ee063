#pragma once

#include <random>

#include "coxgraph/coxmat.hpp"
#include "coxgraph/element.hpp"

namespace testing_util {

using namespace coxgraph;

inline Word random_word(std::mt19937& rng, int rank, int length) {
  std::uniform_int_distribution<int> pick(0, rank - 1);
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(pick(rng));
  return w;
}

// A uniformly chosen reduced word of w, built by peeling random right descents.
inline Word random_reduced_word(std::mt19937& rng, const Element& w) {
  Word rev;
  Element x = w;
  while (!x.is_identity()) {
    auto d = sub::members(x.right_descents());
    std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
    int s = d[pick(rng)];
    rev.push_back(s);
    x = x.rmul(s);
  }
  return Word(rev.rbegin(), rev.rend());
}

inline SystemPtr triangle(int a, int b, int c) {
  return CoxeterSystem::make({{1, a, b}, {a, 1, c}, {b, c, 1}});
}

}  // namespace testing_util
