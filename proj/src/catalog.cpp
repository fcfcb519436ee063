#include "coxgraph/catalog.hpp"

#include <algorithm>

#include "coxgraph/affine.hpp"

namespace coxgraph {

namespace {

Element from(const CoxeterSystem& sys, const Word& w) { return reduce(sys, w); }

SystemPtr build(int n, const std::vector<std::tuple<int, int, int>>& edges, std::vector<std::string> names) {
  Matrix m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (auto [i, j, v] : edges) m[i][j] = m[j][i] = v;
  return CoxeterSystem::make(m, std::move(names));
}

std::vector<CatalogEntry> make_catalog() {
  auto d7 = [] { return affine_system('D', 7); };
  auto e7 = [] { return affine_system('E', 7); };
  auto e7w = [](Word u, int n) {
    return [u, n](const CoxeterSystem& s) { return from(s, u) * e7_normalizer(s).pow(n); };
  };
  return {
      {"d7-1", "D7^(1), w = s1 s3 s4 s5 s6 s0 r_theta", d7,
       [](const CoxeterSystem& s) { return from(s, {1, 3, 4, 5, 6}) * d7_translation(s); }, {4, 4, 2, 0, 0}},
      {"d7-2", "D7^(1), w = s3 s4 s5 s6 s0 r_theta", d7,
       [](const CoxeterSystem& s) { return from(s, {3, 4, 5, 6}) * d7_translation(s); }, {2, 1, 1, 1, 1}},
      {"e7-1", "E7^(1), w = s4 x", e7, e7w({4}, 1), {1, 0, 0, 1, 1}},
      {"e7-2", "E7^(1), w = s4 s7 x", e7, e7w({4, 7}, 1), {2, 1, 1, 1, 1}},
      {"e7-3", "E7^(1), w = s1 s4 s5 x^2", e7, e7w({1, 4, 5}, 2), {2, 1, 1, 1, 1}},
      {"e7-4", "E7^(1), w = s1 s4 s5 s7 x^2", e7, e7w({1, 4, 5, 7}, 2), {4, -1, -1, 0, 1}},
      {"a5-big", "A5^(1), large-diameter family n = 1", [] { return affine_system('A', 5); },
       [](const CoxeterSystem& s) { return big_diameter_element(s, 1); }, {3, 3, 1, 1, 1}},
      {"a9-big", "A9^(1), large-diameter family n = 2", [] { return affine_system('A', 9); },
       [](const CoxeterSystem& s) { return big_diameter_element(s, 2); }, {5, 5, 2, 0, 0}},
      {"bipartite-nw2", "rank 5 bipartite system, w = s1 x^2 with centraliser degree 2", bipartite_system,
       [](const CoxeterSystem& s) { return from(s, {0}) * bipartite_core(s).pow(2); }, {1, 0, 0, 1, 1}},
      {"twin-d4", "rank 5 twin D4 system, w = a x", twin_d4_system,
       [](const CoxeterSystem& s) { return from(s, {0}) * twin_d4_core(s); }, {3, 3, 1, 1, 1}},
  };
}

}  // namespace

Element d7_translation(const CoxeterSystem& d7) {
  Element x = from(d7, {2, 1, 3, 2, 4, 3, 5, 4, 6, 5});
  Element r_theta = x * Element::generator(d7, 7) * x.inverse();
  return Element::generator(d7, 0) * r_theta;
}

Element e7_normalizer(const CoxeterSystem& e7) {
  return Element::generator(e7, 0) * longest_element(e7, sub::of({1, 2, 3, 4, 5})) *
         longest_element(e7, sub::of({2, 3, 4, 5, 6, 7})) * Element::generator(e7, 7);
}

Element big_diameter_element(const CoxeterSystem& a, int n) {
  const int m = 4 * n + 1;
  QVec lambda(m);
  for (int i = 1; i <= m; ++i) lambda[i - 1] = std::min(i, m + 1 - i);
  Element t = translation_element(a, lambda);
  Word u;
  for (int i = 1; i <= 2 * n - 1; ++i) u.push_back(i);
  for (int i = 2 * n + 2; i <= 4 * n; ++i) u.push_back(i);
  return from(a, u) * t;
}

SystemPtr bipartite_system() {
  return build(5, {{0, 2, 3}, {0, 3, 3}, {0, 4, 3}, {1, 2, 3}, {1, 3, 3}, {1, 4, 3}}, {"s1", "s2", "s3", "s4", "s5"});
}

Element bipartite_core(const CoxeterSystem& sys) { return from(sys, {2, 0, 1, 2, 3, 0, 1, 3, 4, 0, 1, 4}); }

SystemPtr twin_d4_system() {
  return build(5, {{0, 1, 3}, {1, 2, 3}, {1, 3, 3}, {1, 4, 3}, {3, 4, kInf}}, {"a", "b", "c", "d", "e"});
}

Element twin_d4_core(const CoxeterSystem& sys) {
  Subset I = sub::of({0, 1, 2});
  return longest_element(sys, I | sub::bit(3)) * longest_element(sys, I | sub::bit(4));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry* find_example(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace coxgraph
