#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "coxgraph/cycshift.hpp"
#include "coxgraph/graph.hpp"

namespace coxgraph {

using Rational = boost::multiprecision::cpp_rational;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// Geometric data of an irreducible affine system. Points of V use coordinates in the basis of
// simple coroots of the finite part (generator order, affine node skipped).
class AffineGeometry {
 public:
  explicit AffineGeometry(const CoxeterSystem& sys);

  const CoxeterSystem& system() const { return *sys_; }
  const TypeTag& tag() const { return tag_; }
  int node() const { return node_; }
  int dim() const { return static_cast<int>(finite_.size()); }
  const std::vector<int>& finite() const { return finite_; }
  int coord(int gen) const { return coord_[gen]; }
  // Coefficients of theta (in simple roots) and theta^vee (in simple coroots), by coordinate.
  const std::vector<long long>& theta() const { return theta_; }
  const std::vector<long long>& theta_coroot() const { return theta_vee_; }
  // Kac vertex of a generator.
  int kac(int gen) const { return tag_.vertex_of(gen); }

  // <alpha_s, x> for a finite generator s.
  Rational pairing(int s, const QVec& x) const;
  // Affine function of the wall of s, positive on the fundamental alcove.
  Rational wall(int s, const QVec& x) const;
  QVec reflect(int s, const QVec& x) const;
  // Affine function of a real root given in the simple-root basis of W.
  Rational root_function(const RootVector& beta, const QVec& x) const;

 private:
  const CoxeterSystem* sys_;
  TypeTag tag_;
  int node_ = -1;
  std::vector<int> finite_;
  std::vector<int> coord_;
  std::vector<long long> theta_, theta_vee_;
};

std::shared_ptr<const AffineGeometry> affine_geometry(const CoxeterSystem& sys);

struct AffineMap {
  QMat U;  // linear part
  QVec h;  // image of the origin
  QVec operator()(const QVec& x) const;
  AffineMap operator*(const AffineMap& o) const;  // this after o
  bool is_translation() const;
  static AffineMap identity(int n);
};

AffineMap affine_map(const Element& w);
QVec affine_action(const Element& w, const QVec& x);
// w(x) - x is the same vector for x = 0 and every simple coroot.
bool is_translation(const Element& w);
// The translation of W by lambda (coroot coordinates); throws unless lambda is in the coroot lattice.
Element translation_element(const CoxeterSystem& sys, const QVec& lambda);
// Order of the linear part of w.
int linear_order(const Element& w);
// Translation vector of w^k, k the order of the linear part (zero iff w has finite order).
QVec translation_power(const Element& w, int* k = nullptr);

struct Standardization {
  Element a_w;    // in the finite parabolic, minimal in a_w W_I
  Subset I_eta = 0;
  Element v;      // a_w^-1 w a_w
  QVec direction; // translation vector of the standardized element
};
Standardization p_w_infty_standardize(const Element& w);

struct TransversalSystem {
  const CoxeterSystem* ambient = nullptr;
  Subset I_eta = 0;
  std::vector<Subset> components;  // components of I_eta ordered by smallest Kac index
  SystemPtr sys;                   // Coxeter system on S^eta (null if I_eta is empty)
  std::vector<int> gen_of;         // S^eta index -> ambient generator (-1 for tau)
  std::vector<int> tau;            // S^eta index of tau_c
  std::vector<Word> tau_words;     // reflection words of tau_c in the ambient group
  std::vector<Element> elements;   // S^eta generators as ambient elements
  std::vector<RootVector> roots;   // positive roots of the S^eta generators
  std::vector<TypeTag> ext;        // per component, affine tag with tau_c at vertex 0
  std::vector<Subset> ext_members; // per component, S^eta indices of I_c^ext

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(int ambient_gen) const;
  Subset lift(Subset ambient) const;     // ambient subset of I_eta -> S^eta subset
  Element expand(const Word& w) const;   // S^eta word -> ambient element
  Element longest(Subset L) const;       // w_0(L) in the ambient group
  // S^eta word of an ambient element of W^eta (descent rewriting).
  Word rewrite(const Element& g) const;
  // The S^eta generator whose reflection is r_beta, if any.
  std::optional<int> generator_of_root(const RootVector& beta) const;
};

TransversalSystem transversal_system(const CoxeterSystem& sys, Subset I_eta);

struct StandardSplitting {
  Element w0;
  Element winf;
  Element v;     // P_w^min = v W_I v^-1, v minimal in v W_I
  Subset I = 0;
};
StandardSplitting standard_splitting(const Element& w);

struct DeltaIw {
  Perm delta;       // on S^eta
  Subset I_w = 0;   // S^eta subset
  StandardSplitting splitting;
};
DeltaIw delta_and_Iw_affine(const Element& v, const TransversalSystem& T);

// Generators of Xi_eta from the classification table, as permutations of S^eta.
std::vector<Perm> xi_eta(const TransversalSystem& T);
// Generators of Xi_eta from the coweight classes of the coroot translations, as permutations of S^eta.
std::vector<Perm> xi_eta_lattice(const TransversalSystem& T);
// Generators of the full extended group of S^eta.
std::vector<Perm> xi_full(const TransversalSystem& T);
// sigma_i for classical types: the automorphism of I_c^ext mapping tau_c to the vertex of I_c
// with the smallest Kac index (identity if that vertex is not special).
Perm sigma_component(const TransversalSystem& T, int c);
// sigma_s for an ambient generator s (identity if s is not in I_eta or not special).
Perm sigma_gen(const TransversalSystem& T, int s);

struct AffineGraphReport {
  Element reduced;      // cyclically reduced input
  Standardization standard;
  TransversalSystem T;
  DeltaIw dw;
  std::vector<Perm> xi_eta_gens;   // from the coweight classes
  std::vector<Perm> xi_eta_table;  // from the classification table
  bool table_agrees = true;        // both generate the same group
  std::vector<Perm> xi_w;   // all elements of Xi_w
  ConjGraph component;      // K^0_{delta_w}(I_w)
  ConjGraph graph;          // quotient by Xi_w with representatives
  ConjGraph tight;          // spherical-path closure, quotient by Xi_w
};
AffineGraphReport structural_graph_affine(const Element& w);

struct KConjCertificate {
  Element a;
  Subset K = 0;
};
// a minimal in a W_K with W^eta_L = a W_K a^-1 and a^-1 w a cyclically reduced.
std::optional<KConjCertificate> k_conj_certificate(const TransversalSystem& T, const Element& w, Subset L,
                                                   std::size_t cap = 20000);

}  // namespace coxgraph
