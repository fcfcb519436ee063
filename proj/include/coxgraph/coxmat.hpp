#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxgraph/errors.hpp"
#include "coxgraph/subset.hpp"

namespace coxgraph {

// Coxeter label used for m_st = infinity.
inline constexpr int kInf = 0;

using Matrix = std::vector<std::vector<int>>;

enum class Kind { Finite, Affine, Indefinite };

// Classification of one connected component against the reference diagrams.
// Finite types number their vertices 1..n, affine types 0..l.
struct TypeTag {
  Kind kind = Kind::Indefinite;
  char family = '?';
  int rank = 0;  // n for X_n, l for X_l^(1)
  int m = 0;     // dihedral label of I2(m)
  Subset members = 0;
  std::vector<int> labels;  // labels[k] = generator at reference vertex k (-1 if unused)
  std::vector<int> marks;   // affine: coefficient of alpha_k in delta
  Subset special = 0;       // affine: special vertices, as generator indices

  std::string name() const;
  int gen(int k) const { return labels.at(k); }
  int vertex_of(int g) const;
  bool is_finite() const { return kind == Kind::Finite; }
  bool is_affine() const { return kind == Kind::Affine; }
};

class Representation;

class CoxeterSystem {
 public:
  static std::shared_ptr<const CoxeterSystem> make(Matrix matrix,
                                                   std::vector<std::string> names = {});
  CoxeterSystem(Matrix matrix, std::vector<std::string> names);
  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;
  ~CoxeterSystem();

  int rank() const { return static_cast<int>(matrix_.size()); }
  int m(int s, int t) const { return matrix_[s][t]; }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<std::string>& names() const { return names_; }
  Subset all() const { return sub::full(rank()); }
  bool adjacent(int s, int t) const { return s != t && (matrix_[s][t] == kInf || matrix_[s][t] > 2); }
  bool is_crystallographic() const;
  const std::vector<TypeTag>& type() const { return type_; }
  bool is_irreducible_affine() const;
  bool is_finite() const;
  const Representation& rep() const { return *rep_; }

  bool spherical(Subset I) const;
  std::string subset_name(Subset I) const { return sub::to_string(I, names_); }

  // Per-system memo of derived data keyed by (slot, subset).
  template <class T, class F>
  std::shared_ptr<const T> memo(int slot, Subset key, F make) const {
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = memo_.find({slot, key});
      if (it != memo_.end()) return std::static_pointer_cast<const T>(it->second);
    }
    auto value = std::make_shared<const T>(make());
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, fresh] = memo_.emplace(std::make_pair(slot, key), value);
    return std::static_pointer_cast<const T>(it->second);
  }

 private:
  Matrix matrix_;
  std::vector<std::string> names_;
  std::vector<TypeTag> type_;
  std::unique_ptr<Representation> rep_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Subset, bool> spherical_cache_;
  mutable std::map<std::pair<int, Subset>, std::shared_ptr<const void>> memo_;
};

using SystemPtr = std::shared_ptr<const CoxeterSystem>;

// Reference diagram for a type symbol.
struct Reference {
  Kind kind = Kind::Finite;
  char family = 'A';
  int rank = 0;
  int m = 0;
  int offset = 1;     // vertex label of position 0
  Matrix cox;         // Coxeter matrix by position
  Matrix cartan;      // generalized Cartan matrix by position (empty if non-crystallographic)
  std::vector<int> marks;
  std::string name() const;
};

const Reference& reference(Kind kind, char family, int rank, int m = 0);
Matrix finite_cartan(char family, int n);
Matrix cartan_to_coxeter(const Matrix& a);
// Positive roots of a finite Cartan matrix, as coefficient vectors (simple roots first).
std::vector<std::vector<long long>> positive_roots(const Matrix& cartan);

std::vector<Subset> components(const CoxeterSystem& sys, Subset I);

// anchor >= 0 forces an affine match to put reference vertex 0 on that generator.
TypeTag classify_component(const CoxeterSystem& sys, Subset comp, int anchor = -1);
std::vector<TypeTag> classify(const CoxeterSystem& sys, Subset I);

Perm opposition(const CoxeterSystem& sys, Subset K);

// Generators of the extended-affine quotient as full permutations of the generators.
std::vector<Perm> extended_autgroup(const CoxeterSystem& sys, const TypeTag& tag);
// Element of the extended-affine quotient of tag mapping tau to s (identity if s not special).
Perm sigma_s(const CoxeterSystem& sys, const TypeTag& tag, int tau, int s);

bool is_diagram_automorphism(const CoxeterSystem& sys, const Perm& p, Subset domain);

Matrix read_matrix_json(const std::string& text, std::vector<std::string>* names);
std::string write_matrix_json(const CoxeterSystem& sys);

// Standard systems in reference numbering.
SystemPtr finite_system(char family, int n, int m = 0);
SystemPtr affine_system(char family, int l);

}  // namespace coxgraph
