#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coxgraph/coxmat.hpp"

namespace coxgraph {

// The ring Z[c] with c = 2cos(pi/M), or Z itself when M <= 3.
// Elements are coefficient vectors of length degree() in the basis 1, c, c^2, ...
class Ring {
 public:
  Ring() = default;
  explicit Ring(int M);

  int degree() const { return d_; }
  int modulus() const { return M_; }
  bool is_integer() const { return d_ == 1; }
  const std::vector<std::int64_t>& minimal_polynomial() const { return minpoly_; }

  // 2cos(pi/m), with m = kInf giving 2.
  std::vector<std::int64_t> two_cos(int m) const;

  void mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const;
  int sign(const std::int64_t* a) const;
  long double approx(const std::int64_t* a) const;
  std::string format(const std::int64_t* a) const;

 private:
  int M_ = 1;
  int d_ = 1;
  std::vector<std::int64_t> minpoly_{-1, 1};  // monic, low degree first
  long double gen_ = 1.0L;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// The canonical linear representation of a Coxeter system on its root lattice:
// s(v) = v - (sum_t A(s,t) v_t) e_s.  Crystallographic systems use an integral
// generalized Cartan matrix; the others use A(s,t) = -2cos(pi/m_st) over Z[c].
class Representation {
 public:
  explicit Representation(const CoxeterSystem& sys);

  const Ring& ring() const { return ring_; }
  int n() const { return n_; }
  int d() const { return ring_.degree(); }
  const std::int64_t* A(int s, int t) const { return &a_[(static_cast<std::size_t>(s) * n_ + t) * d()]; }
  std::int64_t a_int(int s, int t) const { return a_[static_cast<std::size_t>(s) * n_ + t]; }
  // Generators t != s with A(s,t) != 0.
  const std::vector<int>& row_support(int s) const { return row_nz_[s]; }
  // Generators t != s with A(t,s) != 0.
  const std::vector<int>& col_support(int s) const { return col_nz_[s]; }

 private:
  Ring ring_;
  int n_ = 0;
  std::vector<std::int64_t> a_;
  std::vector<std::vector<int>> row_nz_, col_nz_;
};

}  // namespace coxgraph
