#include "coxgraph/scalar.hpp"

#include <cmath>
#include <mpfr.h>
#include <numeric>
#include <sstream>

namespace coxgraph {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in product");
  return r;
}

namespace {

std::vector<std::int64_t> poly_mul_mod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                       const std::vector<std::int64_t>& minpoly) {
  const std::size_t d = minpoly.size() - 1;
  std::vector<std::int64_t> prod(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (b[j] != 0) prod[i + j] = checked_add(prod[i + j], checked_mul(a[i], b[j]));
  }
  for (std::size_t k = 2 * d - 1; k >= d; --k) {
    std::int64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t j = 0; j < d; ++j)
      prod[k - d + j] = checked_sub(prod[k - d + j], checked_mul(c, minpoly[j]));
  }
  prod.resize(d);
  return prod;
}

}  // namespace

Ring::Ring(int M) : M_(M) {
  if (M <= 3) {
    d_ = 1;
    minpoly_ = {-1, 1};
    gen_ = 1.0L;
    return;
  }
  const long double pi = std::acos(-1.0L);
  std::vector<long double> poly{1.0L};
  for (int k = 1; k < M; ++k) {
    if (std::gcd(k, 2 * M) != 1) continue;
    long double r = 2.0L * std::cos(k * pi / M);
    std::vector<long double> next(poly.size() + 1, 0.0L);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= r * poly[i];
    }
    poly = next;
  }
  d_ = static_cast<int>(poly.size()) - 1;
  minpoly_.assign(poly.size(), 0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    long double rounded = std::round(poly[i]);
    if (std::fabs(rounded - poly[i]) > 1e-6L)
      throw Error(ErrorCode::InternalMismatch, "minimal polynomial did not round to integers");
    minpoly_[i] = static_cast<std::int64_t>(rounded);
  }
  gen_ = 2.0L * std::cos(pi / M);
}

std::vector<std::int64_t> Ring::two_cos(int m) const {
  std::vector<std::int64_t> out(d_, 0);
  if (m == 2) return out;
  if (m == 3) {
    out[0] = 1;
    return out;
  }
  if (m == kInf) {
    out[0] = 2;
    return out;
  }
  if (d_ == 1 || M_ % m != 0) throw Error(ErrorCode::InternalMismatch, "label outside the scalar ring");
  // 2cos(k t) = V_k(2cos t) with V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1}.
  std::vector<std::int64_t> x(d_, 0), prev(d_, 0), cur(d_, 0);
  x[1 % d_] = 1;
  prev[0] = 2;
  cur = x;
  const int k = M_ / m;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    auto next = poly_mul_mod(x, cur, minpoly_);
    for (int j = 0; j < d_; ++j) next[j] = checked_sub(next[j], prev[j]);
    prev = cur;
    cur = next;
  }
  return cur;
}

void Ring::mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const {
  if (d_ == 1) {
    out[0] = checked_mul(a[0], b[0]);
    return;
  }
  auto r = poly_mul_mod(std::vector<std::int64_t>(a, a + d_), std::vector<std::int64_t>(b, b + d_), minpoly_);
  std::copy(r.begin(), r.end(), out);
}

long double Ring::approx(const std::int64_t* a) const {
  long double v = 0.0L;
  for (int k = d_ - 1; k >= 0; --k) v = v * gen_ + static_cast<long double>(a[k]);
  return v;
}

int Ring::sign(const std::int64_t* a) const {
  if (d_ == 1) return (a[0] > 0) - (a[0] < 0);
  bool zero = true;
  long double magnitude = 0.0L, power = 1.0L;
  for (int k = 0; k < d_; ++k) {
    if (a[k] != 0) zero = false;
    magnitude += std::fabs(static_cast<long double>(a[k])) * power;
    power *= std::fabs(gen_);
  }
  if (zero) return 0;
  long double v = approx(a);
  long double bound = magnitude * (d_ + 2) * 1e-17L;
  if (std::fabs(v) > 16 * bound) return v > 0 ? 1 : -1;

  for (mpfr_prec_t prec = 128; prec <= 65536; prec *= 2) {
    mpfr_t c, acc, err, tmp;
    mpfr_inits2(prec, c, acc, err, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(c, MPFR_RNDN);
    mpfr_div_ui(c, c, static_cast<unsigned long>(M_), MPFR_RNDN);
    mpfr_cos(c, c, MPFR_RNDN);
    mpfr_mul_2ui(c, c, 1, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (int k = d_ - 1; k >= 0; --k) {
      mpfr_mul(acc, acc, c, MPFR_RNDN);
      mpfr_add_si(acc, acc, static_cast<long>(a[k]), MPFR_RNDN);
    }
    mpfr_set_ld(err, magnitude * (d_ + 2) * 16, MPFR_RNDU);
    mpfr_mul_2si(err, err, -static_cast<long>(prec) + 4, MPFR_RNDU);
    mpfr_abs(tmp, acc, MPFR_RNDN);
    int result = 0;
    if (mpfr_cmp(tmp, err) > 0) result = mpfr_sgn(acc) > 0 ? 1 : -1;
    mpfr_clears(c, acc, err, tmp, static_cast<mpfr_ptr>(nullptr));
    if (result != 0) return result;
  }
  throw Error(ErrorCode::InternalMismatch, "sign refinement did not separate a nonzero value from 0");
}

std::string Ring::format(const std::int64_t* a) const {
  if (d_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < d_; ++k) {
    if (a[k] == 0) continue;
    if (!first) os << (a[k] > 0 ? "+" : "");
    first = false;
    os << a[k];
    if (k >= 1) os << "*c";
    if (k >= 2) os << "^" << k;
  }
  return first ? "0" : os.str();
}

Representation::Representation(const CoxeterSystem& sys) : n_(sys.rank()) {
  const int n = n_;
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  int M = 1;
  if (sys.is_crystallographic()) {
    if (sys.is_irreducible_affine()) {
      const TypeTag& t = sys.type().front();
      const Reference& ref = reference(Kind::Affine, t.family, t.rank);
      for (int p = 0; p <= t.rank; ++p)
        for (int q = 0; q <= t.rank; ++q) a[t.gen(p)][t.gen(q)] = ref.cartan[p][q];
    } else {
      for (int s = 0; s < n; ++s) {
        a[s][s] = 2;
        for (int t = s + 1; t < n; ++t) {
          switch (sys.m(s, t)) {
            case 2: break;
            case 3: a[s][t] = -1; a[t][s] = -1; break;
            case 4: a[s][t] = -1; a[t][s] = -2; break;
            case 6: a[s][t] = -1; a[t][s] = -3; break;
            default: a[s][t] = -2; a[t][s] = -2; break;
          }
        }
      }
    }
    ring_ = Ring(1);
    a_.resize(static_cast<std::size_t>(n) * n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) a_[static_cast<std::size_t>(s) * n + t] = a[s][t];
  } else {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        int m = sys.m(s, t);
        if (s != t && m != 2 && m != 3 && m != kInf) M = std::lcm(M, m);
      }
    ring_ = Ring(M);
    const int d = ring_.degree();
    a_.assign(static_cast<std::size_t>(n) * n * d, 0);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        std::int64_t* dst = &a_[(static_cast<std::size_t>(s) * n + t) * d];
        if (s == t) {
          dst[0] = 2;
          continue;
        }
        auto c = ring_.two_cos(sys.m(s, t));
        for (int k = 0; k < d; ++k) dst[k] = -c[k];
      }
  }
  row_nz_.assign(n, {});
  col_nz_.assign(n, {});
  const int d = ring_.degree();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      const std::int64_t* e = &a_[(static_cast<std::size_t>(s) * n + t) * d];
      bool nz = false;
      for (int k = 0; k < d; ++k) nz = nz || e[k] != 0;
      if (nz) {
        row_nz_[s].push_back(t);
        col_nz_[t].push_back(s);
      }
    }
}

}  // namespace coxgraph
