#include "coxgraph/subset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "coxgraph/errors.hpp"

namespace coxgraph {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSpherical: return "NonSpherical";
    case ErrorCode::NotNormalizing: return "NotNormalizing";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::InfiniteOrder: return "InfiniteOrder";
    case ErrorCode::FiniteOrder: return "FiniteOrder";
    case ErrorCode::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case ErrorCode::NotFullClosure: return "NotFullClosure";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NotStandard: return "NotStandard";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Error";
}

namespace sub {

std::string to_string(Subset s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ",";
    first = false;
    out += (i < static_cast<int>(names.size())) ? names[i] : std::to_string(i);
  }
  return out + "}";
}

}  // namespace sub

namespace perm {

Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

Perm power(const Perm& p, long long k) {
  Perm base = k < 0 ? inverse(p) : p;
  if (k < 0) k = -k;
  Perm out = identity(static_cast<int>(p.size()));
  while (k > 0) {
    if (k & 1) out = compose(out, base);
    base = compose(base, base);
    k >>= 1;
  }
  return out;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

Subset apply(const Perm& p, Subset s) {
  if (p.empty()) return s;
  Subset out = 0;
  for (int i : sub::members(s)) out |= sub::bit(p[i]);
  return out;
}

int order(const Perm& p) {
  int k = 1;
  Perm q = p;
  while (!is_identity(q)) {
    q = compose(q, p);
    ++k;
  }
  return k;
}

std::vector<Perm> generate(const std::vector<Perm>& gens, int n) {
  std::set<Perm> seen{identity(n)};
  std::vector<Perm> queue{identity(n)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Perm& g : gens) {
      Perm q = compose(g, queue[i]);
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return {seen.begin(), seen.end()};
}

Subset closure(const std::vector<Perm>& ps, Subset s) {
  Subset prev = ~s;
  while (prev != s) {
    prev = s;
    for (const Perm& p : ps) s |= apply(p, s);
  }
  return s;
}

std::string to_cycles(const Perm& p, const std::vector<std::string>& names) {
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : std::to_string(i);
  };
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    int j = static_cast<int>(i);
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ",";
      first = false;
      out += name(j);
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

}  // namespace perm
}  // namespace coxgraph
