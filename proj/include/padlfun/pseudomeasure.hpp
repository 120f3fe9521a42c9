#ifndef PADLFUN_PSEUDOMEASURE_HPP
#define PADLFUN_PSEUDOMEASURE_HPP

#include <map>
#include <string>

#include "padlfun/measures.hpp"

namespace padlfun {

/// One branch of an element of Frac(Lambda): p^mu S(t)/P(t). mu may be negative.
struct PseudoBranch {
  IwasawaSeries S;
  DistinguishedPoly P;
  long mu = 0;
};

struct Pseudomeasure {
  long p = 5;
  std::map<long, PseudoBranch> branches;  // keyed by j mod (p-1)

  /// Representation-level equality mod (p^n, t^d).
  bool equal_mod(const Pseudomeasure& o, long n, long d) const {
    if (p != o.p || branches.size() != o.branches.size()) return false;
    for (const auto& [j, b] : branches) {
      auto it = o.branches.find(j);
      if (it == o.branches.end()) return false;
      const auto& c = it->second;
      if (b.mu != c.mu || !b.P.equal_mod(c.P, n) || !b.S.equal_mod(c.S, n, d)) return false;
    }
    return true;
  }
};

/// Branch-wise series of mu_c itself (denominator 1).
inline Pseudomeasure pseudomeasure_of_mazur(long p, long c, long d, long n) {
  Pseudomeasure rho;
  rho.p = p;
  for (long j = 0; j < p - 1; ++j) {
    ZetaBranch b = iwasawa_series(p, j, c, d, n);
    rho.branches[j] = {b.G, DistinguishedPoly::one(p, n), 0};
  }
  return rho;
}

/// p^mu S(t0)/P(t0); a vanishing denominator raises PoleError with the
/// nearby roots of P as location.
inline PadicNum mellin_eval(const Pseudomeasure& rho, long j, const PadicNum& t0) {
  auto it = rho.branches.find(mod_floor(j, rho.p - 1));
  if (it == rho.branches.end()) throw DomainError("mellin_eval: no such branch");
  const PseudoBranch& b = it->second;
  if (!t0.is_exact_zero() && t0.valuation() < 1) throw DomainError("mellin_eval: t0 must lie in pZ_p");
  PadicNum den = b.P.eval(t0);
  if (den.is_zero()) {
    std::string loc;
    for (const auto& r : roots_in_pZp(b.P, b.P.prec())) loc += (loc.empty() ? "" : ", ") + r.to_string();
    throw PoleError("mellin_eval: denominator vanishes at t0 = " + t0.to_string(), loc.empty() ? t0.to_string() : loc);
  }
  PadicNum num = b.S.eval(t0);
  PadicNum pm = PadicNum::make(rho.p, b.mu, 1, std::max(num.abs_prec(), 1L) + std::abs(b.mu) + 2);
  return pm * num / den;
}

/// Cell values rho_x(a + pZ_p) = (1/(p-1)) sum_i omega(a)^{-i} M(j_x + i, t0),
/// omitting characters at which the denominator vanishes. Missing branches
/// contribute zero.
inline std::map<long, PadicNum> distribution_values(const Pseudomeasure& rho, const BranchChar& x,
                                                    const PadicNum& t0, long v = 1) {
  if (v != 1) throw DomainError("distribution_values: only tame level v = 1");
  long p = rho.p;
  std::vector<PadicNum> mellin(static_cast<std::size_t>(p - 1));
  std::vector<bool> present(static_cast<std::size_t>(p - 1), false);
  long prec = kInfiniteValuation;
  for (long i = 0; i < p - 1; ++i) {
    long j = mod_floor(x.j + i, p - 1);
    if (!rho.branches.count(j)) continue;
    try {
      mellin[static_cast<std::size_t>(i)] = mellin_eval(rho, j, t0);
      present[static_cast<std::size_t>(i)] = true;
      prec = std::min(prec, mellin[static_cast<std::size_t>(i)].abs_prec());
    } catch (const PoleError&) {
    }
  }
  if (prec == kInfiniteValuation) prec = 16;
  std::map<long, PadicNum> out;
  PadicNum inv = padic_one(p, prec + 2) / from_int(p - 1, p, prec + 2);
  for (long a = 1; a < p; ++a) {
    PadicNum acc = PadicNum::exact_zero(p);
    PadicNum w = teichmuller(BigInt(a), p, prec + 2);
    for (long i = 0; i < p - 1; ++i) {
      if (!present[static_cast<std::size_t>(i)]) continue;
      acc += w.pow(-i) * mellin[static_cast<std::size_t>(i)];
    }
    out[a] = acc * inv;
  }
  return out;
}

}  // namespace padlfun

#endif
