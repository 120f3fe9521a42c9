#ifndef PADLFUN_MEASURES_HPP
#define PADLFUN_MEASURES_HPP

// Mazur's regularized Bernoulli measure, its moments, the branch series
// G_{theta,c}(t) and the p-adic zeta / Dirichlet L evaluators built on it.

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "padlfun/series.hpp"

namespace padlfun {

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

/// Smallest c > 1 coprime to p * extra.
inline long default_regularizer(long p, long extra = 1) {
  for (long c = 2;; ++c)
    if (gcd_long(c, p) == 1 && gcd_long(c, extra) == 1) return c;
}

struct MazurMeasure {
  long p = 5;
  long c = 2;
  std::vector<long> aux;  // extra primes for the multi-prime variant

  MazurMeasure() = default;
  MazurMeasure(long p_, long c_, std::vector<long> aux_ = {}) : p(p_), c(c_), aux(std::move(aux_)) {
    check_prime(p);
    if (c <= 1 || gcd_long(c, p) != 1) throw DomainError("regularizer c must be > 1 and prime to p");
    for (long l : aux)
      if (gcd_long(c, l) != 1) throw DomainError("regularizer c must be prime to the auxiliary primes");
  }

  bool admissible_modulus(long modulus) const {
    long m = modulus;
    auto strip = [&](long q) {
      while (m % q == 0) m /= q;
    };
    strip(p);
    for (long l : aux) strip(l);
    return m == 1;
  }
};

/// (1/c) B_1({c a / M}) - B_1({a / M}) = -floor(c a' / M)/c + (c-1)/(2c), a' = a mod M.
inline Rat measure_value(const MazurMeasure& mu, long a, long modulus) {
  if (modulus <= 0 || !mu.admissible_modulus(modulus))
    throw DomainError("measure_value: modulus must be supported on p and the auxiliary primes");
  if (gcd_long(mod_floor(a, modulus), modulus) != 1) throw DomainError("measure_value: a not prime to the modulus");
  BigInt ar = mod_floor(a, modulus);
  BigInt fl;
  BigInt ca = ar * mu.c;
  mpz_fdiv_q_ui(fl.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(modulus));
  Rat v = make_rat(-fl, BigInt(mu.c)) + make_rat(BigInt(mu.c - 1), BigInt(2 * mu.c));
  if (ord_p(v, mu.p) < 0) throw Error("measure_value: non-integral cell value");
  return v;
}

/// (1 - c^{-k}) zeta(1-k) (1 - p^{k-1}) = int y^{k-1} d mu_c.
inline Rat moment_exact(long p, long c, long k) {
  if (k < 2) throw DomainError("moment_exact: k must be >= 2");
  return (1 - rpow(Rat(c), -k)) * zeta_neg(static_cast<unsigned long>(k)) * (1 - rpow(Rat(p), k - 1));
}

/// sum over units a mod p^v of a^{k-1} mu_c(a + p^v).
inline Rat riemann_moment(long p, long c, long k, long v) {
  if (v < 1) throw DomainError("riemann_moment: level must be >= 1");
  MazurMeasure mu(p, c);
  long m = ipow(BigInt(p), static_cast<unsigned long>(v)).get_si();
  Rat acc = 0;
  for (long a = 1; a < m; ++a) {
    if (a % p == 0) continue;
    acc += Rat(ipow(BigInt(a), static_cast<unsigned long>(k - 1))) * measure_value(mu, a, m);
  }
  return acc;
}

/// (1+p)^{x} with x = log(u)/log(1+p) * s, i.e. u^s for a principal unit u.
inline PadicNum principal_unit_power(const PadicNum& u, const BigInt& s, long sprec) {
  if (!u.is_unit() || mod_pos(u.unit() - 1, BigInt(u.p())) != 0)
    throw DomainError("principal_unit_power: base not congruent to 1 mod p");
  long p = u.p();
  long n = std::min(u.abs_prec(), sprec + 1);
  if (n <= 1) return PadicNum::from_residue(p, 1, std::max(n, 0L));
  BigInt lu = padic_log_residue(u.residue_mod(n), p, n);
  BigInt lp = padic_log_residue(BigInt(1 + p), p, n);
  const BigInt& m1 = ppow(p, n - 1);
  BigInt x = mod_pos((lu / p) * inv_mod(lp / p, m1) * s, m1);
  return PadicNum::from_residue(p, pow_mod(BigInt(1 + p), x, ppow(p, n)), n);
}

enum class SeriesMethod { interpolation, riemann };

inline std::string to_string(SeriesMethod m) { return m == SeriesMethod::riemann ? "riemann" : "interp"; }

/// One line of the precision ledger.
struct PrecisionNote {
  std::string what;
  long digits = 0;
};

/// Smallest e >= 1 with e = j mod (p-1).
inline long first_node_exponent(long p, long j) {
  long e = mod_floor(j, p - 1);
  return e == 0 ? p - 1 : e;
}

/// Series in T whose value at T = (1+p)^e - 1 is value(e) for every
/// e = j mod (p-1), e >= 1, assuming such an integral series exists.
/// Newton divided differences over M = D + N - 1 nodes.
inline IwasawaSeries interpolate_branch(long p, long j, long d, long n, const std::function<Rat(long)>& value,
                                        std::vector<PrecisionNote>* ledger = nullptr) {
  check_prime(p);
  if (d < 1 || n < 1) throw DomainError("interpolate_branch: D and N must be positive");
  long m = d + n - 1;
  BigInt fact = 1;
  for (long i = 2; i < m; ++i) fact *= i;
  long w = n + (m - 1) + ord_p(fact, p) + 2;
  long e0 = first_node_exponent(p, j);
  std::vector<PadicNum> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
  for (long r = 0; r < m; ++r) {
    long e = e0 + r * (p - 1);
    x[static_cast<std::size_t>(r)] = t_coordinate(e, p, w);
    Rat val = value(e);
    y[static_cast<std::size_t>(r)] = val == 0 ? PadicNum::exact_zero(p) : from_rat(val, p, w).with_abs_prec(w);
  }
  for (long level = 1; level < m; ++level)
    for (long r = m - 1; r >= level; --r) {
      auto& yr = y[static_cast<std::size_t>(r)];
      yr = (yr - y[static_cast<std::size_t>(r - 1)]) / (x[static_cast<std::size_t>(r)] - x[static_cast<std::size_t>(r - level)]);
    }
  // Newton form to monomial coefficients
  std::vector<PadicNum> poly{y[static_cast<std::size_t>(m - 1)]};
  for (long r = m - 2; r >= 0; --r) {
    std::vector<PadicNum> next(poly.size() + 1, PadicNum::exact_zero(p));
    const PadicNum& xr = x[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xr;
    }
    next[0] += y[static_cast<std::size_t>(r)];
    poly = std::move(next);
  }
  std::vector<BigInt> c(static_cast<std::size_t>(d));
  long worst = kInfiniteValuation;
  for (long i = 0; i < d; ++i) {
    const PadicNum& ci = poly[static_cast<std::size_t>(i)];
    worst = std::min(worst, ci.abs_prec());
    if (!ci.is_zero() && ci.valuation() < 0)
      throw DomainError("interpolate_branch: node values are not those of an integral series");
    if (ci.abs_prec() < n)
      throw PrecisionExhausted("interpolate_branch: divided differences left only " + std::to_string(ci.abs_prec()) +
                               " digits for coefficient " + std::to_string(i));
    c[static_cast<std::size_t>(i)] = ci.residue_mod(n);
  }
  if (ledger) {
    ledger->push_back({"interpolation nodes", m});
    ledger->push_back({"working digits", w});
    ledger->push_back({"digits left after divided differences", std::min(worst, w)});
    ledger->push_back({"series digits", n});
  }
  return IwasawaSeries(p, n, std::move(c));
}

/// Branch theta = omega^j of Mazur's measure as an element of Z_p[[T]],
/// prepared as p^mu P U.
struct ZetaBranch {
  long p = 5;
  long j = 1;
  long c = 2;
  long D = 16;
  long N = 12;
  SeriesMethod method = SeriesMethod::interpolation;
  bool vanishing = false;  // even branches: the measure is odd
  IwasawaSeries G;
  Prepared prep;
  long held_out_e = 0;
  long held_out_digits = 0;
  std::vector<PrecisionNote> ledger;

  long lambda() const { return vanishing ? -1 : prep.P.degree(); }
  long mu() const { return vanishing ? -1 : prep.mu; }
};

/// Node value int omega^j(y) <y>^e d mu_c at e = j mod (p-1).
inline Rat zeta_node_value(long p, long c, long e) { return moment_exact(p, c, e + 1); }

namespace detail {

inline IwasawaSeries riemann_branch_series(long p, long j, long c, long d, long v) {
  using u128 = unsigned __int128;
  using i128 = __int128;
  BigInt fact = 1;
  for (long i = 2; i < d; ++i) fact *= i;
  long of = ord_p(fact, p);
  long n = v - 1 - of;
  if (n <= 0) throw PrecisionExhausted("riemann method: level too low for the requested number of coefficients");
  BigInt big_mod = ipow(BigInt(p), static_cast<unsigned long>(v));
  if (!big_mod.fits_slong_p() || big_mod > BigInt(1L << 62))
    throw PrecisionExhausted("riemann method: level too high for word-sized cell arithmetic");
  MazurMeasure mu(p, c);
  const auto modulus = static_cast<std::uint64_t>(big_mod.get_si());
  const auto nmod = static_cast<std::uint64_t>(ppow(p, n).get_si());
  auto mulmod = [](std::uint64_t x, std::uint64_t y, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % m);
  };
  auto reduce = [](i128 x, std::uint64_t m) {
    i128 r = x % static_cast<i128>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i128>(m) : r);
  };
  const std::uint64_t inv2c = inv_mod(BigInt(2 * c), ppow(p, n)).get_ui();

  // every unit mod p^v is tau * (1+p)^s with tau a Teichmuller residue and
  // 0 <= s < p^{v-1}; then omega(a) = tau and s(a) = s
  std::vector<std::uint64_t> tau(static_cast<std::size_t>(p - 1)), tau_j(static_cast<std::size_t>(p - 1));
  for (long r = 1; r < p; ++r) {
    tau[static_cast<std::size_t>(r - 1)] = teichmuller_residue(BigInt(r), p, v).get_ui();
    tau_j[static_cast<std::size_t>(r - 1)] =
        pow_mod(BigInt(static_cast<unsigned long>(tau[static_cast<std::size_t>(r - 1)])), BigInt(j), ppow(p, n))
            .get_ui();
  }
  const std::uint64_t steps = modulus / static_cast<std::uint64_t>(p);
  // floor(c a / M) counts the thresholds ceil(k M / c) <= a
  std::vector<std::uint64_t> thresholds;
  for (long k = 1; k < c; ++k)
    thresholds.push_back(static_cast<std::uint64_t>((static_cast<u128>(modulus) * k + c - 1) / c));
  std::vector<u128> acc(static_cast<std::size_t>(d), 0);
  // binomial(s, i) mod p^n, advanced by Pascal's rule
  std::vector<std::uint64_t> binom(static_cast<std::size_t>(d), 0);
  binom[0] = 1 % nmod;
  std::uint64_t gen = 1;
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::uint64_t cell_sum = 0;
    for (long r = 0; r < p - 1; ++r) {
      std::uint64_t a = mulmod(tau[static_cast<std::size_t>(r)], gen, modulus);
      long fl = 0;
      for (std::uint64_t th : thresholds) fl += a >= th;
      std::uint64_t cell = mulmod(reduce(static_cast<i128>(c - 1) - 2 * fl, nmod), inv2c, nmod);
      cell_sum = (cell_sum + mulmod(tau_j[static_cast<std::size_t>(r)], cell, nmod)) % nmod;
    }
    for (long i = 0; i < d; ++i)
      acc[static_cast<std::size_t>(i)] =
          (acc[static_cast<std::size_t>(i)] + static_cast<u128>(binom[static_cast<std::size_t>(i)]) * cell_sum) % nmod;
    for (long i = d - 1; i > 0; --i)
      binom[static_cast<std::size_t>(i)] = (binom[static_cast<std::size_t>(i)] + binom[static_cast<std::size_t>(i - 1)]) % nmod;
    gen = mulmod(gen, static_cast<std::uint64_t>(1 + p), modulus);
  }
  std::vector<BigInt> out(static_cast<std::size_t>(d));
  for (long i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = BigInt(static_cast<unsigned long>(acc[static_cast<std::size_t>(i)]));
  return IwasawaSeries(p, n, std::move(out));
}

}  // namespace detail

struct BranchOptions {
  long D = 16;
  long N = 12;
  SeriesMethod method = SeriesMethod::interpolation;
  long riemann_level = 0;  // 0: smallest level giving N digits
};

inline ZetaBranch iwasawa_series(long p, long j, long c, const BranchOptions& opt = {}) {
  check_prime(p);
  if (c <= 1 || gcd_long(c, p) != 1) throw DomainError("iwasawa_series: c must be > 1 and prime to p");
  ZetaBranch b;
  b.p = p;
  b.j = mod_floor(j, p - 1);
  b.c = c;
  b.D = opt.D;
  b.N = opt.N;
  b.method = opt.method;
  if (opt.method == SeriesMethod::interpolation) {
    b.G = interpolate_branch(p, b.j, opt.D, opt.N, [&](long e) { return zeta_node_value(p, c, e); }, &b.ledger);
  } else {
    BigInt fact = 1;
    for (long i = 2; i < opt.D; ++i) fact *= i;
    long v = opt.riemann_level > 0 ? opt.riemann_level : opt.N + 1 + ord_p(fact, p);
    b.G = detail::riemann_branch_series(p, b.j, c, opt.D, v);
    b.N = b.G.prec();
    b.ledger.push_back({"riemann level", v});
    b.ledger.push_back({"series digits", b.N});
  }
  b.vanishing = b.G.is_zero_mod();
  if (b.vanishing) {
    b.ledger.push_back({"branch vanishes identically (odd measure, even branch)", b.N});
    return b;
  }
  b.prep = weierstrass_prepare(b.G);
  b.ledger.push_back({"Weierstrass digits", b.prep.prec});
  // held-out node beyond the interpolation range
  long m = opt.D + opt.N - 1;
  long e = first_node_exponent(p, b.j) + (m + 1) * (p - 1);
  PadicNum t = t_coordinate(e, p, b.N + 2);
  PadicNum got = b.G.eval(t);
  Rat want = zeta_node_value(p, c, e);
  long digits = got.abs_prec();
  PadicNum wantp = want == 0 ? PadicNum::exact_zero(p) : from_rat(want, p, digits + 2);
  if (!got.congruent(wantp, digits)) throw Error("iwasawa_series: held-out interpolation check failed");
  b.held_out_e = e;
  b.held_out_digits = digits;
  b.ledger.push_back({"held-out check digits at e=" + std::to_string(e), digits});
  return b;
}

inline ZetaBranch iwasawa_series(long p, long j, long c, long d, long n,
                                 SeriesMethod method = SeriesMethod::interpolation) {
  BranchOptions o;
  o.D = d;
  o.N = n;
  o.method = method;
  return iwasawa_series(p, j, c, o);
}

/// omega(c)^j (1+t0)^{s(c)}: the character x evaluated at c.
inline PadicNum character_at(long p, long j, const PadicNum& t0, long c, long n) {
  PadicNum om = teichmuller(BigInt(c), p, n).pow(mod_floor(j, p - 1));
  if (t0.is_exact_zero()) return om;
  long m = std::min(n, t0.abs_prec());
  PadicNum u = padic_one(p, m) + t0;
  PadicNum pw = principal_unit_power(u, s_exponent_residue(BigInt(c), p, m), m);
  return om * pw;
}

/// zeta_p(x) = G(t0) / (1 - 1/(c x(c))).
inline PadicNum kl_zeta(const ZetaBranch& b, const PadicNum& t0) {
  if (b.vanishing) return PadicNum::exact_zero(b.p);
  PadicNum g = b.G.eval(t0);
  long n = std::max(g.abs_prec(), 1L) + 2;
  PadicNum xc = character_at(b.p, b.j, t0, b.c, n);
  PadicNum den = padic_one(b.p, n) - padic_one(b.p, n) / (from_int(b.c, b.p, n) * xc);
  if (den.is_zero()) {
    throw PoleError("kl_zeta: pole at the trivial character (x = y^{-1})",
                    "branch j=" + std::to_string(b.j) + ", t0=" + t0.to_string());
  }
  return g / den;
}

inline PadicNum kl_zeta(long p, long c, long j, const PadicNum& t0, const BranchOptions& opt = {}) {
  return kl_zeta(iwasawa_series(p, j, c, opt), t0);
}

struct ReciprocalZeta {
  PadicNum route_a;
  PadicNum route_b;
  long agree_digits = 0;  // absolute digits on which both routes are known
  long lambda = 0;
};

/// 1/(zeta(1-k)(1-p^{k-1})) exactly (route A) and through the prepared
/// branch j = k-1 (route B): (1 - c^{-k}) p^{-mu} U^{-1}(t) / P(t) at t = (1+p)^{k-1} - 1.
inline ReciprocalZeta reciprocal_zeta_routes(long p, long k, long n, const ZetaBranch& b) {
  if (k < 2 || k % 2) throw DomainError("reciprocal_zeta: k must be even and >= 2");
  if (mod_floor(k - 1, p - 1) != b.j) throw DomainError("reciprocal_zeta: branch does not contain k");
  ReciprocalZeta out;
  Rat z = zeta_neg(static_cast<unsigned long>(k)) * (1 - rpow(Rat(p), k - 1));
  out.route_a = from_rat(1 / z, p, n);
  PadicNum t = t_coordinate(k - 1, p, b.prep.prec + 2);
  PadicNum ustar = b.prep.U.inverse().eval(t);
  if (ustar.abs_prec() > b.prep.ideal_order()) ustar = ustar.with_abs_prec(b.prep.ideal_order());
  PadicNum pt = b.prep.P.eval(t);
  if (pt.is_zero()) throw PrecisionExhausted("reciprocal_zeta: P(t) vanishes to working precision");
  PadicNum cf = from_rat(1 - rpow(Rat(b.c), -k), p, b.prep.prec + 2);
  PadicNum pmu = PadicNum::make(p, -b.prep.mu, 1, b.prep.prec + 2);
  out.route_b = cf * pmu * ustar / pt;
  out.agree_digits = std::min(out.route_a.abs_prec(), out.route_b.abs_prec());
  out.lambda = b.prep.P.degree();
  if (!out.route_a.congruent(out.route_b, out.agree_digits))
    throw Error("reciprocal_zeta: exact and branch routes disagree at k=" + std::to_string(k));
  return out;
}

inline ReciprocalZeta reciprocal_zeta_routes(long p, long k, long n, long c = 0, long d = 8, long nb = 8) {
  if (c == 0) c = default_regularizer(p);
  if (k < 2 || k % 2) throw DomainError("reciprocal_zeta: k must be even and >= 2");
  return reciprocal_zeta_routes(p, k, n, iwasawa_series(p, k - 1, c, d, nb));
}

/// Route A value; route B is computed and must agree.
inline PadicNum reciprocal_zeta(long p, long k, long n) { return reciprocal_zeta_routes(p, k, n).route_a; }

/// 1/(L(1-k, chi)(1 - chi(p) p^{k-1})) for chi = omega^i tame. A parity mismatch
/// makes the L-value vanish and raises PoleError.
inline PadicNum reciprocal_L_dirichlet(long p, long k, const BranchChar& chi, long n, long c = 0, long d = 8,
                                       long nb = 0) {
  if (chi.twist && !chi.twist->trivial()) throw DomainError("reciprocal_L_dirichlet: only Teichmuller powers");
  if (k < 1) throw DomainError("reciprocal_L_dirichlet: k must be >= 1");
  long i = chi.j;
  if (chi.parity() != (k % 2 == 0 ? 1 : -1))
    throw PoleError("reciprocal_L_dirichlet: L(1-k, chi) = 0 by parity", "k=" + std::to_string(k) + ", chi=omega^" + std::to_string(i));
  if (i == 0) {
    if (k % 2) throw PoleError("reciprocal_L_dirichlet: zeta(1-k) = 0", "k=" + std::to_string(k));
    return reciprocal_zeta(p, k, n);
  }
  if (c == 0) c = default_regularizer(p);
  if (nb == 0) nb = n + 2;
  ZetaBranch b = iwasawa_series(p, i + k - 1, c, d, nb);
  PadicNum t = t_coordinate(k - 1, p, nb + 2);
  PadicNum g = b.G.eval(t);
  PadicNum cf = padic_one(p, nb + 2) - teichmuller(BigInt(c), p, nb + 2).pow(-i) * from_rat(rpow(Rat(c), -k), p, nb + 2);
  if (g.is_zero()) throw PrecisionExhausted("reciprocal_L_dirichlet: branch value vanishes to working precision");
  return (cf / g).with_rel_prec(n);
}

/// -B_{k,chi}/k with B_{k,chi} = p^{k-1} sum_a omega(a)^i B_k(a/p), in Q_p.
inline PadicNum dirichlet_L_value_teichmuller(long p, long k, long i, long n) {
  long w = n + 2 * k + 4;
  PadicNum acc = PadicNum::exact_zero(p);
  for (long a = 1; a < p; ++a) {
    PadicNum chi = teichmuller(BigInt(a), p, w).pow(mod_floor(i, p - 1));
    Rat bk = bernoulli_poly(static_cast<unsigned long>(k), make_rat(BigInt(a), BigInt(p)));
    acc += chi * from_rat(bk, p, w);
  }
  acc *= from_rat(Rat(ipow(BigInt(p), static_cast<unsigned long>(k - 1))), p, w);
  return (-acc / from_int(k, p, w));
}

// ---------------------------------------------------------------------------
// Quadratic L-series

/// Node value int psi(y) omega^j(y) <y>^e d mu_c on Z_p^* x (Z/C)^*:
/// (1 - psi(c) c^{-(e+1)}) (1 - psi(p) p^e) L(-e, psi).
inline Rat quad_node_value(long p, const QuadChar& psi, long c, long e) {
  long k = e + 1;
  Rat l = quad_l_value_neg(static_cast<unsigned long>(k), psi);
  return (1 - Rat(psi(c)) * rpow(Rat(c), -k)) * (1 - Rat(psi(p)) * rpow(Rat(p), e)) * l;
}

struct QuadLSeries {
  long p = 5;
  long m = 2;
  long k0 = 0;   // family residue: k = k0 mod (p-1)
  long j = 0;    // branch of G: j = k0 - m/2 - 1
  long c = 2;
  QuadChar psi;
  IwasawaSeries G;   // in T, G((1+p)^e - 1) = quad_node_value(e)
  IwasawaSeries u;   // regularizer in the family variable t, divided by (t - beta) when needed
  bool divided = false;
  PadicNum beta;     // (1+p)^{m/2} - 1
};

/// Regularized L-series of psi on branch j = k0 - m/2 - 1 together with the
/// regularizer r(t) = 1 - psi(c) c^{-(k - m/2)} written in t = (1+p)^k - 1.
/// When psi(c) omega(c)^{-(k0 - m/2)} = 1, r vanishes at t = beta and u = r/(t - beta).
inline QuadLSeries quad_L_series(long p, const QuadChar& psi, long m, long c, long k0, long d, long n) {
  check_prime(p);
  if (m % 2) throw DomainError("quad_L_series: m must be even");
  if (gcd_long(c, p) != 1 || gcd_long(c, static_cast<long>(psi.conductor)) != 1 || c <= 1)
    throw DomainError("quad_L_series: c must be > 1 and prime to p C");
  if (psi.conductor % p == 0) throw DomainError("quad_L_series: p divides the conductor");
  QuadLSeries out;
  out.p = p;
  out.m = m;
  out.k0 = mod_floor(k0, p - 1);
  out.c = c;
  out.psi = psi;
  out.j = mod_floor(k0 - m / 2 - 1, p - 1);
  out.G = interpolate_branch(p, out.j, d, n, [&](long e) { return quad_node_value(p, psi, c, e); });
  out.beta = t_coordinate(m / 2, p, n + 2);
  long half = m / 2;
  long w = n + 4 * d + 8;
  BigInt sc = s_exponent_residue(BigInt(c), p, w);
  // psi(c) omega(c)^{-(k0 - m/2)} <c>^{m/2}
  PadicNum eps = from_int(psi(c), p, w) * teichmuller(BigInt(c), p, w).pow(-(out.k0 - half));
  bool trivial = eps.congruent(padic_one(p, w), 1);
  if (!trivial) {
    PadicNum lead = eps * PadicNum::from_residue(p, pow_mod(BigInt(1 + p), sc * half, ppow(p, w)), w);
    IwasawaSeries pw = binomial_series(mod_pos(-sc, ppow(p, w)), w, p, d, n);
    out.u = IwasawaSeries::one(p, n, d) - pw.scaled(lead.with_abs_prec(n));
    return out;
  }
  if (mod_pos(sc, BigInt(p)) == 0) throw DomainError("quad_L_series: s(c) is not a unit, choose another c");
  // r = 1 - (1+w)^{-s}, w = (t - beta)/(1+beta); r/(t-beta) = -(1+beta)^{-1} sum_n binom(-s, n+1) w^n
  long dd = d + n + 2;
  IwasawaSeries b = binomial_series(mod_pos(-sc, ppow(p, w)), w, p, dd + 1, n + 2);
  std::vector<BigInt> shifted;
  for (long i = 1; i <= dd; ++i) shifted.push_back(b.residue(i));
  IwasawaSeries f(p, n + 2, std::move(shifted));
  PadicNum onebeta = padic_one(p, n + 4) + out.beta;
  PadicNum inv1b = padic_one(p, n + 4) / onebeta;
  IwasawaSeries arg = IwasawaSeries::poly({-out.beta * inv1b, inv1b}, n + 2);
  IwasawaSeries comp = compose_poly_arg(f, arg).truncated(n, d);
  out.u = comp.scaled((-inv1b).with_abs_prec(n));
  out.divided = true;
  return out;
}

}  // namespace padlfun

#endif
