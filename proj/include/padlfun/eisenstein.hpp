#ifndef PADLFUN_EISENSTEIN_HPP
#define PADLFUN_EISENSTEIN_HPP

// Fourier coefficients of Siegel-Eisenstein series of genus 1 and 2, their
// p-regular parts as p-adic families, and q-expansion utilities.

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padlfun/measures.hpp"

namespace padlfun {

/// m = 1: the integer h; m = 2: [[a, b/2], [b/2, c]].
struct HalfIntMatrix {
  int m = 1;
  long h = 1;
  long a = 0, b = 0, c = 0;

  static HalfIntMatrix genus1(long h) {
    if (h <= 0) throw DomainError("HalfIntMatrix: h must be positive");
    HalfIntMatrix x;
    x.m = 1;
    x.h = h;
    return x;
  }
  static HalfIntMatrix genus2(long a, long b, long c) {
    if (a <= 0 || 4 * a * c - b * b <= 0) throw DomainError("HalfIntMatrix: not positive definite");
    HalfIntMatrix x;
    x.m = 2;
    x.a = a;
    x.b = b;
    x.c = c;
    return x;
  }

  /// det(2h): 2h for m = 1, 4ac - b^2 for m = 2.
  long det2h() const { return m == 1 ? 2 * h : 4 * a * c - b * b; }

  std::vector<long> index() const { return m == 1 ? std::vector<long>{h} : std::vector<long>{a, b, c}; }

  std::string to_string() const {
    if (m == 1) return std::to_string(h);
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

/// prime l -> integer polynomial in X = l^{-k}; empty map means M_h = 1.
struct LocalDensity {
  std::map<long, std::vector<long long>> poly;

  Rat value(long k) const {
    Rat acc = 1;
    for (const auto& [l, cs] : poly) {
      Rat x = rpow(Rat(l), -k), s = 0, xp = 1;
      for (long long cf : cs) {
        s += Rat(static_cast<long>(cf)) * xp;
        xp *= x;
      }
      acc *= s;
    }
    return acc;
  }
};

inline std::vector<std::pair<long, long>> small_factor(long n) {
  std::vector<std::pair<long, long>> out;
  for (long q = 2; q * q <= n; ++q) {
    long e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Built-in density: genus 1 uses sum_{i <= e_l} (l X)^i so that
/// h^{k-1} M_h(k) = sigma_{k-1}(h); genus 2 uses the identity.
inline LocalDensity default_density(const HalfIntMatrix& h) {
  LocalDensity d;
  if (h.m != 1) return d;
  for (auto [l, e] : small_factor(h.h)) {
    std::vector<long long> cs;
    long long lp = 1;
    for (long i = 0; i <= e; ++i) {
      cs.push_back(lp);
      lp *= l;
    }
    d.poly[l] = cs;
  }
  return d;
}

inline QuadChar psi_and_conductor(const HalfIntMatrix& h) {
  if (h.m % 2) throw DomainError("psi_and_conductor: genus must be even");
  long long d = (h.m / 2 % 2 ? -1 : 1) * static_cast<long long>(h.det2h());
  return QuadChar::from_discriminant(d);
}

namespace detail {

inline void check_weight(long k, int m) {
  if (k % 2 || k <= m + 1) throw DomainError("weight k must be even and > m + 1");
  if (m != 1 && m != 2) throw DomainError("only genus 1 and 2 are supported");
}

// A_h(k): h^{k-1} M_h(k) for m = 1, f^{2k-m-1} M_h(k) L(1-k+m/2, psi_h) for m even.
inline Rat coefficient_core(const HalfIntMatrix& h, long k, const LocalDensity& M) {
  if (h.m == 1) return rpow(Rat(h.h), k - 1) * M.value(k);
  QuadChar psi = psi_and_conductor(h);
  Rat l = quad_l_value_neg(static_cast<unsigned long>(k - h.m / 2), psi);
  return rpow(Rat(static_cast<long>(psi.square_part)), 2 * k - h.m - 1) * M.value(k) * l;
}

inline Rat zeta_product(long k, int m) {
  Rat z = zeta_neg(static_cast<unsigned long>(k));
  for (long i = 1; i <= m / 2; ++i) z *= zeta_neg(static_cast<unsigned long>(2 * k - 2 * i));
  return z;
}

}  // namespace detail

/// Normalized coefficient: 2^{-m/2} A_h(k) for m even, A_h(k) for m odd.
inline Rat normalized_coeff(const HalfIntMatrix& h, long k, std::optional<LocalDensity> M = std::nullopt) {
  detail::check_weight(k, h.m);
  Rat a = detail::coefficient_core(h, k, M ? *M : default_density(h));
  if (h.m % 2 == 0) a /= rpow(Rat(2), h.m / 2);
  return a;
}

/// Coefficient of E_k^m (constant term 1): 2 A_h(k) / (zeta(1-k) prod zeta(1-2k+2i)).
inline Rat raw_coeff(const HalfIntMatrix& h, long k, std::optional<LocalDensity> M = std::nullopt) {
  detail::check_weight(k, h.m);
  Rat z = detail::zeta_product(k, h.m);
  if (z == 0) throw DomainError("raw_coeff: vanishing zeta product");
  return 2 * detail::coefficient_core(h, k, M ? *M : default_density(h)) / z;
}

inline int psi_at_p(const HalfIntMatrix& h, long p) { return h.m % 2 ? 0 : psi_and_conductor(h)(p); }

inline Rat cplus(const HalfIntMatrix& h, long k, long p) {
  if (h.det2h() % p == 0) throw DomainError("cplus: p divides det(2h)");
  Rat r = 1 - rpow(Rat(p), -k);
  if (h.m % 2 == 0) {
    r *= 1 + Rat(psi_at_p(h, p)) * rpow(Rat(p), -k + h.m / 2);
    for (long i = 1; i <= h.m / 2 - 1; ++i) r *= 1 - rpow(Rat(p), -2 * k + 2 * i);
  } else {
    for (long i = 1; i <= (h.m - 1) / 2; ++i) r *= 1 - rpow(Rat(p), -2 * k + 2 * i);
  }
  return r;
}

inline Rat cminus(const HalfIntMatrix& h, long k, long p) {
  if (h.det2h() % p == 0) throw DomainError("cminus: p divides det(2h)");
  Rat den = 1 - rpow(Rat(p), k - 1);
  Rat num = 1;
  long top = h.m % 2 == 0 ? h.m / 2 : (h.m - 1) / 2;
  for (long i = 1; i <= top; ++i) den *= 1 - rpow(Rat(p), 2 * k - 2 * i - 1);
  if (h.m % 2 == 0) num = 1 - Rat(psi_at_p(h, p)) * rpow(Rat(p), k - h.m / 2 - 1);
  return num / den;
}

/// raw_coeff * C^- as an exact rational.
inline Rat p_regular_rational(const HalfIntMatrix& h, long k, long p, std::optional<LocalDensity> M = std::nullopt) {
  return raw_coeff(h, k, std::move(M)) * cminus(h, k, p);
}

inline PadicNum p_regular_coeff(const HalfIntMatrix& h, long k, long p, long n,
                                std::optional<LocalDensity> M = std::nullopt) {
  check_prime(p);
  if (h.det2h() % p == 0) throw DomainError("p_regular_coeff: p divides det(2h)");
  return from_rat(p_regular_rational(h, k, p, std::move(M)), p, n);
}

// ---------------------------------------------------------------------------
// p-adic families

/// x^{alpha k - beta} on the branch k = k0 mod (p-1), as a series in t = (1+p)^k - 1.
inline IwasawaSeries unit_power_series(long x, long alpha, long beta, long k0, long p, long d, long n) {
  if (x % p == 0) throw DomainError("unit_power_series: base divisible by p");
  BigInt fact = 1;
  for (long i = 2; i < d; ++i) fact *= i;
  long w = n + ord_p(fact, p) + 2;
  PadicNum om = teichmuller(BigInt(x), p, w).pow(alpha * k0 - beta);
  BigInt s = s_exponent_residue(BigInt(x), p, w);
  PadicNum ang = PadicNum::from_residue(p, pow_mod(BigInt(1 + p), mod_pos(-beta * s, ppow(p, w)), ppow(p, w + 1)), w);
  IwasawaSeries ser = binomial_series(mod_pos(s * alpha, ppow(p, w)), w, p, d, n);
  return ser.scaled((om * ang).with_abs_prec(n));
}

struct CoeffFamily {
  HalfIntMatrix h;
  long p = 5;
  long k0 = 0;
  long c = 2;
  long D = 16;
  long N = 12;
  IwasawaSeries S;
  DistinguishedPoly P;
  long p_power = 0;
  std::vector<std::pair<std::string, std::string>> audit;
  std::vector<PrecisionNote> ledger;
  std::optional<LocalDensity> density;
};

struct FamilyOptions {
  long D = 16;
  long N = 12;
  long c = 0;  // 0: smallest admissible
};

namespace detail {

inline bool s_is_unit(long c, long p) { return mod_pos(s_exponent_residue(BigInt(c), p, 2), BigInt(p)) != 0; }

inline long family_regularizer(const HalfIntMatrix& h, long p, long requested) {
  long extra = h.m % 2 == 0 ? static_cast<long>(psi_and_conductor(h).conductor) : 1;
  if (requested) {
    if (requested <= 1 || gcd_long(requested, p) != 1 || gcd_long(requested, extra) != 1)
      throw ConfigError("c_h must be > 1 and prime to p C_h");
    return requested;
  }
  for (long c = 2;; ++c)
    if (gcd_long(c, p) == 1 && gcd_long(c, extra) == 1 && s_is_unit(c, p)) return c;
}

// Linear/quadratic argument gamma (1+t)^alpha - 1, gamma = (1+p)^{-beta-1}.
inline IwasawaSeries shifted_argument(long alpha, long beta, long p, long n) {
  long w = n + 4;
  PadicNum g = PadicNum::from_residue(p, pow_mod(BigInt(1 + p), BigInt(-beta - 1), ppow(p, w)), w);
  PadicNum one = padic_one(p, w);
  if (alpha == 1) return IwasawaSeries::poly({g - one, g}, n);
  if (alpha == 2) return IwasawaSeries::poly({g - one, g + g, g}, n);
  throw DomainError("shifted_argument: alpha must be 1 or 2");
}

inline IwasawaSeries pad(const IwasawaSeries& f, long d) {
  std::vector<BigInt> c = f.residues();
  c.resize(static_cast<std::size_t>(d), 0);
  return IwasawaSeries(f.p(), f.prec(), std::move(c));
}

}  // namespace detail

/// S^E and P^E for the p-regular coefficient a_h^{(p)}(k) on the branch
/// k = k0 mod (p-1): a_h^{(p)}(k) = p^{p_power} S^E(t_k) / P^E(t_k).
inline CoeffFamily build_family(const HalfIntMatrix& h, long p, long k0, const FamilyOptions& opt = {},
                                std::optional<LocalDensity> density = std::nullopt) {
  check_prime(p);
  if (h.det2h() % p == 0) throw DomainError("build_family: p divides det(2h)");
  if (mod_floor(k0, 2) != 0) throw DomainError("build_family: branch must contain even weights");
  CoeffFamily fam;
  fam.h = h;
  fam.p = p;
  fam.k0 = mod_floor(k0, p - 1);
  fam.D = opt.D;
  fam.N = opt.N;
  fam.density = density;
  fam.c = detail::family_regularizer(h, p, opt.c);
  const long d = opt.D, nin = opt.N + 4, din = opt.D + nin + 4;
  const long c = fam.c;
  LocalDensity M = density ? *density : default_density(h);

  // elementary factor 2 x^{...} M_h(k)
  long base = h.m == 1 ? h.h : static_cast<long>(psi_and_conductor(h).square_part);
  long ea = h.m == 1 ? 1 : 2, eb = h.m == 1 ? 1 : h.m + 1;  // base^{ea k - eb}
  std::map<long, long> base_exp;
  for (auto [l, e] : small_factor(base)) base_exp[l] = e;
  for (const auto& [l, cs] : M.poly) base_exp.emplace(l, 0);
  IwasawaSeries elem = IwasawaSeries::constant(p, nin, d, 2);
  for (const auto& [l, e] : base_exp) {
    if (l == p) throw DomainError("build_family: local density at p");
    IwasawaSeries part = IwasawaSeries::zero(p, nin, d);
    auto it = M.poly.find(l);
    std::vector<long long> cs = it == M.poly.end() ? std::vector<long long>{1} : it->second;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] == 0) continue;
      long alpha = e * ea - static_cast<long>(i);
      long beta = e * eb;
      part += unit_power_series(l, alpha, beta, fam.k0, p, d, nin).scaled(from_int(BigInt(static_cast<long>(cs[i])), p, nin));
    }
    elem *= part;
  }
  fam.audit.emplace_back("elementary factor", elem.to_string());
  IwasawaSeries S = elem;
  DistinguishedPoly P = DistinguishedPoly::one(p, nin);
  long pp = 0;

  // zeta pieces 1/(zeta(1-k')(1-p^{k'-1})), k' = alpha k - beta
  std::vector<std::pair<long, long>> pieces{{1, 0}};
  for (long i = 1; i <= h.m / 2; ++i) pieces.emplace_back(2, 2 * i);
  for (auto [alpha, beta] : pieces) {
    long j = mod_floor(alpha * fam.k0 - beta - 1, p - 1);
    std::string tag = "zeta(1-(" + std::to_string(alpha) + "k-" + std::to_string(beta) + "))";
    ZetaBranch br = iwasawa_series(p, j, c, din, nin);
    if (br.vanishing) throw DomainError("build_family: zeta branch vanishes (parity)");
    IwasawaSeries arg = detail::shifted_argument(alpha, beta, p, nin);
    if (br.prep.ideal_order() - (d - 1) < opt.N)
      throw PrecisionExhausted("build_family: unit part of " + tag + " not certified on the output window");
    IwasawaSeries ustar = compose_poly_arg(br.prep.U.inverse(), arg);
    if (ustar.cutoff() < d) throw PrecisionExhausted("build_family: composed unit too short");
    ustar = ustar.truncated(nin, d);
    Prepared pc = weierstrass_prepare(compose_poly_arg(br.prep.P.as_series(), arg));
    IwasawaSeries uinv = detail::pad(pc.U, d).inverse();
    IwasawaSeries cfac = IwasawaSeries::one(p, nin, d) - unit_power_series(c, -alpha, -beta, fam.k0, p, d, nin);
    fam.audit.emplace_back(tag + " c-factor", cfac.to_string());
    fam.audit.emplace_back(tag + " U*", ustar.to_string());
    fam.audit.emplace_back(tag + " P_theta", br.prep.P.to_string());
    fam.audit.emplace_back(tag + " composed P", pc.P.to_string());
    S *= cfac * ustar * uinv;
    P = P * pc.P;
    pp -= br.prep.mu + pc.mu;
    fam.ledger.push_back({tag + " branch digits", br.prep.prec});
  }

  // L(1-k+m/2, psi_h)(1 - psi_h(p) p^{k-m/2-1})
  if (h.m % 2 == 0) {
    QuadChar psi = psi_and_conductor(h);
    QuadLSeries q = quad_L_series(p, psi, h.m, c, fam.k0, din, nin);
    IwasawaSeries arg = detail::shifted_argument(1, h.m / 2, p, nin);
    IwasawaSeries g = compose_poly_arg(q.G, arg);
    if (g.cutoff() < d) throw PrecisionExhausted("build_family: composed L-series too short");
    g = g.truncated(nin, d);
    IwasawaSeries uinv = detail::pad(q.u, d).truncated(nin, d).inverse();
    fam.audit.emplace_back("L-series G_psi", g.to_string());
    fam.audit.emplace_back("regularizer u^-1", uinv.to_string());
    S *= g * uinv;
    if (q.divided) {
      P = P * DistinguishedPoly::linear(q.beta, nin);
      fam.audit.emplace_back("forced factor", "t - (" + q.beta.to_string() + ")");
    }
  }
  fam.S = S.truncated(opt.N, d);
  fam.P = DistinguishedPoly(p, std::min(opt.N, P.prec()), P.lower());
  fam.p_power = pp;
  fam.audit.emplace_back("S^E", fam.S.to_string());
  fam.audit.emplace_back("P^E", fam.P.to_string());
  fam.ledger.push_back({"S^E digits", fam.S.prec()});
  return fam;
}

inline PadicNum eval_family(const CoeffFamily& fam, long k) {
  if (mod_floor(k - fam.k0, fam.p - 1) != 0) throw DomainError("eval_family: k outside the family's branch");
  PadicNum t = t_coordinate(k, fam.p, fam.N + 2);
  PadicNum den = fam.P.eval(t);
  if (den.is_zero()) {
    std::string loc;
    for (const auto& r : roots_in_pZp(fam.P, fam.P.prec())) loc += (loc.empty() ? "" : ", ") + r.to_string();
    throw PoleError("eval_family: P^E vanishes at k = " + std::to_string(k), loc.empty() ? t.to_string() : loc);
  }
  PadicNum num = fam.S.eval(t);
  PadicNum pm = PadicNum::make(fam.p, fam.p_power, 1, fam.N + 2);
  return pm * num / den;
}

/// Weights k = k0 mod (p-1), k > m + 1, whose interpolation nodes k - 1 lie
/// beyond every node the family was built from.
inline std::vector<long> held_out_weights(const CoeffFamily& fam, long count) {
  long nin = fam.N + 4, din = fam.D + nin + 4;
  long nodes = din + nin - 1;
  long k = (fam.p - 1) * (nodes + 2) + 2;
  while (mod_floor(k - fam.k0, fam.p - 1) != 0 || k % 2) ++k;
  long step = (fam.p - 1) % 2 ? 2 * (fam.p - 1) : fam.p - 1;
  std::vector<long> out;
  for (long i = 0; i < count; ++i) out.push_back(k + i * step);
  return out;
}

// ---------------------------------------------------------------------------
// q-expansions

struct QExpansion {
  int m = 1;
  long cutoff = 0;
  std::map<std::vector<long>, Rat> entries;

  Rat coeff(const std::vector<long>& idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? Rat(0) : it->second;
  }
  QExpansion scaled(const Rat& s) const {
    QExpansion r = *this;
    for (auto& [k, v] : r.entries) v *= s;
    return r;
  }
  bool operator==(const QExpansion& o) const { return m == o.m && entries == o.entries; }
};

/// 1 + (2/zeta(1-k)) sum sigma_{k-1}(n) q^n.
inline QExpansion elliptic_eisenstein(long k, long cutoff) {
  if (k < 4 || k % 2) throw DomainError("elliptic_eisenstein: k must be even and >= 4");
  QExpansion f;
  f.m = 1;
  f.cutoff = cutoff;
  f.entries[{0}] = 1;
  Rat lead = 2 / zeta_neg(static_cast<unsigned long>(k));
  for (long n = 1; n <= cutoff; ++n)
    f.entries[{n}] = lead * Rat(divisor_power_sum(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(n)));
  return f;
}

/// Drop every index whose det(2h) is divisible by p (genus 1: p | n, including n = 0).
inline QExpansion remove_p_singular(const QExpansion& f, long p) {
  QExpansion r;
  r.m = f.m;
  r.cutoff = f.cutoff;
  for (const auto& [idx, v] : f.entries) {
    long det = f.m == 1 ? 2 * idx[0] : 4 * idx[0] * idx[2] - idx[1] * idx[1];
    if (det % p != 0) r.entries[idx] = v;
  }
  return r;
}

struct SingularSeriesReport {
  double value = 0;
  double closed_form = 0;
  double tail_bound = 0;
  bool within = false;
};

/// sum_{c <= C} c^{-k} sum_{d mod c, (d,c)=1} cos(2 pi h d / c) against
/// sigma_{k-1}(h) / (h^{k-1} zeta(k)).
inline SingularSeriesReport singular_series_m1(long h, long k, long cutoff) {
  if (k < 4) throw DomainError("singular_series_m1: k must be >= 4");
  const double two_pi = 2.0 * std::acos(-1.0);
  SingularSeriesReport r;
  double acc = 0;
  for (long c = 1; c <= cutoff; ++c) {
    double ram = 0;
    for (long d = 1; d <= c; ++d)
      if (std::gcd(d, c) == 1) ram += std::cos(two_pi * static_cast<double>((h * d) % c) / static_cast<double>(c));
    acc += ram * std::pow(static_cast<double>(c), -static_cast<double>(k));
  }
  r.value = acc;
  double sigma = divisor_power_sum(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(h)).get_d();
  r.closed_form = sigma / (std::pow(static_cast<double>(h), static_cast<double>(k - 1)) * std::riemann_zeta(static_cast<double>(k)));
  // sum_{c > C} c^{1-k} <= integral_C^inf x^{1-k} dx
  r.tail_bound = std::pow(static_cast<double>(cutoff), static_cast<double>(2 - k)) / static_cast<double>(k - 2);
  r.within = std::abs(r.value - r.closed_form) <= r.tail_bound + 1e-12;
  return r;
}

struct TwistReport {
  double max_discrepancy_chi0 = 0;   // full filtered series
  double max_discrepancy_chi03 = 0;  // per residue h0
  bool pass = false;
};

/// Genus-1 twist averages at modulus 4p, evaluated coefficient-wise in
/// complex floating point. Left side: C^+ times the p-singular-free series.
/// Right side: (4p)^{-1} sum_{h0, p !| h0} C^+ sum_x e(-h0 x/4p) f(z + x/4p).
/// Discrepancies are relative to the size of the summands, |a_n| 4p.
inline TwistReport twist_average_check(const QExpansion& f, long p, long k, long cutoff, double tol) {
  if (f.m != 1) throw DomainError("twist_average_check: genus 1 only");
  const long mod = 4 * p;
  const double two_pi = 2.0 * std::acos(-1.0);
  double cp = Rat(1 - rpow(Rat(p), -k)).get_d();
  QExpansion filtered = remove_p_singular(f, p);
  std::vector<std::complex<double>> unit(static_cast<std::size_t>(mod));
  for (long r = 0; r < mod; ++r) unit[static_cast<std::size_t>(r)] = std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(mod));
  TwistReport rep;
  for (long n = 0; n <= cutoff; ++n) {
    double an = f.coeff({n}).get_d();
    double left = cp * filtered.coeff({n}).get_d();
    std::complex<double> right = 0;
    for (long h0 = 0; h0 < mod; ++h0) {
      std::complex<double> inner = 0;
      for (long x = 0; x < mod; ++x) inner += unit[static_cast<std::size_t>(mod_floor(-h0 * x + n * x, mod))];
      std::complex<double> avg = inner * an;
      if (h0 % p != 0) right += cp * avg;
      // per-residue form: both sides twisted by e(-h0 x/4p)
      if (h0 % p != 0) {
        std::complex<double> lhs = inner * left;
        std::complex<double> rhs = cp * avg;
        double scale = std::max(1.0, std::abs(an) * static_cast<double>(mod));
        rep.max_discrepancy_chi03 = std::max(rep.max_discrepancy_chi03, std::abs(lhs - rhs) / scale);
      }
    }
    right /= static_cast<double>(mod);
    double scale = std::max(1.0, std::abs(an) * static_cast<double>(mod));
    rep.max_discrepancy_chi0 = std::max(rep.max_discrepancy_chi0, std::abs(right - left) / scale);
  }
  rep.pass = rep.max_discrepancy_chi0 < tol && rep.max_discrepancy_chi03 < tol;
  return rep;
}

struct OrthogonalityReport {
  long pairs = 0;
  long failures = 0;
  bool exact = true;
};

namespace detail {

using IntPoly = std::vector<BigInt>;  // low degree first

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// remainder of a modulo the monic polynomial m
inline IntPoly poly_rem(IntPoly a, const IntPoly& m) {
  std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    BigInt lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= lead * m[i];
    a.pop_back();
  }
  return a;
}

inline IntPoly poly_exact_div(IntPoly a, const IntPoly& m) {
  std::size_t dm = m.size() - 1;
  IntPoly q(a.size() - dm, 0);
  while (a.size() > dm) {
    BigInt lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    q[shift] = lead;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= lead * m[i];
    a.pop_back();
  }
  return q;
}

inline IntPoly cyclotomic(long n) {
  IntPoly f(static_cast<std::size_t>(n + 1), 0);
  f[0] = -1;
  f[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) f = poly_exact_div(f, cyclotomic(d));
  return f;
}

}  // namespace detail

/// (1/phi(p)) sum_chi conj(chi(b)) chi(c) = [b = c] over the characters mod p,
/// computed exactly in Z[x]/Phi_{p-1}(x).
inline OrthogonalityReport character_orthogonality(long p, long v = 1) {
  if (v != 1) throw DomainError("character_orthogonality: only v = 1");
  check_prime(p);
  long n = p - 1;
  long g = primitive_root(p);
  std::vector<long> ind(static_cast<std::size_t>(p), -1);
  long x = 1;
  for (long e = 0; e < n; ++e) {
    ind[static_cast<std::size_t>(x)] = e;
    x = x * g % p;
  }
  detail::IntPoly phi = detail::cyclotomic(n);
  OrthogonalityReport rep;
  for (long b = 1; b < p; ++b)
    for (long c = 1; c < p; ++c) {
      detail::IntPoly s(static_cast<std::size_t>(n), 0);
      for (long r = 0; r < n; ++r) {
        long e = mod_floor(r * (ind[static_cast<std::size_t>(c)] - ind[static_cast<std::size_t>(b)]), n);
        s[static_cast<std::size_t>(e)] += 1;
      }
      detail::IntPoly red = detail::poly_rem(s, phi);
      bool ok = true;
      BigInt expect = b == c ? BigInt(n) : BigInt(0);
      for (std::size_t i = 0; i < red.size(); ++i) {
        BigInt want = i == 0 ? expect : BigInt(0);
        if (red[i] != want) ok = false;
      }
      ++rep.pairs;
      if (!ok) ++rep.failures;
    }
  rep.exact = rep.failures == 0;
  return rep;
}

}  // namespace padlfun

#endif
