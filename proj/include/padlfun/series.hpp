#ifndef PADLFUN_SERIES_HPP
#define PADLFUN_SERIES_HPP

// Truncated elements of Z_p[[t]], distinguished polynomials, Weierstrass
// preparation, Newton polygons and root isolation.

#include <algorithm>
#include <string>
#include <vector>

#include "padlfun/padic.hpp"

namespace padlfun {

inline long ceil_div(long a, long b) { return (a + b - 1) / b; }

/// c_0 + c_1 t + ... + c_{D-1} t^{D-1} + O(t^D), every coefficient known
/// mod p^N. With `polynomial` set the tail is exactly zero instead.
class IwasawaSeries {
 public:
  IwasawaSeries() = default;
  IwasawaSeries(long p, long n, std::vector<BigInt> coeffs, bool polynomial = false)
      : p_(p), n_(n), c_(std::move(coeffs)), polynomial_(polynomial) {
    if (n_ < 0) n_ = 0;
    for (auto& x : c_) x = mod_pos(x, ppow(p_, n_));
  }

  static IwasawaSeries zero(long p, long n, long d) {
    return IwasawaSeries(p, n, std::vector<BigInt>(static_cast<std::size_t>(d), 0));
  }
  static IwasawaSeries constant(long p, long n, long d, const BigInt& a) {
    std::vector<BigInt> c(static_cast<std::size_t>(std::max(d, 1L)), 0);
    c[0] = a;
    return IwasawaSeries(p, n, std::move(c));
  }
  static IwasawaSeries one(long p, long n, long d) { return constant(p, n, d, 1); }
  /// Exact polynomial with the given residues.
  static IwasawaSeries poly(long p, long n, std::vector<BigInt> c) {
    return IwasawaSeries(p, n, std::move(c), true);
  }
  /// Polynomial from p-adic integer coefficients; precision is the weakest one.
  static IwasawaSeries poly(const std::vector<PadicNum>& c, long n_cap) {
    if (c.empty()) throw DomainError("empty polynomial");
    long p = c[0].p();
    long n = n_cap;
    for (const auto& x : c) n = std::min(n, x.abs_prec());
    std::vector<BigInt> r;
    for (const auto& x : c) {
      if (!x.is_zero() && x.valuation() < 0) throw DomainError("polynomial coefficient not integral");
      r.push_back(x.residue_mod(n));
    }
    return poly(p, n, std::move(r));
  }

  long p() const { return p_; }
  long prec() const { return n_; }
  long cutoff() const { return static_cast<long>(c_.size()); }
  bool is_polynomial() const { return polynomial_; }
  const std::vector<BigInt>& residues() const { return c_; }
  const BigInt& residue(long i) const { return c_.at(static_cast<std::size_t>(i)); }
  BigInt residue_or_zero(long i) const {
    return i < cutoff() ? c_[static_cast<std::size_t>(i)] : BigInt(0);
  }
  PadicNum coeff(long i) const {
    if (i >= cutoff() && !polynomial_)
      throw PrecisionExhausted("coefficient beyond t-adic cutoff");
    return PadicNum::from_residue(p_, residue_or_zero(i), n_);
  }

  /// Same series viewed mod (p^n, t^d) with n, d no larger than now.
  IwasawaSeries truncated(long n, long d) const {
    long dd = polynomial_ ? d : std::min(d, cutoff());
    std::vector<BigInt> c(static_cast<std::size_t>(std::max(dd, 0L)));
    for (long i = 0; i < dd; ++i) c[static_cast<std::size_t>(i)] = residue_or_zero(i);
    bool still_poly = polynomial_ && dd >= degree_bound() + 1;
    return IwasawaSeries(p_, std::min(n, n_), std::move(c), still_poly);
  }

  /// Largest index with a nonzero residue, or -1.
  long degree_bound() const {
    for (long i = cutoff() - 1; i >= 0; --i)
      if (c_[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
  }

  bool is_zero_mod() const { return degree_bound() < 0; }

  /// min over coefficients of ord_p, capped at N.
  long min_valuation() const {
    long m = n_;
    for (const auto& x : c_)
      if (x != 0) m = std::min(m, ord_p(x, p_));
    return m;
  }

  friend IwasawaSeries operator+(const IwasawaSeries& a, const IwasawaSeries& b) {
    check(a, b);
    long n = std::min(a.n_, b.n_);
    long d = result_cutoff_add(a, b);
    std::vector<BigInt> c(static_cast<std::size_t>(d));
    for (long i = 0; i < d; ++i)
      c[static_cast<std::size_t>(i)] = a.residue_or_zero(i) + b.residue_or_zero(i);
    return IwasawaSeries(a.p_, n, std::move(c), a.polynomial_ && b.polynomial_);
  }

  IwasawaSeries operator-() const {
    std::vector<BigInt> c = c_;
    for (auto& x : c) x = -x;
    return IwasawaSeries(p_, n_, std::move(c), polynomial_);
  }

  friend IwasawaSeries operator-(const IwasawaSeries& a, const IwasawaSeries& b) { return a + (-b); }

  friend IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b) {
    check(a, b);
    long n = std::min(a.n_, b.n_);
    long d;
    bool poly = a.polynomial_ && b.polynomial_;
    if (poly) {
      d = std::max(0L, a.degree_bound() + b.degree_bound() + 1);
    } else if (a.polynomial_) {
      d = b.cutoff();
    } else if (b.polynomial_) {
      d = a.cutoff();
    } else {
      d = std::min(a.cutoff(), b.cutoff());
    }
    const BigInt& mod = ppow(a.p_, n);
    std::vector<BigInt> c(static_cast<std::size_t>(d), 0);
    long da = std::min(a.cutoff(), d), db = std::min(b.cutoff(), d);
    for (long i = 0; i < da; ++i) {
      const BigInt& x = a.c_[static_cast<std::size_t>(i)];
      if (x == 0) continue;
      for (long j = 0; j < db && i + j < d; ++j) c[static_cast<std::size_t>(i + j)] += x * b.c_[static_cast<std::size_t>(j)];
    }
    for (auto& x : c) x = mod_pos(x, mod);
    return IwasawaSeries(a.p_, n, std::move(c), poly);
  }

  IwasawaSeries& operator+=(const IwasawaSeries& o) { return *this = *this + o; }
  IwasawaSeries& operator-=(const IwasawaSeries& o) { return *this = *this - o; }
  IwasawaSeries& operator*=(const IwasawaSeries& o) { return *this = *this * o; }

  /// Multiply by an integral p-adic scalar.
  IwasawaSeries scaled(const PadicNum& s) const {
    if (s.is_exact_zero()) return IwasawaSeries(p_, n_, std::vector<BigInt>(c_.size(), 0), polynomial_);
    if (!s.is_zero() && s.valuation() < 0) throw DomainError("scaling a series by a non-integral scalar");
    long v = s.valuation();
    long n = std::min(n_ + v, s.abs_prec());
    BigInt r = s.is_zero() ? BigInt(0) : s.residue_mod(n);
    std::vector<BigInt> c = c_;
    for (auto& x : c) x *= r;
    return IwasawaSeries(p_, n, std::move(c), polynomial_);
  }

  /// Exact division by p^e; every coefficient must be divisible.
  IwasawaSeries divided_by_p_power(long e) const {
    if (e == 0) return *this;
    if (e > n_) throw PrecisionExhausted("dividing out more powers of p than known");
    std::vector<BigInt> c = c_;
    for (auto& x : c) {
      if (x % ppow(p_, e) != 0) throw DomainError("series not divisible by p^" + std::to_string(e));
      x /= ppow(p_, e);
    }
    return IwasawaSeries(p_, n_ - e, std::move(c), polynomial_);
  }

  /// Inverse mod (p^N, t^D); needs a unit constant term.
  IwasawaSeries inverse() const {
    if (c_.empty() || c_[0] % p_ == 0) throw DomainError("series_invert: constant term is not a unit");
    const BigInt& mod = ppow(p_, n_);
    long d = cutoff();
    BigInt inv0 = inv_mod(c_[0], mod);
    std::vector<BigInt> g(static_cast<std::size_t>(d), 0);
    g[0] = inv0;
    for (long n = 1; n < d; ++n) {
      BigInt acc = 0;
      for (long i = 1; i <= n; ++i) acc += c_[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(n - i)];
      g[static_cast<std::size_t>(n)] = mod_pos(-acc * inv0, mod);
    }
    return IwasawaSeries(p_, n_, std::move(g));
  }

  /// Value at t0 in pZ_p (or an exact zero).
  PadicNum eval(const PadicNum& t0) const {
    if (t0.p() != p_) throw DomainError("series/point prime mismatch");
    if (t0.is_exact_zero()) return PadicNum::from_residue(p_, residue_or_zero(0), n_);
    long v = t0.valuation();
    if (v < 1) throw DomainError("evaluation point not in pZ_p");
    long m = std::min(n_, t0.abs_prec());
    if (!polynomial_) m = std::min(m, cutoff() * v);
    if (m <= 0) return PadicNum::zero(p_, 0);
    const BigInt& mod = ppow(p_, m);
    BigInt x = t0.residue_mod(m);
    BigInt acc = 0;
    for (long i = cutoff() - 1; i >= 0; --i) acc = (acc * x + c_[static_cast<std::size_t>(i)]) % mod;
    return PadicNum::from_residue(p_, acc, m);
  }

  std::string to_string() const {
    std::string s;
    for (long i = 0; i < cutoff(); ++i) {
      if (c_[static_cast<std::size_t>(i)] == 0) continue;
      if (!s.empty()) s += " + ";
      std::string cf = "(" + coeff(i).to_string() + ")";
      s += i == 0 ? cf : cf + (i == 1 ? "*t" : "*t^" + std::to_string(i));
    }
    if (s.empty()) s = "0";
    if (!polynomial_) s += " + O(t^" + std::to_string(cutoff()) + ")";
    return s;
  }

  bool equal_mod(const IwasawaSeries& o, long n, long d) const {
    for (long i = 0; i < d; ++i) {
      BigInt diff = residue_or_zero(i) - o.residue_or_zero(i);
      if (mod_pos(diff, ppow(p_, n)) != 0) return false;
    }
    return true;
  }

 private:
  static void check(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.p_ != b.p_) throw DomainError("series over different primes");
  }
  static long result_cutoff_add(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.polynomial_ && b.polynomial_) return std::max(a.cutoff(), b.cutoff());
    if (a.polynomial_) return b.cutoff();
    if (b.polynomial_) return a.cutoff();
    return std::min(a.cutoff(), b.cutoff());
  }

  long p_ = 3;
  long n_ = 0;
  std::vector<BigInt> c_;
  bool polynomial_ = false;
};

inline IwasawaSeries series_mul(const IwasawaSeries& f, const IwasawaSeries& g) { return f * g; }
inline IwasawaSeries series_add(const IwasawaSeries& f, const IwasawaSeries& g) { return f + g; }
inline IwasawaSeries series_invert(const IwasawaSeries& f) { return f.inverse(); }

/// t^lambda + a_{lambda-1} t^{lambda-1} + ... + a_0 with p | a_i; the
/// leading 1 is exact, the a_i are known mod p^N.
class DistinguishedPoly {
 public:
  DistinguishedPoly() = default;
  DistinguishedPoly(long p, long n, std::vector<BigInt> lower) : p_(p), n_(n), a_(std::move(lower)) {
    for (auto& x : a_) {
      x = mod_pos(x, ppow(p_, n_));
      if (n_ > 0 && x % p_ != 0) throw DomainError("distinguished polynomial with a unit lower coefficient");
    }
  }
  static DistinguishedPoly one(long p, long n) { return DistinguishedPoly(p, n, {}); }
  /// t - alpha.
  static DistinguishedPoly linear(const PadicNum& alpha, long n) {
    long m = std::min(n, alpha.abs_prec());
    return DistinguishedPoly(alpha.p(), m, {mod_pos(-alpha.residue_mod(m), ppow(alpha.p(), m))});
  }

  long p() const { return p_; }
  long prec() const { return n_; }
  long degree() const { return static_cast<long>(a_.size()); }
  const std::vector<BigInt>& lower() const { return a_; }
  PadicNum coeff(long i) const {
    if (i == degree()) return padic_one(p_, n_);
    return PadicNum::from_residue(p_, a_.at(static_cast<std::size_t>(i)), n_);
  }

  IwasawaSeries as_series() const {
    std::vector<BigInt> c = a_;
    c.push_back(1);
    return IwasawaSeries::poly(p_, n_, std::move(c));
  }

  /// Product of two distinguished polynomials is distinguished.
  friend DistinguishedPoly operator*(const DistinguishedPoly& a, const DistinguishedPoly& b) {
    IwasawaSeries prod = a.as_series() * b.as_series();
    long n = std::min(a.n_, b.n_);
    std::vector<BigInt> lower;
    for (long i = 0; i < a.degree() + b.degree(); ++i) lower.push_back(prod.residue_or_zero(i));
    return DistinguishedPoly(a.p_, n, std::move(lower));
  }

  PadicNum eval(const PadicNum& t0) const {
    if (t0.is_exact_zero()) {
      if (degree() == 0) return padic_one(p_, n_);
      return PadicNum::from_residue(p_, a_[0], n_);
    }
    if (t0.valuation() < 0) throw DomainError("evaluation point not integral");
    PadicNum acc = padic_one(p_, n_);
    for (long i = degree() - 1; i >= 0; --i) acc = acc * t0 + coeff(i);
    return acc;
  }

  std::string to_string() const {
    std::string s = degree() == 0 ? "1" : (degree() == 1 ? "t" : "t^" + std::to_string(degree()));
    for (long i = degree() - 1; i >= 0; --i) {
      if (a_[static_cast<std::size_t>(i)] == 0) continue;
      std::string cf = "(" + coeff(i).to_string() + ")";
      s += " + " + (i == 0 ? cf : cf + (i == 1 ? "*t" : "*t^" + std::to_string(i)));
    }
    return s;
  }

  bool equal_mod(const DistinguishedPoly& o, long n) const {
    if (degree() != o.degree()) return false;
    for (long i = 0; i < degree(); ++i)
      if (mod_pos(a_[static_cast<std::size_t>(i)] - o.a_[static_cast<std::size_t>(i)], ppow(p_, n)) != 0)
        return false;
    return true;
  }

 private:
  long p_ = 3;
  long n_ = 0;
  std::vector<BigInt> a_;
};

/// f(arg(t)) where arg(0) is divisible by p. For a truncated f the output
/// coefficient j is known mod p^{(D-j) v(arg(0))}, so the result is cut to
/// the indices that reach the output precision.
inline IwasawaSeries compose_poly_arg(const IwasawaSeries& f, const IwasawaSeries& arg) {
  if (!arg.is_polynomial()) throw DomainError("compose_poly_arg: argument must be a polynomial");
  if (arg.degree_bound() > 2) throw DomainError("compose_poly_arg: argument degree above 2");
  long p = f.p();
  long n = std::min(f.prec(), arg.prec());
  BigInt a0 = arg.residue_or_zero(0);
  if (mod_pos(a0, BigInt(p)) != 0 && n > 0) throw DomainError("compose_poly_arg: arg(0) is a unit");
  long dout;
  if (f.is_polynomial()) {
    long df = std::max(f.degree_bound(), 0L);
    long da = std::max(arg.degree_bound(), 0L);
    dout = df * da + 1;
  } else {
    long v = a0 == 0 ? kInfiniteValuation : std::min(ord_p(a0, p), n);
    if (a0 == 0 || v >= n) {
      dout = f.cutoff();
    } else {
      dout = f.cutoff() - ceil_div(n, v) + 1;
    }
    if (dout <= 0) throw PrecisionExhausted("compose_poly_arg: series too short for requested precision");
  }
  const BigInt& mod = ppow(p, n);
  std::vector<BigInt> acc(static_cast<std::size_t>(dout), 0);
  std::vector<BigInt> ac = {arg.residue_or_zero(0), arg.residue_or_zero(1), arg.residue_or_zero(2)};
  long top = f.is_polynomial() ? f.degree_bound() : f.cutoff() - 1;
  for (long i = top; i >= 0; --i) {
    std::vector<BigInt> next(static_cast<std::size_t>(dout), 0);
    for (long j = 0; j < dout; ++j) {
      const BigInt& x = acc[static_cast<std::size_t>(j)];
      if (x == 0) continue;
      for (long e = 0; e < 3 && j + e < dout; ++e) next[static_cast<std::size_t>(j + e)] += x * ac[static_cast<std::size_t>(e)];
    }
    next[0] += f.residue_or_zero(i);
    for (auto& x : next) x = mod_pos(x, mod);
    acc = std::move(next);
  }
  return IwasawaSeries(p, n, std::move(acc), f.is_polynomial());
}

/// P(arg(t)) re-normalized: a distinguished polynomial composed with a linear
/// argument whose t-coefficient is a unit stays distinguished after dividing
/// by the leading coefficient, which is returned separately.
struct ComposedPoly {
  DistinguishedPoly poly;
  PadicNum leading;  // the composed polynomial equals leading * poly
};

inline ComposedPoly compose_poly_arg(const DistinguishedPoly& P, const IwasawaSeries& arg) {
  IwasawaSeries c = compose_poly_arg(P.as_series(), arg);
  long deg = c.degree_bound();
  long p = P.p();
  if (deg < 0) throw PrecisionExhausted("composed polynomial vanished");
  BigInt lead = c.residue(deg);
  if (lead % p == 0) throw DomainError("composed polynomial has non-unit leading coefficient");
  const BigInt& mod = ppow(p, c.prec());
  BigInt inv = inv_mod(lead, mod);
  std::vector<BigInt> lower;
  for (long i = 0; i < deg; ++i) lower.push_back(mod_pos(c.residue(i) * inv, mod));
  bool distinguished = true;
  for (const auto& x : lower)
    if (x % p != 0) distinguished = false;
  if (!distinguished) throw DomainError("composed polynomial is not distinguished; prepare it instead");
  return {DistinguishedPoly(p, c.prec(), std::move(lower)), PadicNum::from_residue(p, lead, c.prec())};
}

struct NewtonSegment {
  Rat slope;              // of the lower hull, increasing left to right
  long length = 0;        // number of roots
  bool unbounded = false; // roots of valuation at least the working precision
  Rat root_valuation() const { return -slope; }
};

/// Lower convex hull of (i, ord a_i); coefficients that vanish mod p^N
/// are treated as absent.
inline std::vector<NewtonSegment> newton_polygon(const DistinguishedPoly& P) {
  std::vector<NewtonSegment> out;
  long d = P.degree();
  if (d == 0) return out;
  std::vector<std::pair<long, long>> pts;
  for (long i = 0; i <= d; ++i) {
    if (i == d) {
      pts.emplace_back(i, 0);
      continue;
    }
    const BigInt& a = P.lower()[static_cast<std::size_t>(i)];
    if (a != 0) pts.emplace_back(i, ord_p(a, P.p()));
  }
  if (pts.front().first > 0) {
    NewtonSegment s;
    s.unbounded = true;
    s.length = pts.front().first;
    s.slope = Rat(-P.prec());
    out.push_back(s);
  }
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a -> pt
      long lhs = (b.second - a.second) * (pt.first - a.first);
      long rhs = (pt.second - a.second) * (b.first - a.first);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    NewtonSegment s;
    s.length = hull[i].first - hull[i - 1].first;
    s.slope = make_rat(BigInt(hull[i].second - hull[i - 1].second), BigInt(s.length));
    out.push_back(s);
  }
  return out;
}

/// Smallest root valuation (0 roots: +infinity as kInfiniteValuation).
inline Rat min_root_valuation(const DistinguishedPoly& P) {
  auto segs = newton_polygon(P);
  if (segs.empty()) return Rat(kInfiniteValuation);
  Rat m = Rat(kInfiniteValuation);
  for (const auto& s : segs)
    if (!s.unbounded) m = std::min(m, s.root_valuation());
  if (m == Rat(kInfiniteValuation)) m = Rat(P.prec());
  return m;
}

/// ord_p P((1+p)^j - 1).
inline long valuation_at_tj(const DistinguishedPoly& P, long j) {
  if (j <= 0) throw DomainError("valuation_at_tj: j must be positive");
  long p = P.p();
  long w = ord_p(BigInt(j), p) + 1;
  long d = P.degree();
  long best = d * w;
  int hits = 1;
  for (long i = 0; i < d; ++i) {
    const BigInt& a = P.lower()[static_cast<std::size_t>(i)];
    long v = (a == 0 ? P.prec() : ord_p(a, p)) + i * w;
    if (v < best) {
      best = v;
      hits = 1;
    } else if (v == best) {
      ++hits;
    }
  }
  bool vanishing_involved = false;
  for (long i = 0; i < d; ++i)
    if (P.lower()[static_cast<std::size_t>(i)] == 0 && P.prec() + i * w <= best) vanishing_involved = true;
  if (hits == 1 && !vanishing_involved) return best;
  PadicNum val = P.eval(t_coordinate(j, p, P.prec() + 1));
  if (val.is_zero())
    throw PrecisionExhausted("valuation_at_tj: value vanishes to working precision p^" +
                             std::to_string(val.abs_prec()));
  return val.valuation();
}

inline BigInt floor_rat(const Rat& x) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return fl;
}

/// P is correct mod p^prec. The unknown tail t^D E of a truncated G moves
/// coefficient m of U by p^{rv (D - lambda - m)} (rv the smallest root
/// valuation of P), so U is only certified modulo p^prec plus that ideal;
/// at points of valuation >= 1 the defect is below p^{min(rv,1)(D - lambda)}.
struct Prepared {
  long mu = 0;
  DistinguishedPoly P;
  IwasawaSeries U;
  long prec = 0;
  Rat root_val = 0;
  long tail = -1;  // D - lambda, or -1 when G was exact

  /// Certified p-adic digits of coefficient m of U.
  long unit_digits(long m) const {
    if (tail < 0) return prec;
    BigInt fl = floor_rat(root_val * Rat(tail - m));
    return fl < prec ? std::max(fl.get_si(), 0L) : prec;
  }
  /// E with the defect of U lying in (p, t)^E; bounds evaluation at t0 in pZ_p.
  long ideal_order() const {
    if (tail < 0) return kInfiniteValuation;
    return floor_rat(std::min(root_val, Rat(1)) * Rat(tail)).get_si();
  }
};

namespace detail {

struct WDivision {
  IwasawaSeries q;
  IwasawaSeries r;
};

// F = Q P + R with deg R < deg P, Weierstrass division by a distinguished P.
inline WDivision wdivide(IwasawaSeries f, const DistinguishedPoly& P, long n) {
  long p = P.p();
  long lam = P.degree();
  long d = f.cutoff();
  const BigInt& mod = ppow(p, n);
  std::vector<BigInt> q(static_cast<std::size_t>(std::max(d - lam, 0L)), 0);
  std::vector<BigInt> r(static_cast<std::size_t>(lam), 0);
  std::vector<BigInt> fc(static_cast<std::size_t>(d), 0);
  for (long i = 0; i < d; ++i) fc[static_cast<std::size_t>(i)] = mod_pos(f.residue_or_zero(i), mod);
  const auto& a = P.lower();
  for (long iter = 0; iter <= n * (d + 1) + 2; ++iter) {
    bool nonzero = false;
    for (const auto& x : fc)
      if (x != 0) nonzero = true;
    if (!nonzero) {
      return {IwasawaSeries(p, n, std::move(q), f.is_polynomial()), IwasawaSeries(p, n, std::move(r), true)};
    }
    for (long i = 0; i < lam && i < d; ++i) r[static_cast<std::size_t>(i)] += fc[static_cast<std::size_t>(i)];
    std::vector<BigInt> next(static_cast<std::size_t>(d), 0);
    for (long i = lam; i < d; ++i) {
      const BigInt& b = fc[static_cast<std::size_t>(i)];
      if (b == 0) continue;
      q[static_cast<std::size_t>(i - lam)] += b;
      for (long k = 0; k < lam; ++k) {
        long idx = i - lam + k;
        if (idx < d) next[static_cast<std::size_t>(idx)] -= b * a[static_cast<std::size_t>(k)];
      }
    }
    for (auto& x : next) x = mod_pos(x, mod);
    fc = std::move(next);
  }
  throw PrecisionExhausted("Weierstrass division did not converge");
}

}  // namespace detail

/// G = p^mu P U mod (p^N, t^D) with P distinguished of degree lambda and U a unit.
inline Prepared weierstrass_prepare(const IwasawaSeries& g) {
  long p = g.p();
  if (g.is_zero_mod()) throw PrecisionExhausted("weierstrass_prepare: series vanishes mod p^N");
  long mu = g.min_valuation();
  IwasawaSeries h = g.divided_by_p_power(mu);
  long n = h.prec();
  long lam = -1;
  for (long i = 0; i < h.cutoff(); ++i)
    if (h.residue(i) % p != 0) {
      lam = i;
      break;
    }
  if (lam < 0) throw PrecisionExhausted("weierstrass_prepare: no unit coefficient below the cutoff");
  std::vector<BigInt> lower(static_cast<std::size_t>(lam), 0);
  DistinguishedPoly P(p, n, lower);
  if (lam > 0) {
    bool done = false;
    for (long round = 0; round < n + 4; ++round) {
      auto qr = detail::wdivide(h, P, n);
      if (qr.r.is_zero_mod()) {
        done = true;
        break;
      }
      std::vector<BigInt> qpad = qr.q.residues();
      qpad.resize(static_cast<std::size_t>(h.cutoff() + n * lam), 0);
      IwasawaSeries qinv = IwasawaSeries(p, n, std::move(qpad)).inverse();
      auto corr = detail::wdivide(qr.r * qinv, P, n).r;
      std::vector<BigInt> nl = P.lower();
      for (long i = 0; i < lam; ++i) nl[static_cast<std::size_t>(i)] += corr.residue_or_zero(i);
      P = DistinguishedPoly(p, n, std::move(nl));
    }
    if (!done) throw PrecisionExhausted("weierstrass_prepare: iteration did not converge");
  }
  auto qr = detail::wdivide(h, P, n);
  long prec = n;
  Prepared out;
  if (!h.is_polynomial() && lam > 0) {
    out.root_val = min_root_valuation(P);
    out.tail = h.cutoff() - lam;
    BigInt fl = floor_rat(out.root_val * Rat(out.tail + 1));
    if (fl < prec) prec = fl.get_si();
  }
  if (prec <= 0) throw PrecisionExhausted("weierstrass_prepare: t-adic cutoff leaves no p-adic digits");
  out.mu = mu;
  out.P = DistinguishedPoly(p, prec, P.lower());
  out.U = IwasawaSeries(p, prec, qr.q.residues(), h.is_polynomial());
  out.prec = prec;
  return out;
}

namespace detail {

struct RootCluster {
  BigInt x;       // root modulo p^digits
  long digits;    // absolute precision of x
};

// Roots in Z_p of f (residues known mod p^k), multiplicity by repetition.
inline void find_roots(std::vector<BigInt> f, long k, long p, long depth, std::vector<RootCluster>& out,
                       long multiplicity_hint) {
  // strip content
  long c = k;
  for (const auto& x : f)
    if (x != 0) c = std::min(c, ord_p(x, p));
  if (c >= k || depth > 4 * k + 8) {
    for (long i = 0; i < multiplicity_hint; ++i) out.push_back({BigInt(0), 0});
    return;
  }
  for (auto& x : f) x /= ppow(p, c);
  k -= c;
  const BigInt& mod = ppow(p, k);
  long deg = static_cast<long>(f.size()) - 1;
  while (deg > 0 && mod_pos(f[static_cast<std::size_t>(deg)], BigInt(p)) == 0) --deg;
  // roots mod p with multiplicities
  for (long r = 0; r < p; ++r) {
    std::vector<long> g(static_cast<std::size_t>(deg + 1));
    for (long i = 0; i <= deg; ++i) g[static_cast<std::size_t>(i)] = mod_pos(f[static_cast<std::size_t>(i)], BigInt(p)).get_si();
    long m = 0;
    while (!g.empty()) {
      // synthetic division by (t - r) mod p
      long n = static_cast<long>(g.size()) - 1;
      if (n == 0) break;
      std::vector<long> q(static_cast<std::size_t>(n));
      long carry = 0;
      for (long i = n; i >= 1; --i) {
        carry = (carry * r + g[static_cast<std::size_t>(i)]) % p;
        q[static_cast<std::size_t>(i - 1)] = carry;
      }
      long rem = (carry * r + g[0]) % p;
      if (rem != 0) break;
      ++m;
      g = std::move(q);
    }
    if (m == 0) continue;
    if (m == 1) {
      BigInt x = r;
      for (long it = 0; it < 2 * k + 4; ++it) {
        BigInt fv = 0, dv = 0;
        for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i) {
          dv = (dv * x + fv) % mod;
          fv = (fv * x + f[static_cast<std::size_t>(i)]) % mod;
        }
        fv = mod_pos(fv, mod);
        if (fv == 0) break;
        x = mod_pos(x - fv * inv_mod(mod_pos(dv, mod), mod), mod);
      }
      out.push_back({x, k});
      continue;
    }
    // f(r + p y)
    long n = static_cast<long>(f.size());
    std::vector<BigInt> h(static_cast<std::size_t>(n), 0);
    for (long i = 0; i < n; ++i) {
      for (long j = i; j >= 0; --j) {
        // coefficient of y^j from f_i (r + p y)^i
        h[static_cast<std::size_t>(j)] += f[static_cast<std::size_t>(i)] * binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(j)) *
                                           ipow(BigInt(r), static_cast<unsigned long>(i - j)) * ppow(p, j);
      }
    }
    for (auto& x : h) x = mod_pos(x, mod);
    std::vector<RootCluster> sub;
    find_roots(h, k, p, depth + 1, sub, m);
    for (auto& s : sub) out.push_back({BigInt(r) + p * s.x, s.digits + 1});
  }
}

}  // namespace detail

/// Roots of P lying in pZ_p, repeated by multiplicity, each to the precision
/// the coefficients support (at most n digits).
inline std::vector<PadicNum> roots_in_pZp(const DistinguishedPoly& P, long n) {
  std::vector<BigInt> f = P.lower();
  f.push_back(1);
  long k = P.prec();
  std::vector<detail::RootCluster> found;
  detail::find_roots(f, k, P.p(), 0, found, P.degree());
  std::vector<PadicNum> out;
  for (const auto& r : found) {
    long dig = std::min(r.digits, n);
    PadicNum x = PadicNum::from_residue(P.p(), r.x, dig);
    if (x.is_zero() || x.valuation() >= 1) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// (1+t)^s

/// (1+t)^s = sum binom(s, n) t^n with s given as a residue mod p^w.
inline IwasawaSeries binomial_series(const BigInt& s, long w, long p, long d, long n) {
  BigInt fact = 1;
  for (long i = 2; i < d; ++i) fact *= i;
  long of = d > 1 ? ord_p(fact, p) : 0;
  if (w < n + of) n = w - of;
  if (n <= 0) throw PrecisionExhausted("binomial_series: exponent known to too few digits");
  const BigInt& wmod = ppow(p, n + of);
  const BigInt& mod = ppow(p, n);
  std::vector<BigInt> c(static_cast<std::size_t>(d), 0);
  BigInt num = 1;
  BigInt den = 1;
  for (long i = 0; i < d; ++i) {
    if (i > 0) {
      num = num * (s - (i - 1)) % wmod;
      den *= i;
    }
    long e = ord_p(den, p);
    BigInt nn = mod_pos(num, wmod);
    if (e > 0) {
      if (nn % ppow(p, e) != 0) throw DomainError("binomial_series: non-integral coefficient");
      nn /= ppow(p, e);
    }
    c[static_cast<std::size_t>(i)] = mod_pos(nn * inv_mod(den / ppow(p, e), mod), mod);
  }
  return IwasawaSeries(p, n, std::move(c));
}

/// (1+t)^k for an integer k.
inline IwasawaSeries one_plus_t_power(long k, long p, long d, long n) {
  if (k >= 0 && k < d) {
    std::vector<BigInt> c(static_cast<std::size_t>(k + 1));
    for (long i = 0; i <= k; ++i) c[static_cast<std::size_t>(i)] = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i));
    return IwasawaSeries::poly(p, n, std::move(c)).truncated(n, d);
  }
  long w = n + 4 * d;
  return binomial_series(mod_pos(BigInt(k), ppow(p, w)), w, p, d, n);
}

/// a~(t) = (1+t)^{alpha s(a)} with <a> = (1+p)^{s(a)}.
inline IwasawaSeries a_tilde(const BigInt& a, long p, long d, long n, long alpha = 1) {
  BigInt fact = 1;
  for (long i = 2; i < d; ++i) fact *= i;
  long w = n + (d > 1 ? ord_p(fact, p) : 0);
  BigInt s = s_exponent_residue(a, p, w) * alpha;
  return binomial_series(mod_pos(s, ppow(p, w)), w, p, d, n);
}

}  // namespace padlfun

#endif
