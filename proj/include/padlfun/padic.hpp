#ifndef PADLFUN_PADIC_HPP
#define PADLFUN_PADIC_HPP

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "padlfun/arith.hpp"

namespace padlfun {

/// p^n, memoized per thread.
inline const BigInt& ppow(long p, long n) {
  if (n < 0) throw DomainError("ppow: negative exponent");
  thread_local std::unordered_map<long, std::deque<BigInt>> cache;  // deque keeps references stable
  auto& v = cache[p];
  if (v.empty()) v.emplace_back(1);
  while (static_cast<long>(v.size()) <= n) v.push_back(v.back() * p);
  return v[static_cast<std::size_t>(n)];
}

inline BigInt mod_pos(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt inv_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("inv_mod: not invertible");
  return r;
}

inline BigInt pow_mod(const BigInt& base, const BigInt& e, const BigInt& m) {
  BigInt r;
  if (e < 0) {
    BigInt inv = inv_mod(base, m);
    BigInt ne = -e;
    mpz_powm(r.get_mpz_t(), inv.get_mpz_t(), ne.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

inline void check_prime(long p) {
  if (p < 3 || !is_small_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
}

/// p^val * unit, with the unit known modulo p^N (relative precision N).
/// Zero is either exact or O(p^M) for an absolute precision M.
class PadicNum {
 public:
  PadicNum() = default;

  static PadicNum exact_zero(long p) {
    PadicNum z;
    z.p_ = p;
    z.exact_zero_ = true;
    z.val_ = kInfiniteValuation;
    return z;
  }

  /// O(p^absprec).
  static PadicNum zero(long p, long absprec) {
    PadicNum z;
    z.p_ = p;
    z.val_ = absprec;
    z.prec_ = 0;
    return z;
  }

  /// p^val * u with u known mod p^relprec; u may carry extra factors of p.
  static PadicNum make(long p, long val, const BigInt& u, long relprec) {
    if (relprec <= 0) return zero(p, val + std::max(relprec, 0L));
    BigInt r = mod_pos(u, ppow(p, relprec));
    if (r == 0) return zero(p, val + relprec);
    long e = ord_p(r, p);
    PadicNum x;
    x.p_ = p;
    x.val_ = val + e;
    x.prec_ = relprec - e;
    x.unit_ = r / ppow(p, e);
    return x;
  }

  /// Integer residue r known modulo p^absprec.
  static PadicNum from_residue(long p, const BigInt& r, long absprec) {
    return make(p, 0, r, absprec);
  }

  long p() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  bool is_zero() const { return exact_zero_ || prec_ == 0; }
  /// Valuation; for O(p^M) this is M (a lower bound), for exact zero "infinite".
  long valuation() const { return val_; }
  long rel_prec() const { return exact_zero_ ? kInfiniteValuation : prec_; }
  long abs_prec() const { return exact_zero_ ? kInfiniteValuation : val_ + prec_; }
  const BigInt& unit() const { return unit_; }
  bool is_unit() const { return !is_zero() && val_ == 0; }

  /// Representative integer in [0, p^absprec) when the value is integral.
  BigInt residue() const {
    if (is_zero()) return 0;
    if (val_ < 0) throw DomainError("residue of non-integral p-adic number");
    return unit_ * ppow(p_, val_);
  }

  /// Value modulo p^n as an integer in [0, p^n); needs n <= abs_prec().
  BigInt residue_mod(long n) const {
    if (n <= 0) return 0;
    if (!exact_zero_ && n > abs_prec())
      throw PrecisionExhausted("residue_mod: asked for p^" + std::to_string(n) + " but only " +
                               std::to_string(abs_prec()) + " digits known");
    if (is_zero()) return 0;
    if (val_ < 0) throw DomainError("residue of non-integral p-adic number");
    return mod_pos(unit_ * ppow(p_, val_), ppow(p_, n));
  }

  PadicNum with_abs_prec(long m) const {
    if (exact_zero_) return zero(p_, m);
    if (m >= abs_prec()) return *this;
    if (is_zero()) return zero(p_, m);
    return make(p_, val_, unit_, m - val_);
  }

  PadicNum with_rel_prec(long n) const {
    if (is_zero()) return *this;
    return make(p_, val_, unit_, std::min(n, prec_));
  }

  PadicNum operator-() const {
    if (is_zero()) return *this;
    return make(p_, val_, -unit_, prec_);
  }

  friend PadicNum operator+(const PadicNum& a, const PadicNum& b) {
    same_prime(a, b);
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    long m = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_zero()) return b.with_abs_prec(m);
    if (b.is_zero()) return a.with_abs_prec(m);
    long v = std::min(a.val_, b.val_);
    if (m <= v) return zero(a.p_, m);
    BigInt x = a.unit_ * ppow(a.p_, a.val_ - v) + b.unit_ * ppow(a.p_, b.val_ - v);
    return make(a.p_, v, x, m - v);
  }

  friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }

  friend PadicNum operator*(const PadicNum& a, const PadicNum& b) {
    same_prime(a, b);
    if (a.exact_zero_ || b.exact_zero_) return exact_zero(a.p_);
    if (a.is_zero() && b.is_zero()) return zero(a.p_, a.val_ + b.val_);
    if (a.is_zero()) return zero(a.p_, a.val_ + b.val_);
    if (b.is_zero()) return zero(a.p_, a.val_ + b.val_);
    long n = std::min(a.prec_, b.prec_);
    return make(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, n);
  }

  friend PadicNum operator/(const PadicNum& a, const PadicNum& b) {
    same_prime(a, b);
    if (b.exact_zero_) throw DomainError("p-adic division by exact zero");
    if (b.is_zero())
      throw PrecisionExhausted("p-adic division by O(" + std::to_string(b.p_) + "^" +
                               std::to_string(b.val_) + ")");
    if (a.exact_zero_) return a;
    if (a.is_zero()) return zero(a.p_, a.val_ - b.val_);
    long n = std::min(a.prec_, b.prec_);
    const BigInt& mod = ppow(a.p_, n);
    return make(a.p_, a.val_ - b.val_, a.unit_ * inv_mod(b.unit_, mod), n);
  }

  PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
  PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
  PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }
  PadicNum& operator/=(const PadicNum& o) { return *this = *this / o; }

  PadicNum pow(long e) const {
    if (e == 0) {
      if (is_zero()) throw DomainError("p-adic zero to the power 0");
      return make(p_, 0, 1, prec_);
    }
    if (exact_zero_) {
      if (e < 0) throw DomainError("exact zero to a negative power");
      return *this;
    }
    if (is_zero()) {
      if (e < 0) throw PrecisionExhausted("O(p^M) to a negative power");
      return zero(p_, val_ * e);
    }
    const BigInt& mod = ppow(p_, prec_);
    return make(p_, val_ * e, pow_mod(unit_, BigInt(e), mod), prec_);
  }

  /// True when a and b agree modulo p^n; both must be known that far.
  bool congruent(const PadicNum& o, long n) const {
    PadicNum d = *this - o;
    if (!d.exact_zero_ && d.abs_prec() < n)
      throw PrecisionExhausted("congruence mod p^" + std::to_string(n) + " undecidable, only " +
                               std::to_string(d.abs_prec()) + " digits");
    return d.is_zero() || d.val_ >= n;
  }

  /// Base-p digits of the unit, least significant first (length = rel_prec).
  std::vector<long> digits() const {
    std::vector<long> out;
    if (is_zero()) return out;
    BigInt u = unit_;
    for (long i = 0; i < prec_; ++i) {
      BigInt q, r;
      mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p_));
      out.push_back(r.get_si());
      u = q;
    }
    return out;
  }

  /// PARI layout: "25 + 24*37 + 24*37^2 + O(37^3)".
  std::string to_string() const {
    if (exact_zero_) return "0";
    std::string ps = std::to_string(p_);
    auto power = [&](long e) { return e == 1 ? ps : ps + "^" + std::to_string(e); };
    std::string s;
    if (!is_zero()) {
      auto d = digits();
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        long e = val_ + static_cast<long>(i);
        std::string term;
        if (e == 0) {
          term = std::to_string(d[i]);
        } else if (d[i] == 1) {
          term = power(e);
        } else {
          term = std::to_string(d[i]) + "*" + power(e);
        }
        if (!s.empty()) s += " + ";
        s += term;
      }
    }
    if (!s.empty()) s += " + ";
    s += "O(" + power(abs_prec()) + ")";
    return s;
  }

 private:
  static void same_prime(const PadicNum& a, const PadicNum& b) {
    if (a.p_ != b.p_) throw DomainError("mixing p-adic numbers of different primes");
  }

  long p_ = 3;
  long val_ = 0;   // for O(p^M) holds M
  long prec_ = 0;  // relative precision; 0 means inexact zero
  BigInt unit_ = 0;
  bool exact_zero_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const PadicNum& x) { return os << x.to_string(); }

/// x with relative precision N (exact zero stays exact).
inline PadicNum from_rat(const Rat& x, long p, long n) {
  check_prime(p);
  if (x == 0) return PadicNum::exact_zero(p);
  long vn = ord_p(x.get_num(), p);
  long vd = ord_p(x.get_den(), p);
  BigInt num = x.get_num() / ppow(p, vn);
  BigInt den = x.get_den() / ppow(p, vd);
  const BigInt& mod = ppow(p, n);
  return PadicNum::make(p, vn - vd, num * inv_mod(den, mod), n);
}

inline PadicNum from_int(const BigInt& x, long p, long n) { return from_rat(Rat(x), p, n); }

/// One to relative precision n.
inline PadicNum padic_one(long p, long n) { return PadicNum::make(p, 0, 1, n); }

inline BigInt teichmuller_residue(const BigInt& a, long p, long n) {
  const BigInt& mod = ppow(p, n);
  BigInt x = mod_pos(a, mod);
  if (x % p == 0) throw DomainError("teichmuller: argument divisible by p");
  BigInt pp(p);
  for (long i = 0; i < n; ++i) {
    BigInt y = pow_mod(x, pp, mod);
    if (y == x) break;
    x = y;
  }
  return x;
}

inline PadicNum teichmuller(const BigInt& a, long p, long n) {
  check_prime(p);
  return PadicNum::make(p, 0, teichmuller_residue(a, p, n), n);
}

inline PadicNum teichmuller(const PadicNum& a) {
  if (!a.is_unit()) throw DomainError("teichmuller: argument is not a unit");
  return teichmuller(a.unit(), a.p(), a.rel_prec());
}

/// <a> = a / omega(a).
inline PadicNum angle(const PadicNum& a) {
  if (!a.is_unit()) throw DomainError("angle: argument is not a unit");
  return a / teichmuller(a);
}

/// log(u) for u = 1 mod p, as an integer residue mod p^n given u mod p^n.
inline BigInt padic_log_residue(const BigInt& u, long p, long n) {
  const BigInt& mod = ppow(p, n);
  BigInt x = mod_pos(u - 1, mod);
  if (x % p != 0) throw DomainError("padic_log: argument not congruent to 1 mod p");
  if (x == 0) return 0;
  long v = ord_p(x, p);
  long nmax = n + 2;
  for (long q = p; q <= 4 * n + 4; q *= p) ++nmax;
  long extra = 0;
  for (long i = 1; i <= nmax; ++i) extra = std::max(extra, ord_p(BigInt(i), p));
  const BigInt& wmod = ppow(p, n + extra);
  BigInt acc = 0;
  BigInt xn = 1;
  for (long i = 1; i <= nmax; ++i) {
    xn = xn * x % wmod;
    if (i * v - ord_p(BigInt(i), p) >= n) continue;
    long e = ord_p(BigInt(i), p);
    BigInt term = xn / ppow(p, e);
    BigInt iu = BigInt(i) / ppow(p, e);
    term = term * inv_mod(iu, mod) % mod;
    if (i % 2 == 0) term = -term;
    acc += term;
  }
  return mod_pos(acc, mod);
}

inline PadicNum padic_log(const PadicNum& u) {
  if (!u.is_unit()) throw DomainError("padic_log: argument is not a unit");
  long n = u.rel_prec();
  return PadicNum::from_residue(u.p(), padic_log_residue(u.unit(), u.p(), n), n);
}

/// exp(x) for ord x >= 1, residue mod p^n.
inline BigInt padic_exp_residue(const BigInt& x, long p, long n) {
  const BigInt& mod = ppow(p, n);
  if (mod_pos(x, BigInt(p)) != 0) throw DomainError("padic_exp: argument not divisible by p");
  // x^i / i! has valuation >= i - i/(p-1) > n once i > n(p-1)/(p-2)
  long imax = n * (p - 1) / (p - 2) + 2;
  long extra = 0;
  for (long q = p; q <= imax; q *= p) extra += imax / q;
  const BigInt& wmod = ppow(p, n + extra);
  BigInt acc = 1;
  BigInt xn = 1;
  BigInt fact = 1;
  for (long i = 1; i <= imax; ++i) {
    xn = xn * x % wmod;
    fact *= i;
    long e = ord_p(fact, p);
    BigInt num = xn / ppow(p, e);
    BigInt den = fact / ppow(p, e);
    acc += num * inv_mod(den, mod);
  }
  return mod_pos(acc, mod);
}

inline PadicNum padic_exp(const PadicNum& x) {
  if (x.is_exact_zero()) throw DomainError("padic_exp: exact zero has no finite-precision image");
  long n = x.abs_prec();
  if (x.valuation() < 1) throw DomainError("padic_exp: argument not divisible by p");
  return PadicNum::from_residue(x.p(), padic_exp_residue(x.residue(), x.p(), n), n);
}

/// s = log<a>/log(1+p) as a residue mod p^n, so <a> = (1+p)^s.
inline BigInt s_exponent_residue(const BigInt& a, long p, long n) {
  long w = n + 1;
  const BigInt& wmod = ppow(p, w);
  BigInt am = mod_pos(a, wmod);
  if (am % p == 0) throw DomainError("s_exponent: argument divisible by p");
  BigInt ang = am * inv_mod(teichmuller_residue(am, p, w), wmod) % wmod;
  BigInt la = padic_log_residue(ang, p, w);
  BigInt lp = padic_log_residue(BigInt(1 + p), p, w);
  // both divisible by p; cancel one p
  BigInt q = (la / p) * inv_mod(lp / p, ppow(p, n));
  return mod_pos(q, ppow(p, n));
}

inline PadicNum s_exponent(const BigInt& a, long p, long n) {
  check_prime(p);
  return PadicNum::from_residue(p, s_exponent_residue(a, p, n), n);
}

inline PadicNum s_exponent(const PadicNum& a) {
  if (!a.is_unit()) throw DomainError("s_exponent: argument is not a unit");
  long n = a.rel_prec() - 1;
  if (n <= 0) return PadicNum::zero(a.p(), 0);
  return s_exponent(a.unit(), a.p(), n);
}

/// (1+p)^k - 1 with relative precision n.
inline PadicNum t_coordinate(long k, long p, long n) {
  check_prime(p);
  if (k == 0) return PadicNum::exact_zero(p);
  long v = ord_p(BigInt(k), p) + 1;
  const BigInt& mod = ppow(p, n + v);
  BigInt t = pow_mod(BigInt(1 + p), BigInt(k), mod) - 1;
  return PadicNum::make(p, 0, t, n + v);
}

/// theta = omega^j, optionally twisted by a quadratic character.
struct BranchChar {
  long p = 3;
  long j = 0;
  std::optional<QuadChar> twist;

  BranchChar() = default;
  BranchChar(long p_, long j_, std::optional<QuadChar> tw = std::nullopt)
      : p(p_), j(mod_floor(j_, p_ - 1)), twist(std::move(tw)) {
    check_prime(p);
  }

  PadicNum operator()(long a, long n) const {
    if (mod_floor(a, p) == 0) return PadicNum::exact_zero(p);
    int tw = twist ? (*twist)(a) : 1;
    if (tw == 0) return PadicNum::exact_zero(p);
    BigInt w = teichmuller_residue(BigInt(a), p, n);
    BigInt v = pow_mod(w, BigInt(j), ppow(p, n));
    if (tw < 0) v = -v;
    return PadicNum::make(p, 0, v, n);
  }

  /// Value at -1 as a sign.
  int parity() const {
    int s = (j % 2 == 0) ? 1 : -1;
    if (twist) s *= (*twist)(-1);
    return s;
  }
};

}  // namespace padlfun

#endif
