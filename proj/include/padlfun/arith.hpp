#ifndef PADLFUN_ARITH_HPP
#define PADLFUN_ARITH_HPP

// Exact integer/rational arithmetic on top of GMP, Bernoulli numbers,
// quadratic characters and integer factorization.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padlfun/errors.hpp"

namespace padlfun {

using BigInt = mpz_class;
using Rat = mpq_class;

inline constexpr long kInfiniteValuation = LONG_MAX / 4;

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt ipow(long base, unsigned long e) { return ipow(BigInt(base), e); }

/// x^e for any integer e; x must be nonzero when e < 0.
inline Rat rpow(const Rat& x, long e) {
  if (e >= 0) {
    return make_rat(ipow(x.get_num(), static_cast<unsigned long>(e)),
                    ipow(x.get_den(), static_cast<unsigned long>(e)));
  }
  if (x == 0) throw DomainError("zero to a negative power");
  auto m = static_cast<unsigned long>(-e);
  return make_rat(ipow(x.get_den(), m), ipow(x.get_num(), m));
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Number of times p divides n; kInfiniteValuation for n == 0.
inline long ord_p(const BigInt& n, long p) {
  if (n == 0) return kInfiniteValuation;
  BigInt pp(p);
  BigInt rest;
  return static_cast<long>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

inline long ord_p(const Rat& x, long p) {
  if (x == 0) return kInfiniteValuation;
  return ord_p(x.get_num(), p) - ord_p(x.get_den(), p);
}

inline long ord_p(long n, long p) { return ord_p(BigInt(n), p); }

inline std::string to_string(const BigInt& n) { return n.get_str(); }

inline std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + s + "'");
  }
}

inline long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long primitive_root(long p) {
  if (!is_small_prime(p)) throw DomainError("primitive_root: modulus not prime");
  if (p == 2) return 1;
  std::vector<long> qs;
  long m = p - 1;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) qs.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : qs) {
      BigInt r;
      BigInt gg(g), pp(p);
      mpz_powm_ui(r.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>((p - 1) / q),
                  pp.get_mpz_t());
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("primitive_root: none found");
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace detail {

// B_0, B_2, ..., B_{2m} from the tangent numbers T_1..T_m:
// B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1)).
inline std::vector<Rat> even_bernoulli_via_tangent(std::size_t m) {
  std::vector<BigInt> t(m + 1);
  if (m >= 1) t[1] = 1;
  for (std::size_t k = 2; k <= m; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= m; ++k)
    for (std::size_t j = k; j <= m; ++j)
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) +
             t[j] * static_cast<unsigned long>(j - k + 2);
  std::vector<Rat> out(m + 1);
  out[0] = 1;
  for (std::size_t n = 1; n <= m; ++n) {
    BigInt four_n = ipow(4, n);
    BigInt num = t[n] * static_cast<unsigned long>(2 * n);
    if (n % 2 == 0) num = -num;
    out[n] = make_rat(num, four_n * (four_n - 1));
  }
  return out;
}

// Single B_n, n even, from |B_n| = 2 n! zeta(n) / (2 pi)^n with the
// denominator prod_{(q-1) | n} q supplied by von Staudt-Clausen; the float
// work carries enough bits that rounding the numerator is exact.
// Only for large n, where few Euler factors are needed.
inline Rat bernoulli_by_zeta(unsigned long n) {
  if (n < 100 || n % 2) throw DomainError("bernoulli_by_zeta: n must be even and >= 100");
  BigInt den = 1;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    for (unsigned long e : {d, n / d}) {
      if (is_small_prime(static_cast<long>(e + 1))) den *= static_cast<unsigned long>(e + 1);
      if (e == n / d && e == d) break;
    }
  }
  const double ln2 = std::log(2.0);
  double nd = static_cast<double>(n);
  double bits = std::lgamma(nd + 1) / ln2 - nd * std::log2(2 * std::acos(-1.0)) + std::log2(den.get_d()) + 2;
  auto prec = static_cast<mp_bitcnt_t>(std::max(bits, 0.0) + 2 * std::log2(nd) + 96);

  // Gauss-Legendre for pi
  mpf_class a(1, prec), b(0, prec), t(0.25, prec), p(1, prec), two(2, prec);
  b = 1 / sqrt(two);
  mpf_class eps(1, prec);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec);
  while (true) {
    mpf_class an = (a + b) / 2;
    b = sqrt(a * b);
    t -= p * (a - an) * (a - an);
    p *= 2;
    a = an;
    if (abs(a - b) < eps) break;
  }
  mpf_class pi = (a + b) * (a + b) / (4 * t);

  // 1/zeta(n) as an Euler product, stopped once q^{-n} is below the working precision
  mpf_class inv_zeta(1, prec);
  for (unsigned long q = 2; nd * std::log2(static_cast<double>(q)) <= static_cast<double>(prec) + 8; ++q) {
    if (!is_small_prime(static_cast<long>(q))) continue;
    mpf_class qn(q, prec);
    mpf_pow_ui(qn.get_mpf_t(), qn.get_mpf_t(), n);
    inv_zeta -= inv_zeta / qn;
  }
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  mpf_class two_pi_n(2 * pi, prec);
  mpf_pow_ui(two_pi_n.get_mpf_t(), two_pi_n.get_mpf_t(), n);
  mpf_class num(2 * fact * den, prec);
  num /= two_pi_n * inv_zeta;
  num += 0.5;
  BigInt rounded(floor(num));
  if ((n / 2) % 2 == 0) rounded = -rounded;
  return make_rat(rounded, den);
}

}  // namespace detail

/// Process-wide memo of B_n (convention B_1 = -1/2). Reads are shared,
/// growth takes the exclusive lock.
class BernoulliTable {
 public:
  static BernoulliTable& instance() {
    static BernoulliTable table;
    return table;
  }

  Rat get(unsigned long n) {
    if (n == 1) return Rat(-1, 2);
    if (n % 2 == 1) return Rat(0);
    std::size_t idx = n / 2;
    {
      std::shared_lock lock(mu_);
      if (idx < even_.size()) return even_[idx];
    }
    std::unique_lock lock(mu_);
    // far past the table: the full recurrence is quadratic, a single value is cheap
    if (idx >= even_.size() && idx > kTableLimit) {
      auto it = sparse_.find(n);
      if (it == sparse_.end()) it = sparse_.emplace(n, detail::bernoulli_by_zeta(n)).first;
      return it->second;
    }
    if (idx >= even_.size()) {
      std::size_t target = std::max<std::size_t>(idx, std::min<std::size_t>(2 * even_.size(), kTableLimit));
      even_ = detail::even_bernoulli_via_tangent(std::max<std::size_t>(target, 8));
      dirty_ = true;
    }
    return even_[idx];
  }

  std::size_t max_cached_index() const {
    std::shared_lock lock(mu_);
    return even_.empty() ? 0 : 2 * (even_.size() - 1);
  }

  /// Loads `n num/den` lines. Entries must form a contiguous even prefix
  /// to be adopted; anything else is ignored.
  bool load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) return false;
    std::vector<Rat> loaded;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      unsigned long n;
      std::string value;
      if (!(ls >> n >> value)) continue;
      if (n % 2 == 1) continue;
      if (n / 2 != loaded.size()) break;
      loaded.push_back(parse_rat(value));
    }
    std::unique_lock lock(mu_);
    if (loaded.size() > even_.size()) {
      even_ = std::move(loaded);
      dirty_ = false;
    }
    return true;
  }

  void save(const std::filesystem::path& file) {
    std::shared_lock lock(mu_);
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    out << "0 1\n1 -1/2\n";
    for (std::size_t i = 1; i < even_.size(); ++i)
      out << 2 * i << ' ' << to_string(even_[i]) << '\n';
    dirty_ = false;
  }

  bool dirty() const {
    std::shared_lock lock(mu_);
    return dirty_;
  }

 private:
  static constexpr std::size_t kTableLimit = 400;
  BernoulliTable() = default;
  mutable std::shared_mutex mu_;
  std::vector<Rat> even_;
  std::map<unsigned long, Rat> sparse_;
  bool dirty_ = false;
};

inline std::filesystem::path cache_directory() {
  if (const char* env = std::getenv("PADL_CACHE_DIR"); env && *env) return env;
  return ".padlfun-cache";
}

inline std::filesystem::path bernoulli_cache_file() {
  return cache_directory() / "bernoulli.txt";
}

inline Rat bernoulli(unsigned long n) { return BernoulliTable::instance().get(n); }

inline Rat bernoulli_poly(unsigned long n, const Rat& x) {
  Rat acc = 0;
  Rat xp = 1;  // x^{n-j}, built from j = n downwards
  for (unsigned long j = n + 1; j-- > 0;) {
    if (j != n) xp *= x;
    Rat b = bernoulli(j);
    if (b != 0) acc += Rat(binomial(n, j)) * b * xp;
  }
  return acc;
}

/// zeta(1 - k) for k >= 1.
inline Rat zeta_neg(unsigned long k) {
  if (k == 0) throw DomainError("zeta_neg: k must be >= 1");
  if (k == 1) return Rat(-1, 2);
  return -bernoulli(k) / Rat(static_cast<long>(k));
}

// ---------------------------------------------------------------------------
// Quadratic characters

inline int kronecker(const BigInt& d, const BigInt& n) {
  return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(long d, long n) { return kronecker(BigInt(d), BigInt(n)); }

/// Character n -> (D0/n) attached to a discriminant D = D0 f^2.
struct QuadChar {
  long long disc = 1;
  long long fundamental = 1;  // D0
  long long square_part = 1;  // f
  long long conductor = 1;    // |D0|

  static QuadChar from_discriminant(long long d) {
    if (d == 0) throw DomainError("QuadChar: zero discriminant");
    long long m = mod_floor(static_cast<long>(d % 4), 4);
    if (m != 0 && m != 1) throw DomainError("QuadChar: discriminant not 0 or 1 mod 4");
    long long a = d < 0 ? -d : d;
    long long core = 1, sq = 1;
    for (long long q = 2; q * q <= a; ++q) {
      int e = 0;
      while (a % q == 0) {
        a /= q;
        ++e;
      }
      for (int i = 0; i < e / 2; ++i) sq *= q;
      if (e % 2) core *= q;
    }
    core *= a;
    long long signed_core = d < 0 ? -core : core;
    QuadChar c;
    c.disc = d;
    if (mod_floor(static_cast<long>(signed_core % 4), 4) == 1) {
      c.fundamental = signed_core;
      c.square_part = sq;
    } else {
      // d = core * sq^2 with core = 2,3 mod 4 forces sq even.
      c.fundamental = 4 * signed_core;
      c.square_part = sq / 2;
    }
    c.conductor = c.fundamental < 0 ? -c.fundamental : c.fundamental;
    return c;
  }

  int operator()(long long n) const {
    return kronecker(BigInt(static_cast<long>(fundamental)), BigInt(static_cast<long>(n)));
  }

  bool trivial() const { return fundamental == 1; }
};

/// B_{k,chi} = C^{k-1} sum_{a=1}^{C} chi(a) B_k(a/C), so L(1-k, chi) = -B_{k,chi}/k.
inline Rat gen_bernoulli_quad(unsigned long k, const QuadChar& chi) {
  long long c = chi.conductor;
  Rat acc = 0;
  for (long long a = 1; a <= c; ++a) {
    int v = chi(a);
    if (v == 0) continue;
    Rat b = bernoulli_poly(k, make_rat(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(c))));
    acc += v > 0 ? b : Rat(-b);
  }
  return acc * Rat(ipow(BigInt(static_cast<long>(c)), k - 1));
}

/// L(1-k, chi) for a quadratic character.
inline Rat quad_l_value_neg(unsigned long k, const QuadChar& chi) {
  if (chi.trivial()) return zeta_neg(k);
  return -gen_bernoulli_quad(k, chi) / Rat(static_cast<long>(k));
}

// ---------------------------------------------------------------------------
// Factorization

struct Factorization {
  int sign = 1;
  std::vector<std::pair<BigInt, unsigned>> factors;
  bool certified = true;  // every prime passed a deterministic test

  BigInt product() const {
    BigInt r = sign;
    for (const auto& [q, e] : factors) r *= ipow(q, e);
    return r;
  }

  /// PARI matrix layout, e.g. "[691, 1; 3617, 1]"; the empty factorization prints "1".
  std::string pari_string() const {
    if (factors.empty()) return "1";
    std::string s = "[";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += "; ";
      s += factors[i].first.get_str() + ", " + std::to_string(factors[i].second);
    }
    return s + "]";
  }
};

namespace detail {

inline const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    constexpr unsigned kLimit = 1000000;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned s, const BigInt& a) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  BigInt nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

// Deterministic below 3.317e24 with the first 13 prime bases.
inline const BigInt& deterministic_mr_bound() {
  static const BigInt bound("3317044064679887385961981");
  return bound;
}

}  // namespace detail

/// Miller-Rabin; returns {probably prime, certified}.
inline std::pair<bool, bool> miller_rabin(const BigInt& n) {
  if (n < 2) return {false, true};
  for (unsigned q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    if (n == q) return {true, true};
    if (n % q == 0) return {false, true};
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u})
    if (!detail::miller_rabin_round(n, d, s, BigInt(a))) return {false, true};
  if (n < detail::deterministic_mr_bound()) return {true, true};
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  for (int i = 0; i < 24; ++i) {
    BigInt a = rng.get_z_range(n - 3) + 2;
    if (!detail::miller_rabin_round(n, d, s, a)) return {false, true};
  }
  return {true, false};
}

inline bool is_probable_prime(const BigInt& n) { return miller_rabin(n).first; }

/// Brent's cycle variant of Pollard rho. Returns a nontrivial factor or 0
/// when the iteration budget runs out.
inline BigInt pollard_brent(const BigInt& n, std::uint64_t budget = std::uint64_t(1) << 31) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::uint64_t spent = 0;
  for (unsigned long c = 1; c < 64; ++c) {
    BigInt y = 2 + c, x, ys, q = 1, g = 1;
    const std::uint64_t m = 256;
    std::uint64_t r = 1;
    auto f = [&](const BigInt& v) {
      BigInt w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          BigInt diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
        spent += lim;
      } while (k < r && g == 1);
      r *= 2;
      if (spent > budget) return 0;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

/// Complete factorization: trial division to 10^6, then Pollard-Brent rho
/// with Miller-Rabin certificates. Throws FactorizationIncomplete instead
/// of returning an unfactored composite.
inline Factorization factorize(BigInt n) {
  Factorization out;
  if (n == 0) throw DomainError("factorize: zero");
  if (n < 0) {
    out.sign = -1;
    n = -n;
  }
  std::vector<std::pair<BigInt, unsigned>> found;
  for (unsigned q : detail::small_primes()) {
    if (n == 1) break;
    if (BigInt(q) * q > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
        ++e;
      }
      found.emplace_back(BigInt(q), e);
    }
  }
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  std::vector<BigInt> primes;
  while (!stack.empty()) {
    BigInt m = stack.back();
    stack.pop_back();
    auto [prime, certified] = miller_rabin(m);
    if (prime) {
      primes.push_back(m);
      out.certified = out.certified && certified;
      continue;
    }
    BigInt d = pollard_brent(m);
    if (d == 0 || d == 1 || d == m)
      throw FactorizationIncomplete("unfactored composite cofactor " + m.get_str());
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    found.emplace_back(primes[i], static_cast<unsigned>(j - i));
    i = j;
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.factors = std::move(found);
  return out;
}

/// sum of d^e over divisors d of n, skipping d divisible by omit_p when given.
inline BigInt divisor_power_sum(unsigned long e, unsigned long n,
                                std::optional<long> omit_p = std::nullopt) {
  if (n == 0) throw DomainError("divisor_power_sum: n must be positive");
  BigInt acc = 0;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned long other = n / d;
    if (!omit_p || d % *omit_p) acc += ipow(BigInt(d), e);
    if (other != d && (!omit_p || other % *omit_p)) acc += ipow(BigInt(other), e);
  }
  return acc;
}

}  // namespace padlfun

#endif
