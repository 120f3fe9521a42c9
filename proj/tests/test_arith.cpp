#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "padlfun/arith.hpp"
#include "padlfun/padic.hpp"

using namespace padlfun;

namespace {

// B_n from sum_{j<=n} C(n+1, j) B_j = 0, independent of the library's tangent-number route.
std::vector<Rat> bernoulli_by_recurrence(unsigned n) {
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rat s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * b[j];
    b[m] = -s / Rat(static_cast<long>(m + 1));
  }
  return b;
}

// Reduced binary quadratic forms of discriminant d < 0.
long class_number(long d) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -d; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

int legendre_euler(long d, long q) {
  long r = ((d % q) + q) % q;
  if (r == 0) return 0;
  BigInt v = pow_mod(BigInt(r), BigInt((q - 1) / 2), BigInt(q));
  return v == 1 ? 1 : -1;
}

int kronecker_brute(long d, long n) {
  if (n == 0) return std::labs(d) == 1 ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) sign = -1;
  }
  int acc = sign;
  for (long q = 2; n > 1; ++q) {
    while (n % q == 0) {
      n /= q;
      if (q == 2) {
        if (d % 2 == 0) return 0;
        long r = ((d % 8) + 8) % 8;
        acc *= (r == 1 || r == 7) ? 1 : -1;
      } else {
        acc *= legendre_euler(d, q);
      }
    }
  }
  return acc;
}

bool is_prime_trial(const BigInt& n) {
  if (n < 2) return false;
  for (BigInt d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(Bernoulli, SmallValues) {
  EXPECT_EQ(bernoulli(0), Rat(1));
  EXPECT_EQ(bernoulli(1), Rat(-1, 2));
  EXPECT_EQ(bernoulli(12), Rat(-691, 2730));
  EXPECT_EQ(bernoulli(3), Rat(0));
}

TEST(Bernoulli, MatchesRecurrenceOracle) {
  auto oracle = bernoulli_by_recurrence(80);
  for (unsigned n = 0; n <= 80; ++n) EXPECT_EQ(bernoulli(n), oracle[n]) << "n=" << n;
}

TEST(Bernoulli, VonStaudtClausen) {
  for (unsigned n = 2; n <= 60; n += 2) {
    BigInt prod = 1;
    for (long q = 2; q <= static_cast<long>(n) + 1; ++q)
      if (is_small_prime(q) && n % (q - 1) == 0) prod *= q;
    EXPECT_EQ(bernoulli(n).get_den(), prod) << "n=" << n;
  }
}

TEST(Bernoulli, LargeIndexRouteMatchesRecurrence) {
  auto tangent = detail::even_bernoulli_via_tangent(700);
  for (unsigned long n = 100; n <= 1400; n += 2) EXPECT_EQ(detail::bernoulli_by_zeta(n), tangent[n / 2]) << "n=" << n;
  EXPECT_THROW(detail::bernoulli_by_zeta(98), DomainError);
  EXPECT_THROW(detail::bernoulli_by_zeta(101), DomainError);
  // far beyond the table the memo answers from the single-value route
  Rat b = bernoulli(9000);
  BigInt prod = 1;
  for (long q = 2; q <= 9001; ++q)
    if (9000 % (q - 1) == 0 && is_small_prime(q)) prod *= q;
  EXPECT_EQ(b.get_den(), prod);
  EXPECT_LT(b, 0);
}

TEST(Bernoulli, PolynomialValues) {
  EXPECT_EQ(bernoulli_poly(1, Rat(1, 2)), Rat(0));
  EXPECT_EQ(bernoulli_poly(1, Rat(2, 5)), Rat(-1, 10));
  EXPECT_EQ(bernoulli_poly(2, Rat(0)), Rat(1, 6));
}

TEST(Bernoulli, PolynomialDifferenceProperty) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (int trial = 0; trial < 20; ++trial) {
    Rat x = make_rat(BigInt(num(rng)), BigInt(den(rng)));
    for (unsigned n = 1; n <= 10; ++n)
      EXPECT_EQ(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x), Rat(static_cast<long>(n)) * rpow(x, n - 1));
  }
}

TEST(Bernoulli, CacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "padlfun-arith-cache";
  std::filesystem::remove_all(dir);
  auto file = dir / "bernoulli.txt";
  bernoulli(40);
  BernoulliTable::instance().save(file);
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "0 1");
  std::getline(in, line);
  EXPECT_EQ(line, "1 -1/2");
  std::getline(in, line);
  EXPECT_EQ(line, "2 1/6");
  EXPECT_TRUE(BernoulliTable::instance().load(file));
  EXPECT_EQ(bernoulli(12), Rat(-691, 2730));
  std::filesystem::remove_all(dir);
}

TEST(Zeta, NegativeIntegers) {
  EXPECT_EQ(zeta_neg(2), Rat(-1, 12));
  EXPECT_EQ(zeta_neg(4), Rat(1, 120));
  EXPECT_EQ(zeta_neg(3), Rat(0));
  EXPECT_EQ(zeta_neg(1), Rat(-1, 2));
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(-23, 1), 1);
  EXPECT_EQ(kronecker(5, 5), 0);
}

TEST(Kronecker, AgreesWithBruteForce) {
  for (long d = -50; d <= 50; ++d) {
    if (d == 0) continue;
    for (long n = -50; n <= 50; ++n) {
      if (n == 0) continue;
      EXPECT_EQ(kronecker(d, n), kronecker_brute(d, n)) << "(" << d << "/" << n << ")";
    }
  }
}

TEST(QuadChar, Decomposition) {
  auto c = QuadChar::from_discriminant(-16);
  EXPECT_EQ(c.fundamental, -4);
  EXPECT_EQ(c.square_part, 2);
  EXPECT_EQ(c.conductor, 4);
  auto t = QuadChar::from_discriminant(4);
  EXPECT_TRUE(t.trivial());
  EXPECT_EQ(t.square_part, 2);
  auto e = QuadChar::from_discriminant(-12);
  EXPECT_EQ(e.fundamental, -3);
  EXPECT_EQ(e.square_part, 2);
  EXPECT_THROW(QuadChar::from_discriminant(-5), DomainError);
  for (long d : {-3L, -4L, -7L, -8L, -15L, -20L, -23L, -84L, 5L, 8L, 12L, 13L}) {
    auto q = QuadChar::from_discriminant(d);
    EXPECT_EQ(q.fundamental * q.square_part * q.square_part, d);
    long long f = q.fundamental;
    EXPECT_TRUE(((f % 4) + 4) % 4 == 0 || ((f % 4) + 4) % 4 == 1);
  }
}

TEST(GeneralizedBernoulli, ClassNumberOracle) {
  EXPECT_EQ(gen_bernoulli_quad(1, QuadChar::from_discriminant(-4)), Rat(-1, 2));
  for (long d : {-3L, -4L, -7L, -8L, -11L, -15L, -20L, -23L, -24L, -31L, -47L, -71L}) {
    long w = d == -3 ? 6 : (d == -4 ? 4 : 2);
    Rat l0 = quad_l_value_neg(1, QuadChar::from_discriminant(d));
    EXPECT_EQ(l0, make_rat(BigInt(2 * class_number(d)), BigInt(w))) << "D=" << d;
  }
}

TEST(GeneralizedBernoulli, ExpandedSumOracle) {
  // B_{n,chi} = sum_a chi(a) sum_j C(n,j) B_j C^{j-1} a^{n-j}
  for (long d : {-3L, -4L, 5L, -7L, 8L, 12L}) {
    auto chi = QuadChar::from_discriminant(d);
    long c = chi.conductor;
    for (unsigned n = 1; n <= 8; ++n) {
      Rat acc = 0;
      for (long a = 1; a <= c; ++a)
        for (unsigned j = 0; j <= n; ++j)
          acc += Rat(chi(a)) * Rat(binomial(n, j)) * bernoulli(j) * rpow(Rat(c), static_cast<long>(j) - 1) *
                 rpow(Rat(a), static_cast<long>(n - j));
      EXPECT_EQ(gen_bernoulli_quad(n, chi), acc) << "D=" << d << " n=" << n;
    }
  }
  // parity: chi_{-3} is odd, so B_{2,chi} = 0
  EXPECT_EQ(gen_bernoulli_quad(2, QuadChar::from_discriminant(-3)), Rat(0));
  EXPECT_EQ(quad_l_value_neg(4, QuadChar{}), zeta_neg(4));
}

TEST(Factorize, Examples) {
  auto f = factorize(BigInt(696729600));
  ASSERT_EQ(f.factors.size(), 4u);
  EXPECT_EQ(f.pari_string(), "[2, 14; 3, 5; 5, 2; 7, 1]");
  EXPECT_EQ(factorize(BigInt(691)).pari_string(), "[691, 1]");
  EXPECT_TRUE(factorize(BigInt(1)).factors.empty());
  EXPECT_EQ(factorize(BigInt(1)).pari_string(), "1");
}

TEST(Factorize, LargeSemiprime) {
  BigInt a("26315271553053477373"), b("154210205991661");
  auto f = factorize(a * b);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, b);
  EXPECT_EQ(f.factors[1].first, a);
  EXPECT_TRUE(f.certified);
}

TEST(Factorize, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    BigInt n = BigInt(static_cast<unsigned long>(rng() % 1000000000ULL + 1));
    auto f = factorize(n);
    EXPECT_EQ(f.product(), n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      EXPECT_TRUE(is_prime_trial(f.factors[i].first));
      EXPECT_GE(f.factors[i].second, 1u);
      if (i) {
        EXPECT_LT(f.factors[i - 1].first, f.factors[i].first);
      }
    }
  }
}

TEST(Factorize, MillerRabinAgreesWithTrialDivision) {
  for (long n = 2; n < 5000; ++n) EXPECT_EQ(is_probable_prime(BigInt(n)), is_prime_trial(BigInt(n))) << n;
  // strong pseudoprime to several small bases
  EXPECT_FALSE(is_probable_prime(BigInt("3215031751")));
}

TEST(DivisorPowerSum, Examples) {
  EXPECT_EQ(divisor_power_sum(3, 6), BigInt(252));
  EXPECT_EQ(divisor_power_sum(0, 1), BigInt(1));
  EXPECT_EQ(divisor_power_sum(3, 10, 5), BigInt(9));
  for (unsigned long n = 1; n <= 200; ++n) {
    BigInt brute = 0;
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) brute += ipow(BigInt(d), 5);
    EXPECT_EQ(divisor_power_sum(5, n), brute);
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rat("-691/2730")), "-691/2730");
  EXPECT_EQ(parse_rat("6/4"), Rat(3, 2));
  EXPECT_EQ(to_string(Rat(5)), "5");
  EXPECT_EQ(ord_p(Rat(50, 3), 5), 2);
  EXPECT_EQ(ord_p(Rat(3, 50), 5), -2);
}
