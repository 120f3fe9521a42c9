#ifndef PADLFUN_MASS_HPP
#define PADLFUN_MASS_HPP

// Minkowski-Siegel mass constants of even unimodular lattices, the factor
// table of their reciprocals, and theta series of small lattices.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padlfun/eisenstein.hpp"

namespace padlfun {

/// m_k = (-1)^k B_k/(2k) prod_{j<k} B_{2j}/(4j).
inline Rat mass_constant_bernoulli(long k) {
  if (k < 1) throw DomainError("mass_constant: k must be >= 1");
  Rat r = bernoulli(static_cast<unsigned long>(k)) / Rat(2 * k);
  if (k % 2) r = -r;
  for (long j = 1; j < k; ++j) r *= bernoulli(static_cast<unsigned long>(2 * j)) / Rat(4 * j);
  return r;
}

/// m_k = 2^{-k} zeta(1-k) prod_{i<k} zeta(1-2k+2i).
inline Rat mass_constant_zeta(long k) {
  if (k < 1) throw DomainError("mass_constant: k must be >= 1");
  Rat r = rpow(Rat(2), -k) * zeta_neg(static_cast<unsigned long>(k));
  for (long i = 1; i < k; ++i) r *= zeta_neg(static_cast<unsigned long>(2 * k - 2 * i));
  return r;
}

/// Both forms agree for k >= 2; at k = 1 they differ by the sign convention of B_1
/// and the Bernoulli form is returned.
inline Rat mass_constant(long k) {
  Rat b = mass_constant_bernoulli(k);
  if (k >= 2 && b != mass_constant_zeta(k)) throw Error("mass_constant: closed forms disagree");
  return b;
}

struct MassRow {
  long k = 0;  // argument of mass(); the lattice rank is 2k
  Rat mass;
  Rat reciprocal;
  std::optional<Factorization> denominator_factors;
  std::string error;  // set when factorization did not finish
};

inline MassRow mass_row(long k, bool with_factorization) {
  MassRow r;
  r.k = k;
  r.mass = mass_constant(k);
  if (r.mass == 0) throw DomainError("mass_row: mass constant vanishes for odd k > 1");
  r.reciprocal = 1 / r.mass;
  if (with_factorization) {
    try {
      Factorization f = factorize(r.reciprocal.get_den());
      if (f.product() != r.reciprocal.get_den()) throw Error("mass_row: factorization does not reconstruct");
      r.denominator_factors = std::move(f);
    } catch (const FactorizationIncomplete& e) {
      r.error = e.what();
    }
  }
  return r;
}

/// Rows for arguments 2, 4, ..., max_arg.
inline std::vector<MassRow> mass_table(long max_arg, bool with_factorization) {
  if (max_arg > 40) throw DomainError("mass_table: argument limited to 40");
  std::vector<MassRow> rows;
  for (long k = 2; k <= max_arg; k += 2) rows.push_back(mass_row(k, with_factorization));
  return rows;
}

// ---------------------------------------------------------------------------
// p-adic valuation of the regularized p-regular part

struct MassValuation {
  long k = 0;
  long p = 0;
  long c = 0;
  long predicted = 0;      // from Newton polygons of the branch polynomials
  long actual = 0;         // exact rational
  long unregularized = 0;  // ord_p of 2^k / prod zeta(1-k')(1-p^{k'-1}), no c-factors
  bool match = false;
  std::vector<std::pair<long, long>> branch_lambda;  // (j, lambda) for each distinct branch
};

/// 1/m_k = 2^k / (zeta(1-k) prod zeta(1-k')), k' = 2, 4, ..., 2k-2. Each factor is
/// read off the branch j = k'-1 mod (p-1) at t = (1+p)^{k'-1} - 1, where the branch
/// series equals (1 - c^{-k'}) zeta(1-k') (1 - p^{k'-1}); the valuation of its
/// distinguished part comes from the Newton polygon.
inline MassValuation p_regular_mass_valuation(long k, long p, long c = 0, long d = 6, long n = 6) {
  check_prime(p);
  if (p == 2) throw DomainError("p_regular_mass_valuation: p must be odd");
  if (k < 2 || k % 2) throw DomainError("p_regular_mass_valuation: k must be even and >= 2");
  if (c == 0) c = default_regularizer(p);
  MassValuation out;
  out.k = k;
  out.p = p;
  out.c = c;
  std::vector<long> weights{k};
  for (long w = 2; w <= 2 * k - 2; w += 2) weights.push_back(w);
  std::map<long, ZetaBranch> branches;
  long pred = 0, act = 0, unreg = 0;
  for (long w : weights) {
    long j = mod_floor(w - 1, p - 1);
    auto it = branches.find(j);
    if (it == branches.end()) {
      it = branches.emplace(j, iwasawa_series(p, j, c, d, n)).first;
      out.branch_lambda.emplace_back(j, it->second.lambda());
    }
    const ZetaBranch& b = it->second;
    pred += b.prep.mu + (b.prep.P.degree() ? valuation_at_tj(b.prep.P, w - 1) : 0);
    act += ord_p(zeta_node_value(p, c, w - 1), p);
    unreg += ord_p(zeta_neg(static_cast<unsigned long>(w)) * (1 - rpow(Rat(p), w - 1)), p);
  }
  out.predicted = -pred;
  out.actual = -act;
  out.unregularized = -unreg;
  out.match = out.predicted == out.actual;
  return out;
}

// ---------------------------------------------------------------------------
// lattices

struct Lattice {
  long rank = 0;
  std::vector<std::vector<long>> gram;

  static Lattice from_gram(std::vector<std::vector<long>> g) {
    Lattice L;
    L.rank = static_cast<long>(g.size());
    L.gram = std::move(g);
    L.validate();
    return L;
  }

  /// LDL^T over Q; returns the pivots.
  std::vector<Rat> pivots() const {
    std::size_t n = gram.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
    std::vector<Rat> piv;
    for (std::size_t i = 0; i < n; ++i) {
      piv.push_back(a[i][i]);
      if (a[i][i] <= 0) break;
      for (std::size_t r = i + 1; r < n; ++r) {
        Rat f = a[r][i] / a[i][i];
        for (std::size_t s = i; s < n; ++s) a[r][s] -= f * a[i][s];
      }
    }
    return piv;
  }

  void validate() const {
    if (rank < 1 || rank > 8) throw ConfigError("lattice rank must be between 1 and 8");
    for (const auto& row : gram)
      if (static_cast<long>(row.size()) != rank) throw ConfigError("gram matrix is not square");
    for (long i = 0; i < rank; ++i) {
      if (gram[i][i] % 2) throw ConfigError("gram matrix must have even diagonal");
      for (long j = 0; j < rank; ++j)
        if (gram[i][j] != gram[j][i]) throw ConfigError("gram matrix is not symmetric");
    }
    for (const Rat& q : pivots())
      if (q <= 0) throw ConfigError("gram matrix is not positive definite");
  }

  long norm(const std::vector<long>& x) const {
    long s = 0;
    for (long i = 0; i < rank; ++i)
      for (long j = 0; j < rank; ++j) s += x[i] * gram[i][j] * x[j];
    return s;
  }
};

/// Cartan matrix of E8 (Bourbaki labelling).
inline Lattice e8_lattice() {
  std::vector<std::vector<long>> g(8, std::vector<long>(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (const auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
  return Lattice::from_gram(std::move(g));
}

namespace detail {

struct Enumerator {
  const Lattice& L;
  long bound;  // x G x^T <= bound
  std::vector<double> q;
  std::vector<std::vector<double>> mu;  // mu[i][j], j > i
  std::vector<long> x;
  std::vector<long>& counts;

  Enumerator(const Lattice& lat, long b, std::vector<long>& out) : L(lat), bound(b), counts(out) {
    long n = L.rank;
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) a[i][j] = static_cast<double>(L.gram[i][j]);
    q.assign(n, 0);
    mu.assign(n, std::vector<double>(n, 0));
    for (long i = 0; i < n; ++i) {
      q[i] = a[i][i];
      for (long k = 0; k < i; ++k) q[i] -= mu[k][i] * mu[k][i] * q[k];
      for (long j = i + 1; j < n; ++j) {
        double s = a[i][j];
        for (long k = 0; k < i; ++k) s -= mu[k][i] * mu[k][j] * q[k];
        mu[i][j] = s / q[i];
      }
    }
    x.assign(n, 0);
  }

  // Q(x) = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2; fix coordinates from the last one down.
  void run(long i, double remaining) {
    double center = 0;
    for (long j = i + 1; j < L.rank; ++j) center -= mu[i][j] * static_cast<double>(x[j]);
    double r = std::sqrt(std::max(0.0, remaining / q[i])) + 1e-9;
    long lo = static_cast<long>(std::ceil(center - r)), hi = static_cast<long>(std::floor(center + r));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      double d = static_cast<double>(v) - center;
      double rest = remaining - q[i] * d * d;
      if (rest < -1e-6) continue;
      if (i == 0) {
        long nn = L.norm(x);
        if (nn <= bound) ++counts[static_cast<std::size_t>(nn / 2)];
      } else {
        run(i - 1, rest);
      }
    }
    x[i] = 0;
  }
};

}  // namespace detail

/// r_n = #{x : x G x^T = 2n} for n <= cutoff.
inline QExpansion theta_series(const Lattice& L, long cutoff) {
  L.validate();
  if (cutoff < 0 || cutoff > 20) throw DomainError("theta_series: cutoff must be in [0, 20]");
  std::vector<long> counts(static_cast<std::size_t>(cutoff + 1), 0);
  detail::Enumerator en(L, 2 * cutoff, counts);
  en.run(L.rank - 1, static_cast<double>(2 * cutoff) + 1e-6);
  QExpansion f;
  f.m = 1;
  f.cutoff = cutoff;
  for (long n = 0; n <= cutoff; ++n) f.entries[{n}] = Rat(counts[static_cast<std::size_t>(n)]);
  return f;
}

struct MassIdentityReport {
  long cutoff = 0;
  std::vector<Rat> theta;
  std::vector<Rat> eisenstein;
  bool coefficients_equal = false;
  Rat mass;
  BigInt automorphisms = 696729600;  // |W(E8)|
  bool mass_matches = false;
  bool pass = false;
};

/// Single-class rank-8 identity: Theta_L / |Aut| = m_4 E_4.
inline MassIdentityReport mass_identity_rank8(long cutoff, const Lattice& L = e8_lattice()) {
  if (L.rank != 8) throw DomainError("mass_identity_rank8: rank must be 8");
  MassIdentityReport r;
  r.cutoff = cutoff;
  QExpansion th = theta_series(L, cutoff);
  QExpansion e4 = elliptic_eisenstein(4, cutoff);
  r.mass = mass_constant(4);
  r.coefficients_equal = true;
  for (long n = 0; n <= cutoff; ++n) {
    r.theta.push_back(th.coeff({n}));
    r.eisenstein.push_back(e4.coeff({n}));
    if (th.coeff({n}) / Rat(r.automorphisms) != r.mass * e4.coeff({n})) r.coefficients_equal = false;
  }
  r.mass_matches = r.mass * Rat(r.automorphisms) == 1;
  r.pass = r.coefficients_equal && r.mass_matches;
  return r;
}

/// U G U^T for an integer matrix U.
inline Lattice transform(const Lattice& L, const std::vector<std::vector<long>>& U) {
  long n = L.rank;
  std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) g[i][j] += U[i][a] * L.gram[a][b] * U[j][b];
  return Lattice::from_gram(std::move(g));
}

}  // namespace padlfun

#endif
