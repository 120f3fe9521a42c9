#ifndef PADLFUN_TABLES_HPP
#define PADLFUN_TABLES_HPP

// Table builders shared by the command-line tool and the tests.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "padlfun/mass.hpp"

namespace padlfun {

struct ZetapRow {
  long two_k = 0;
  PadicNum value;    // exact route
  PadicNum route_b;  // through the prepared branch
  long agree_digits = 0;
  long lambda = 0;
};

/// 1/(zeta(1-k)(1-p^{k-1})) for k = 2, 4, ..., max_2k, n relative digits each.
/// Each row is recomputed through its branch; a disagreement throws.
inline std::vector<ZetapRow> zetap_table(long p, long n, long max_2k, long c = 0, long d = 16, long nb = 12) {
  check_prime(p);
  if (p == 2) throw DomainError("zetap_table: p must be odd");
  if (n < 1) throw DomainError("zetap_table: precision must be positive");
  if (c == 0) c = default_regularizer(p);
  std::map<long, ZetaBranch> branches;
  std::vector<ZetapRow> rows;
  for (long k = 2; k <= max_2k; k += 2) {
    long j = mod_floor(k - 1, p - 1);
    auto it = branches.find(j);
    if (it == branches.end()) it = branches.emplace(j, iwasawa_series(p, j, c, d, nb)).first;
    ReciprocalZeta r = reciprocal_zeta_routes(p, k, n, it->second);
    rows.push_back({k, r.route_a, r.route_b, r.agree_digits, r.lambda});
  }
  return rows;
}

inline std::string format_zetap_table(const std::vector<ZetapRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) out << r.two_k << '\t' << r.value.to_string() << '\n';
  return out.str();
}

inline std::string format_mass_table(const std::vector<MassRow>& rows, bool factor, bool csv) {
  std::ostringstream out;
  if (csv) out << (factor ? "arg,prime,exponent\n" : "arg,mass,reciprocal\n");
  for (const auto& r : rows) {
    if (!factor) {
      if (csv)
        out << r.k << ',' << to_string(r.mass) << ',' << to_string(r.reciprocal) << '\n';
      else
        out << r.k << '\t' << to_string(r.mass) << '\n';
      continue;
    }
    if (!r.denominator_factors) {
      out << r.k << (csv ? ",error," : "\terror: ") << r.error << '\n';
      continue;
    }
    if (csv) {
      for (const auto& [q, e] : r.denominator_factors->factors) out << r.k << ',' << q.get_str() << ',' << e << '\n';
    } else {
      out << r.k << '\t' << r.denominator_factors->pari_string() << '\n';
    }
  }
  return out.str();
}

}  // namespace padlfun

#endif
