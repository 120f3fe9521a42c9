#ifndef PADLFUN_IO_HPP
#define PADLFUN_IO_HPP

// JSON encodings. Every document carries "schema": "padlfun/1".

#include <fstream>
#include <string>

#include <json.hpp>

#include "padlfun/tables.hpp"

namespace padlfun::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "padlfun/1";

/// {p, text, exact_zero, abs_prec, valuation, unit, rel_prec}; the unit is
/// known modulo p^rel_prec. An inexact zero carries only abs_prec.
inline json padic_json(const PadicNum& x) {
  json j;
  j["p"] = x.p();
  j["text"] = x.to_string();
  j["exact_zero"] = x.is_exact_zero();
  if (!x.is_exact_zero()) {
    j["abs_prec"] = x.abs_prec();
    if (!x.is_zero()) {
      j["valuation"] = x.valuation();
      j["unit"] = x.unit().get_str();
      j["rel_prec"] = x.rel_prec();
    }
  }
  return j;
}

inline PadicNum padic_from_json(const json& j) {
  long p = j.at("p").get<long>();
  if (j.at("exact_zero").get<bool>()) return PadicNum::exact_zero(p);
  if (!j.contains("valuation")) return PadicNum::zero(p, j.at("abs_prec").get<long>());
  return PadicNum::make(p, j.at("valuation").get<long>(), BigInt(j.at("unit").get<std::string>()),
                        j.at("rel_prec").get<long>());
}

/// {p, N, D, coeffs: [[base-p digits, least significant first], ...]}
inline json series_json(const IwasawaSeries& f) {
  json j;
  j["p"] = f.p();
  j["N"] = f.prec();
  j["D"] = f.cutoff();
  json cs = json::array();
  for (long i = 0; i < f.cutoff(); ++i) {
    json ds = json::array();
    BigInt r = f.residue(i);
    for (long e = 0; e < f.prec(); ++e) {
      BigInt q, d;
      mpz_fdiv_qr_ui(q.get_mpz_t(), d.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(f.p()));
      ds.push_back(d.get_si());
      r = q;
    }
    cs.push_back(ds);
  }
  j["coeffs"] = cs;
  j["text"] = f.to_string();
  return j;
}

inline IwasawaSeries series_from_json(const json& j) {
  long p = j.at("p").get<long>(), n = j.at("N").get<long>();
  std::vector<BigInt> cs;
  for (const auto& ds : j.at("coeffs")) {
    BigInt r = 0, pw = 1;
    for (const auto& d : ds) {
      r += pw * d.get<long>();
      pw *= p;
    }
    cs.push_back(r);
  }
  if (static_cast<long>(cs.size()) != j.at("D").get<long>()) throw ConfigError("series JSON: coefficient count differs from D");
  return IwasawaSeries(p, n, std::move(cs));
}

inline json poly_json(const DistinguishedPoly& P) {
  json j;
  j["degree"] = P.degree();
  j["prec"] = P.prec();
  json cs = json::array();
  for (const auto& a : P.lower()) cs.push_back(a.get_str());
  j["lower"] = cs;
  j["text"] = P.to_string();
  return j;
}

inline json factorization_json(const Factorization& f) {
  json j = json::array();
  for (const auto& [q, e] : f.factors) j.push_back({q.get_str(), e});
  return j;
}

inline json zetap_table_json(long p, long n, const std::vector<ZetapRow>& rows) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "zetap-table";
  j["p"] = p;
  j["prec"] = n;
  json rs = json::array();
  for (const auto& r : rows) {
    rs.push_back({{"two_k", r.two_k},
                  {"value", padic_json(r.value)},
                  {"agree_digits", r.agree_digits},
                  {"lambda", r.lambda}});
  }
  j["rows"] = rs;
  return j;
}

inline json mass_table_json(const std::vector<MassRow>& rows) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "mass-table";
  json rs = json::array();
  for (const auto& r : rows) {
    json row = {{"arg", r.k}, {"mass", to_string(r.mass)}, {"reciprocal", to_string(r.reciprocal)}};
    if (r.denominator_factors) row["denominator_factors"] = factorization_json(*r.denominator_factors);
    if (!r.error.empty()) row["error"] = r.error;
    rs.push_back(row);
  }
  j["rows"] = rs;
  return j;
}

inline std::vector<MassRow> mass_table_from_json(const json& j) {
  if (j.at("schema") != kSchema || j.at("kind") != "mass-table") throw ConfigError("not a mass-table document");
  std::vector<MassRow> rows;
  for (const auto& r : j.at("rows")) {
    MassRow m;
    m.k = r.at("arg").get<long>();
    m.mass = parse_rat(r.at("mass").get<std::string>());
    m.reciprocal = parse_rat(r.at("reciprocal").get<std::string>());
    if (r.contains("denominator_factors")) {
      Factorization f;
      for (const auto& pe : r.at("denominator_factors"))
        f.factors.emplace_back(BigInt(pe.at(0).get<std::string>()), pe.at(1).get<unsigned>());
      m.denominator_factors = f;
    }
    if (r.contains("error")) m.error = r.at("error").get<std::string>();
    rows.push_back(std::move(m));
  }
  return rows;
}

inline json qexpansion_json(const QExpansion& f) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "q-expansion";
  j["cutoff"] = f.cutoff;
  json cs = json::array();
  for (long n = 0; n <= f.cutoff; ++n) cs.push_back(to_string(f.coeff({n})));
  j["coeffs"] = cs;
  return j;
}

/// {"rank": n, "gram": [[...], ...]}
inline Lattice lattice_from_json(const json& j) {
  try {
    auto g = j.at("gram").get<std::vector<std::vector<long>>>();
    if (j.contains("rank") && j.at("rank").get<long>() != static_cast<long>(g.size()))
      throw ConfigError("lattice rank does not match the gram matrix");
    return Lattice::from_gram(std::move(g));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("lattice JSON: ") + e.what());
  }
}

inline Lattice lattice_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lattice file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("lattice JSON: ") + e.what());
  }
  return lattice_from_json(j);
}

}  // namespace padlfun::io

#endif
