// padlfun: batch front end for the p-adic L-function and mass-formula library.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padlfun/io.hpp"
#include "padlfun/padlfun.hpp"

using namespace padlfun;
using io::json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kPole = 3, kPrecision = 4, kFactorization = 5 };

enum class Format { plain, json, csv };

struct Globals {
  bool json = false;
  bool csv = false;
  std::string cache_dir;

  Format format() const {
    if (json && csv) throw ConfigError("--json and --csv are mutually exclusive");
    return json ? Format::json : (csv ? Format::csv : Format::plain);
  }
};

void ledger(const std::string& subject, long digits) {
  std::cerr << "# precision " << subject << ": N'=" << digits << '\n';
}

void ledger(const std::vector<PrecisionNote>& notes, const std::string& prefix) {
  for (const auto& n : notes) ledger(prefix + n.what, n.digits);
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw ConfigError("bad integer list: " + s);
    } catch (const std::logic_error&) {
      throw ConfigError("bad integer list: " + s);
    }
  }
  return out;
}

SeriesMethod parse_method(const std::string& m) {
  if (m == "interp" || m == "interpolation") return SeriesMethod::interpolation;
  if (m == "riemann") return SeriesMethod::riemann;
  throw ConfigError("unknown method " + m + " (expected interp or riemann)");
}

// ---------------------------------------------------------------------------

struct ZetapArgs {
  long p = 37;
  long prec = 5;
  long max = 36;
  long c = 0;
  long coeffs = 16;
  long branch_prec = 12;
  bool paper = false;
};

int cmd_zetap_table(const Globals& g, ZetapArgs a) {
  if (a.paper) {
    a.p = 37;
    a.prec = 5;
    a.max = 36;
    a.c = 0;
    a.coeffs = 16;
    a.branch_prec = 12;
  }
  auto rows = zetap_table(a.p, a.prec, a.max, a.c, a.coeffs, a.branch_prec);
  for (const auto& r : rows)
    ledger("2k=" + std::to_string(r.two_k) + " route agreement (lambda=" + std::to_string(r.lambda) + ")",
           r.agree_digits);
  switch (g.format()) {
    case Format::json:
      std::cout << io::zetap_table_json(a.p, a.prec, rows).dump(2) << '\n';
      break;
    case Format::csv:
      std::cout << "two_k,value,agree_digits,lambda\n";
      for (const auto& r : rows)
        std::cout << r.two_k << ",\"" << r.value.to_string() << "\"," << r.agree_digits << ',' << r.lambda << '\n';
      break;
    case Format::plain:
      std::cout << format_zetap_table(rows);
  }
  return kOk;
}

struct MassArgs {
  long rank = 0;
  long k = 0;
};

int cmd_mass(const Globals& g, const MassArgs& a) {
  if ((a.rank == 0) == (a.k == 0)) throw ConfigError("give exactly one of --rank or --k");
  long k = a.k;
  if (a.rank) {
    if (a.rank % 2) throw ConfigError("--rank must be even");
    k = a.rank / 2;
  }
  Rat m = mass_constant(k);
  if (g.format() == Format::json) {
    std::cout << json{{"schema", io::kSchema}, {"kind", "mass"}, {"k", k}, {"mass", to_string(m)}}.dump(2) << '\n';
  } else {
    std::cout << to_string(m) << '\n';
  }
  return kOk;
}

struct MassTableArgs {
  long max = 20;
  bool factor = false;
  bool paper = false;
};

int cmd_mass_table(const Globals& g, MassTableArgs a) {
  if (a.paper) {
    a.max = 20;
    a.factor = true;
  }
  auto rows = mass_table(a.max, a.factor);
  switch (g.format()) {
    case Format::json:
      std::cout << io::mass_table_json(rows).dump(2) << '\n';
      break;
    case Format::csv:
      std::cout << format_mass_table(rows, a.factor, true);
      break;
    case Format::plain:
      std::cout << format_mass_table(rows, a.factor, false);
  }
  for (const auto& r : rows)
    if (!r.error.empty()) {
      std::cerr << "factorization incomplete for mass(" << r.k << "): " << r.error << '\n';
      return kFactorization;
    }
  return kOk;
}

struct IwasawaArgs {
  long p = 5;
  long branch = 1;
  long c = 0;
  long coeffs = 16;
  long prec = 12;
  std::string method = "interp";
};

int cmd_iwasawa(const Globals& g, const IwasawaArgs& a) {
  long c = a.c ? a.c : default_regularizer(a.p);
  ZetaBranch b = iwasawa_series(a.p, a.branch, c, a.coeffs, a.prec, parse_method(a.method));
  ledger(b.ledger, "branch " + std::to_string(b.j) + ": ");
  ledger("series G", b.G.prec());
  if (g.format() == Format::json) {
    json j{{"schema", io::kSchema},
           {"kind", "iwasawa"},
           {"p", b.p},
           {"branch", b.j},
           {"c", b.c},
           {"method", to_string(b.method)},
           {"vanishing", b.vanishing},
           {"G", io::series_json(b.G)}};
    if (!b.vanishing) {
      j["lambda"] = b.lambda();
      j["mu"] = b.mu();
      j["P"] = io::poly_json(b.prep.P);
      j["U"] = io::series_json(b.prep.U);
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "p = " << b.p << ", branch omega^" << b.j << ", c = " << b.c << ", method = " << to_string(b.method)
            << '\n';
  std::cout << "G = " << b.G.to_string() << '\n';
  if (b.vanishing) {
    std::cout << "branch vanishes identically\n";
    return kOk;
  }
  std::cout << "mu = " << b.mu() << "\nlambda = " << b.lambda() << '\n';
  std::cout << "P = " << b.prep.P.to_string() << '\n';
  std::cout << "U = " << b.prep.U.to_string() << '\n';
  return kOk;
}

struct FamilyArgs {
  long p = 5;
  long m = 1;
  std::string h = "1";
  long ch = 0;
  long coeffs = 16;
  long prec = 12;
  long branch = -1;
  long count = 3;
  bool audit = false;
};

int cmd_family(const Globals& g, const FamilyArgs& a) {
  std::vector<long> idx = parse_longs(a.h);
  HalfIntMatrix h;
  if (a.m == 1) {
    if (idx.size() != 1) throw ConfigError("--h takes one integer for m = 1");
    h = HalfIntMatrix::genus1(idx[0]);
  } else if (a.m == 2) {
    if (idx.size() != 3) throw ConfigError("--h takes a,b,c for m = 2");
    h = HalfIntMatrix::genus2(idx[0], idx[1], idx[2]);
  } else {
    throw ConfigError("--m must be 1 or 2");
  }
  check_prime(a.p);
  if (a.p == 2) throw ConfigError("--p must be odd");
  std::vector<long> branches;
  if (a.branch >= 0) {
    branches.push_back(a.branch);
  } else {
    for (long k0 = 0; k0 < a.p - 1; k0 += 2) branches.push_back(k0);
  }
  FamilyOptions opt;
  opt.D = a.coeffs;
  opt.N = a.prec;
  opt.c = a.ch;
  bool all_match = true;
  json out{{"schema", io::kSchema}, {"kind", "family"}, {"p", a.p}, {"m", a.m}, {"h", idx}};
  json fams = json::array();
  for (long k0 : branches) {
    CoeffFamily fam = build_family(h, a.p, k0, opt);
    ledger(fam.ledger, "family k0=" + std::to_string(fam.k0) + ": ");
    json jf{{"k0", fam.k0},
            {"c", fam.c},
            {"p_power", fam.p_power},
            {"S", io::series_json(fam.S)},
            {"P", io::poly_json(fam.P)}};
    if (g.format() == Format::plain) {
      std::cout << "family p=" << a.p << " m=" << a.m << " h=" << h.to_string() << " k=" << fam.k0 << " mod "
                << a.p - 1 << " c=" << fam.c << '\n';
      if (a.audit)
        for (const auto& [name, text] : fam.audit)
          if (name != "S^E" && name != "P^E") std::cout << "  [" << name << "] " << text << '\n';
      std::cout << "S^E = " << fam.S.to_string() << '\n';
      std::cout << "P^E = " << fam.P.to_string() << '\n';
      if (fam.p_power) std::cout << "p-power = " << fam.p_power << '\n';
    }
    json evals = json::array();
    for (long k : held_out_weights(fam, a.count)) {
      PadicNum got = eval_family(fam, k);
      long digits = got.abs_prec();
      PadicNum want = p_regular_coeff(h, k, a.p, digits + 4);
      bool ok = got.congruent(want, digits);
      all_match = all_match && ok;
      ledger("family k=" + std::to_string(k), digits);
      if (g.format() == Format::plain)
        std::cout << "k=" << k << "  family " << got.to_string() << "  exact " << want.with_abs_prec(digits).to_string()
                  << "  match " << (ok ? "yes" : "NO") << '\n';
      evals.push_back({{"k", k}, {"family", io::padic_json(got)}, {"exact", io::padic_json(want)}, {"match", ok}});
    }
    jf["held_out"] = evals;
    fams.push_back(jf);
  }
  out["families"] = fams;
  if (g.format() == Format::json) std::cout << out.dump(2) << '\n';
  return all_match ? kOk : kFailure;
}

int print_theta(const Globals& g, const QExpansion& th) {
  if (g.format() == Format::json) {
    std::cout << io::qexpansion_json(th).dump(2) << '\n';
    return kOk;
  }
  if (g.format() == Format::csv) std::cout << "n,r_n\n";
  for (long n = 0; n <= th.cutoff; ++n)
    std::cout << n << (g.format() == Format::csv ? "," : "\t") << to_string(th.coeff({n})) << '\n';
  return kOk;
}

struct MassValuationArgs {
  long k = 4;
  long p = 5;
  long c = 0;
  long coeffs = 6;
  long prec = 6;
};

int cmd_mass_valuation(const Globals& g, const MassValuationArgs& a) {
  MassValuation v = p_regular_mass_valuation(a.k, a.p, a.c, a.coeffs, a.prec);
  if (g.format() == Format::json) {
    json bl = json::array();
    for (auto [j, l] : v.branch_lambda) bl.push_back({{"branch", j}, {"lambda", l}});
    std::cout << json{{"schema", io::kSchema},
                      {"kind", "mass-valuation"},
                      {"k", v.k},
                      {"p", v.p},
                      {"c", v.c},
                      {"predicted", v.predicted},
                      {"actual", v.actual},
                      {"unregularized", v.unregularized},
                      {"match", v.match},
                      {"branches", bl}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "k=" << v.k << " p=" << v.p << " c=" << v.c << " predicted " << v.predicted << " actual " << v.actual
              << " unregularized " << v.unregularized << " match " << (v.match ? "yes" : "NO") << '\n';
  }
  return v.match ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic L-functions, Eisenstein families and mass constants"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--cache-dir", g.cache_dir, "Bernoulli cache directory (default $PADL_CACHE_DIR)");

  ZetapArgs za;
  auto* zt = app.add_subcommand("zetap-table", "1/(zeta(1-k)(1-p^{k-1})) for k = 2, 4, ..., max");
  zt->add_option("--p", za.p, "odd prime");
  zt->add_option("--prec", za.prec, "relative p-adic digits per row");
  zt->add_option("--max", za.max, "largest 2k");
  zt->add_option("--c", za.c, "regularizer c (0: smallest valid)");
  zt->add_option("--coeffs", za.coeffs, "t-adic cutoff D of the branch series");
  zt->add_option("--branch-prec", za.branch_prec, "p-adic precision N of the branch series");
  zt->add_flag("--paper", za.paper, "pin p=37, prec=5, max=36");

  MassArgs ma;
  auto* ms = app.add_subcommand("mass", "mass constant m_k");
  ms->add_option("--rank", ma.rank, "lattice rank 2k");
  ms->add_option("--k", ma.k, "argument k");

  MassTableArgs mta;
  auto* mt = app.add_subcommand("mass-table", "mass(2), mass(4), ..., with denominator factorizations");
  mt->add_option("--max", mta.max, "largest argument (even, <= 40)");
  mt->add_flag("--factor", mta.factor, "factor the denominator of 1/mass");
  mt->add_flag("--paper", mta.paper, "pin max=20 with factorization");

  IwasawaArgs ia;
  auto* iw = app.add_subcommand("iwasawa", "branch series of the Mazur measure");
  iw->add_option("--p", ia.p, "prime");
  iw->add_option("--branch", ia.branch, "j in omega^j");
  iw->add_option("--c", ia.c, "regularizer c (0: smallest valid)");
  iw->add_option("--coeffs", ia.coeffs, "t-adic cutoff D");
  iw->add_option("--prec", ia.prec, "p-adic precision N");
  iw->add_option("--method", ia.method, "interp or riemann");

  FamilyArgs fa;
  auto* fm = app.add_subcommand("family", "p-adic family of a p-regular Eisenstein coefficient");
  fm->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  fm->add_option("--p", fa.p, "odd prime");
  fm->add_option("--m", fa.m, "genus (1 or 2)");
  fm->add_option("--h", fa.h, "h for m=1, a,b,c for m=2");
  fm->add_option("--ch", fa.ch, "regularizer c_h (0: smallest valid)");
  fm->add_option("--coeffs", fa.coeffs, "t-adic cutoff D");
  fm->add_option("--prec", fa.prec, "p-adic precision N");
  fm->add_option("--branch", fa.branch, "k mod (p-1); default: every even class");
  fm->add_option("--count", fa.count, "held-out weights per branch");
  fm->add_flag("--audit", fa.audit, "print every factor of the construction");

  long theta_cutoff = 8;
  auto* te = app.add_subcommand("theta-e8", "theta series of E8");
  te->add_option("--cutoff", theta_cutoff, "largest half-norm (<= 20)");

  long lat_cutoff = 8;
  std::string lattice_file;
  auto* th = app.add_subcommand("theta", "theta series of a lattice given as JSON");
  th->add_option("--lattice", lattice_file, "JSON file {rank, gram}")->required();
  th->add_option("--cutoff", lat_cutoff, "largest half-norm (<= 20)");

  MassValuationArgs mva;
  auto* mv = app.add_subcommand("mass-valuation", "Newton-polygon valuation of the p-regular part of 1/m_k");
  mv->add_option("--k", mva.k, "even k");
  mv->add_option("--p", mva.p, "odd prime");
  mv->add_option("--c", mva.c, "regularizer c (0: smallest valid)");
  mv->add_option("--coeffs", mva.coeffs, "t-adic cutoff D");
  mv->add_option("--prec", mva.prec, "p-adic precision N");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (!g.cache_dir.empty()) setenv("PADL_CACHE_DIR", g.cache_dir.c_str(), 1);
  BernoulliTable::instance().load(bernoulli_cache_file());

  int rc = kOk;
  try {
    if (*zt) rc = cmd_zetap_table(g, za);
    else if (*ms) rc = cmd_mass(g, ma);
    else if (*mt) rc = cmd_mass_table(g, mta);
    else if (*iw) rc = cmd_iwasawa(g, ia);
    else if (*fm) rc = cmd_family(g, fa);
    else if (*te) rc = print_theta(g, theta_series(e8_lattice(), theta_cutoff));
    else if (*th) rc = print_theta(g, theta_series(io::lattice_from_file(lattice_file), lat_cutoff));
    else if (*mv) rc = cmd_mass_valuation(g, mva);
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\nlocation: " << e.location << '\n';
    rc = kPole;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    rc = kPrecision;
  } catch (const FactorizationIncomplete& e) {
    std::cerr << "factorization incomplete: " << e.what() << '\n';
    rc = kFactorization;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n' << app.help();
    rc = kConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    rc = kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    rc = kFailure;
  }

  if (BernoulliTable::instance().dirty()) {
    try {
      BernoulliTable::instance().save(bernoulli_cache_file());
    } catch (const std::exception& e) {
      std::cerr << "warning: could not write Bernoulli cache: " << e.what() << '\n';
    }
  }
  return rc;
}
