#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "golden.hpp"
#include "padlfun/io.hpp"

using namespace padlfun;
using nlohmann::json;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

// stdout is captured; the precision ledger on stderr is discarded
CliResult run(const std::string& args) {
  std::string cmd = std::string(PADLFUN_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "padlfun-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, ZetapTableMatchesPublishedRows) {
  CliResult r = run("zetap-table --paper");
  ASSERT_EQ(r.status, 0);
  std::string want;
  for (const auto& [k, text] : golden::zetap37()) want += std::to_string(k) + "\t" + text + "\n";
  EXPECT_EQ(r.out, want);
  // same rows through the explicit parameters
  EXPECT_EQ(run("zetap-table --p 37 --prec 5 --max 36").out, want);
}

TEST(Cli, ZetapTableOtherPrime) {
  CliResult r = run("zetap-table --p 5 --prec 6 --max 12");
  ASSERT_EQ(r.status, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    long k = 2 * static_cast<long>(i + 1);
    Rat exact = 1 / (zeta_neg(static_cast<unsigned long>(k)) * (1 - rpow(Rat(5), k - 1)));
    EXPECT_EQ(ls[i], std::to_string(k) + "\t" + from_rat(exact, 5, 6).to_string());
  }
}

TEST(Cli, ZetapTableJsonAgreesWithPlain) {
  CliResult r = run("--json zetap-table --paper");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("schema"), io::kSchema);
  const auto& gold = golden::zetap37();
  ASSERT_EQ(j.at("rows").size(), gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const json& row = j["rows"][i];
    EXPECT_EQ(row.at("two_k").get<long>(), gold[i].first);
    PadicNum x = io::padic_from_json(row.at("value"));
    EXPECT_EQ(x.to_string(), gold[i].second);
    EXPECT_EQ(row.at("value").at("text").get<std::string>(), gold[i].second);
  }
}

TEST(Cli, MassConstants) {
  EXPECT_EQ(run("mass --rank 8").out, "1/696729600\n");
  EXPECT_EQ(run("mass --k 8").out, "691/277667181515243520000\n");
  json j = json::parse(run("--json mass --rank 16").out);
  EXPECT_EQ(parse_rat(j.at("mass").get<std::string>()), mass_constant(8));
}

TEST(Cli, MassTableMatchesPublishedRows) {
  CliResult r = run("mass-table --paper");
  ASSERT_EQ(r.status, 0);
  std::string want;
  for (const auto& [k, text] : golden::mass_denominators()) want += std::to_string(k) + "\t" + text + "\n";
  EXPECT_EQ(r.out, want);
  EXPECT_EQ(run("mass-table --max 20 --factor").out, want);
}

TEST(Cli, MassTableJsonRoundTrip) {
  CliResult r = run("--json mass-table --paper");
  ASSERT_EQ(r.status, 0);
  auto rows = io::mass_table_from_json(json::parse(r.out));
  const auto& gold = golden::mass_denominators();
  ASSERT_EQ(rows.size(), gold.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].mass, mass_constant(gold[i].first));
    ASSERT_TRUE(rows[i].denominator_factors.has_value());
    EXPECT_EQ(rows[i].denominator_factors->pari_string(), gold[i].second);
  }
  // and back out again unchanged
  EXPECT_EQ(io::mass_table_json(rows), json::parse(r.out));
}

TEST(Cli, MassTableCsv) {
  auto ls = lines(run("--csv mass-table --paper").out);
  ASSERT_FALSE(ls.empty());
  EXPECT_EQ(ls[0], "arg,prime,exponent");
  EXPECT_EQ(ls[1], "8,691,1");
}

TEST(Cli, ThetaE8) {
  CliResult r = run("theta-e8 --cutoff 8");
  ASSERT_EQ(r.status, 0);
  const long gold[] = {1, 240, 2160, 6720, 17520, 30240, 60480, 82560, 140400};
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 9u);
  for (long n = 0; n <= 8; ++n) EXPECT_EQ(ls[n], std::to_string(n) + "\t" + std::to_string(gold[n]));
  json j = json::parse(run("--json theta-e8 --cutoff 3").out);
  EXPECT_EQ(j.at("coeffs"), json({"1", "240", "2160", "6720"}));
}

TEST(Cli, ThetaFromLatticeFile) {
  auto good = scratch("rank1.json"), bad = scratch("odd.json");
  std::ofstream(good) << R"({"rank": 1, "gram": [[2]]})";
  std::ofstream(bad) << R"({"rank": 1, "gram": [[3]]})";
  CliResult r = run("theta --lattice " + good.string() + " --cutoff 4");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "0\t1\n1\t2\n2\t0\n3\t0\n4\t2\n");
  EXPECT_EQ(run("theta --lattice " + bad.string()).status, 2);
  EXPECT_EQ(run("theta --lattice " + scratch("missing.json").string()).status, 2);
}

TEST(Cli, IwasawaMethodsAgree) {
  CliResult a = run("--json iwasawa --p 5 --branch 1 --c 2 --coeffs 6 --prec 10 --method interp");
  CliResult b = run("--json iwasawa --p 5 --branch 1 --c 2 --coeffs 6 --prec 10 --method riemann");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  IwasawaSeries ga = io::series_from_json(json::parse(a.out).at("G"));
  IwasawaSeries gb = io::series_from_json(json::parse(b.out).at("G"));
  ASSERT_EQ(ga.cutoff(), 6);
  ASSERT_EQ(gb.cutoff(), 6);
  long n = std::min(ga.prec(), gb.prec());
  EXPECT_GE(n, 6);
  for (long i = 0; i < 6; ++i) EXPECT_EQ(mod_pos(ga.residue(i) - gb.residue(i), ppow(5, n)), 0) << i;
}

TEST(Cli, IwasawaSeriesJsonRoundTrip) {
  CliResult r = run("--json iwasawa --p 7 --branch 3 --coeffs 5 --prec 6");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  IwasawaSeries g = io::series_from_json(j.at("G"));
  EXPECT_EQ(io::series_json(g), j.at("G"));
  EXPECT_EQ(g.to_string(), j.at("G").at("text").get<std::string>());
  ZetaBranch direct = iwasawa_series(7, 3, j.at("c").get<long>(), 5, 6);
  for (long i = 0; i < 5; ++i) EXPECT_EQ(g.residue(i), direct.G.residue(i));
}

TEST(Cli, FamilyHeldOutMatches) {
  CliResult r = run("family --p 5 --m 1 --h 1");
  ASSERT_EQ(r.status, 0);
  long matches = 0;
  bool saw_s = false, saw_p = false;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("S^E = ", 0) == 0) saw_s = true;
    if (l.rfind("P^E = ", 0) == 0) saw_p = true;
    if (l.find("match yes") != std::string::npos) ++matches;
    EXPECT_EQ(l.find("match NO"), std::string::npos) << l;
  }
  EXPECT_TRUE(saw_s);
  EXPECT_TRUE(saw_p);
  EXPECT_EQ(matches, 6);  // two even classes mod 4, three weights each

  json j = json::parse(run("--json family --p 7 --m 2 --h 1,1,1 --branch 4").out);
  ASSERT_EQ(j.at("families").size(), 1u);
  for (const auto& fam : j.at("families")) {
    ASSERT_EQ(fam.at("held_out").size(), 3u);
    for (const auto& e : fam.at("held_out")) {
      EXPECT_TRUE(e.at("match").get<bool>());
      PadicNum got = io::padic_from_json(e.at("family"));
      PadicNum want = p_regular_coeff(HalfIntMatrix::genus2(1, 1, 1), e.at("k").get<long>(), 7, got.abs_prec() + 2);
      EXPECT_GE(got.abs_prec(), 6);
      EXPECT_TRUE(got.congruent(want, got.abs_prec()));
    }
  }
}

TEST(Cli, FamilyAuditTrail) {
  CliResult r = run("family --p 5 --m 1 --h 2 --branch 0 --audit");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("[elementary factor]"), std::string::npos);
  EXPECT_NE(r.out.find("U*"), std::string::npos);
}

TEST(Cli, MassValuation) {
  CliResult r = run("mass-valuation --k 8 --p 691");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("match yes"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("zetap-table --p 4").status, 2);
  EXPECT_EQ(run("iwasawa --p 5 --branch 1 --method bogus").status, 2);
  EXPECT_EQ(run("family --p 5 --m 1 --h 5").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("iwasawa --p 5 --branch 1 --coeffs 4 --prec 40 --method riemann").status, 4);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, BernoulliCacheWritten) {
  auto dir = scratch("cache");
  std::filesystem::remove_all(dir);
  CliResult r = run("--cache-dir " + dir.string() + " zetap-table --p 7 --prec 4 --max 10");
  ASSERT_EQ(r.status, 0);
  std::ifstream in(dir / "bernoulli.txt");
  ASSERT_TRUE(in.good());
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "0 1");
  std::filesystem::remove_all(dir);
}
