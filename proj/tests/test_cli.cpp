#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dunkl/cli.hpp"
#include "dunkl/estimates.hpp"
#include "dunkl/suites.hpp"

using namespace dunkl;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("point lists and number formatting") {
  const auto pts = parse_point_list("0.3,0.2,0; 0.1,-0.4,0.2");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1] == Vector{0.1, -0.4, 0.2});
  CHECK(parse_point_list("").empty());
  CHECK_THROWS_AS(parse_point_list("0.3,abc"), InvalidParams);
  CHECK_THROWS_AS(parse_point_list("0.3x,1"), InvalidParams);
  CHECK(format_value(0.1) == "0.10000000000000001");
  CHECK(format_value(1.0 / 0.0) == "inf");
  CHECK(std::stod(format_value(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("eval writes one row per pair") {
  const Run r = cli({"eval", "--d", "3", "--k", "1", "--kernel", "newton", "--x", "0.3,0.2,0", "--y", "0.1,-0.4,0.2"});
  CHECK(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "kernel,d,k,x,y,value");
  CHECK(l[1].rfind("newton,3,1,", 0) == 0);
}

TEST_CASE("eval boundary, normalization and infinity") {
  Run r = cli({"--command", "eval", "--kernel", "green", "--x", "0.6,0.8", "--y", "0.1,0.2"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out)[1].substr(lines(r.out)[1].rfind(',') + 1) == "0");
  r = cli({"eval", "--kernel", "poisson", "--x", "0,0", "--y", "0.6,0.8"});
  CHECK(std::stod(lines(r.out)[1].substr(lines(r.out)[1].rfind(',') + 1)) == doctest::Approx(1.0));
  r = cli({"eval", "--kernel", "newton", "--x", "0.3,0.2", "--y", "-0.3,0.2"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out)[1].substr(lines(r.out)[1].rfind(',') + 1) == "inf");
  r = cli({"eval", "--kernel", "newton", "--x", "0.3,0.2", "--y", "-0.3,0.2", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)[0]["value"] == "inf");
}

TEST_CASE("eval broadcasts a single point") {
  const Run r = cli({"eval", "--kernel", "poisson", "--x", "0.1,0.1", "--y", "1,0;0,1;-1,0"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 4);
}

TEST_CASE("A1 basis input") {
  // z = (0.5, 0.1) in the A_1 presentation is x = ((0.4)/sqrt2, (0.6)/sqrt2) in the adapted basis.
  const Run a = cli({"eval", "--kernel", "green", "--basis", "a1", "--x", "0.5,0.1", "--y", "-0.2,0.3"});
  const Vector x = from_a1_basis(Vector{0.5, 0.1});
  const Vector y = from_a1_basis(Vector{-0.2, 0.3});
  const Run b = cli({"eval", "--kernel", "green", "--x", format_value(x[0]) + "," + format_value(x[1]), "--y",
                     format_value(y[0]) + "," + format_value(y[1])});
  REQUIRE(a.code == kExitOk);
  const std::string va = lines(a.out)[1].substr(lines(a.out)[1].rfind(',') + 1);
  const std::string vb = lines(b.out)[1].substr(lines(b.out)[1].rfind(',') + 1);
  CHECK(std::stod(va) == doctest::Approx(std::stod(vb)).epsilon(1e-13));
  const Run d = cli({"eval", "--kernel", "poisson-dyson", "--basis", "a1", "--x", "0.5,0.1", "--y", "0.6,-0.8"});
  CHECK(d.code == kExitOk);
}

TEST_CASE("configuration errors exit with 2 and name the point") {
  CHECK(cli({"eval", "--kernel", "green", "--x", "1.3,0.2", "--y", "0.3,-0.2"}).code == kExitConfig);
  const Run r = cli({"eval", "--kernel", "green", "--x", "1.3,0.2", "--y", "0.3,-0.2"});
  CHECK(r.err.find("x=(1.3,") != std::string::npos);
  CHECK(cli({"eval", "--kernel", "heat", "--x", "0,0", "--y", "1,0"}).code == kExitConfig);
  CHECK(cli({"eval", "--kernel", "newton", "--x", "0,0,0", "--y", "1,0"}).code == kExitConfig);
  CHECK(cli({"eval", "--k", "-1", "--x", "0.1,0", "--y", "1,0"}).code == kExitConfig);
  CHECK(cli({"scan", "--theorem", "newton-estimate", "--n", "0"}).code == kExitConfig);
  CHECK(cli({"scan", "--theorem", "nonsense"}).code == kExitConfig);
  CHECK(cli({"verify", "--suite", "nonsense"}).code == kExitConfig);
  CHECK(cli({"fly"}).code == kExitConfig);
  CHECK(cli({"eval", "--bogus", "1"}).code == kExitConfig);
  CHECK(cli({"eval", "--format", "xml", "--x", "0.1,0", "--y", "1,0"}).code == kExitConfig);
  CHECK(cli({"eval", "--tol", "0", "--x", "0.1,0", "--y", "1,0"}).code == kExitConfig);
}

TEST_CASE("help exits cleanly") { CHECK(cli({"--help"}).code == kExitOk); }

TEST_CASE("scan output is byte-identical across runs and matches the baseline") {
  const std::vector<std::string> args{"scan", "--theorem", "newton-5.1", "--d", "5", "--k", "1",
                                      "--seed", "7", "--n", "10000", "--baseline", DUNKLPOT_TEST_BASELINES};
  const Run a = cli(args);
  const Run b = cli(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.err.empty());
  CHECK(lines(a.out)[0] == scan_csv_header());
}

TEST_CASE("scan outside the stored band exits with 4") {
  const Params p = make_params(2, 1.0);
  ScanReport fake = scan_theorem(Theorem::Poisson, p, 300, 2);
  fake.ratio_max /= 2.0;
  const std::string path = "cli_fake_baseline.csv";
  {
    std::ofstream out(path);
    out << scan_csv_header() << '\n' << to_csv_row(fake) << '\n';
  }
  const Run r = cli({"scan", "--theorem", "poisson-estimate", "--n", "300", "--seed", "2", "--baseline", path});
  std::remove(path.c_str());
  CHECK(r.code == kExitBand);
  CHECK(r.err.find("max at x=") != std::string::npos);
}

TEST_CASE("scan without a stored entry passes on finiteness") {
  const Run r = cli({"scan", "--theorem", "green-estimate", "--n", "200", "--seed", "12345"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("no stored baseline") != std::string::npos);
}

TEST_CASE("scan writes to a file") {
  const std::string path = "cli_scan_out.csv";
  const Run r = cli({"scan", "--theorem", "d1-remark", "--d", "1", "--k", "1", "--n", "500", "--out", path});
  CHECK(r.code == kExitOk);
  const auto reports = read_scan_reports(path);
  std::remove(path.c_str());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].theorem == "line-estimate");
}

TEST_CASE("verify emits a JSON suite report") {
  const Run r = cli({"verify", "--suite", "closed-forms", "--n", "100"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "closed-forms");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() == 7);
  const Run again = cli({"verify", "--suite", "closed-forms", "--n", "100"});
  CHECK(again.out == r.out);
  CHECK(cli({"verify", "--suite", "lemma-3.3", "--n", "500"}).code == kExitOk);
}

TEST_CASE("verify with CSV output") {
  const Run r = cli({"verify", "--suite", "dyson", "--n", "20", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out)[0] == "suite,d,k,check,count,failures,max_residual,tolerance,passed");
}

TEST_CASE("suite names") {
  for (Suite s : all_suites()) CHECK(parse_suite(to_string(s)) == s);
  CHECK(parse_suite("lemma-4.4") == Suite::Remainder);
  CHECK(parse_suite("lemma-4.5") == Suite::PthPower);
}

TEST_CASE("failed checks are reported") {
  SuiteReport r;
  r.suite = "x";
  r.checks.push_back(SuiteCheck{"a", 3, 0, 0.0, 1.0, false, "", ""});
  CHECK(r.passed());
  r.checks.push_back(SuiteCheck{"b", 3, 1, 2.0, 1.0, false, "worst", ""});
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "b");
  r.checks.back().informational = true;
  CHECK(r.passed());
  CHECK(nlohmann::json::parse(to_json(r))["passed"] == true);
}

}  // TEST_SUITE
