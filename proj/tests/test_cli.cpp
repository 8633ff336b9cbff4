#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI binary (path from KGR_BIN) and captures stdout.
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("KGR_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "KGR_BIN must point at the kgr binary");
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

nlohmann::json strip_timing(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("timing");
  return j;
}

std::string fx(const std::string& name) { return fixture_path(name); }

}  // namespace

TEST_CASE("validate: pass on ledrappier, exit 0") {
  RunResult r = run_cli("validate " + fx("ledrappier.json"));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["command"] == "validate");
  CHECK(j["results"].size() == 3);
}

TEST_CASE("validate: malformed document exits 2") {
  RunResult r = run_cli("validate " + fx("bad_schema.json"));
  CHECK(r.exit_code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("error"));
}

TEST_CASE("validate: invariant violations exit 2 with the named failure") {
  RunResult r = run_cli("validate " + fx("bad_noncommute.json"));
  CHECK(r.exit_code == 2);
  CHECK(nlohmann::json::parse(r.out)["error"].get<std::string>().find("commute") !=
        std::string::npos);
}

TEST_CASE("validate: disconnected graph fails the check, exit 1") {
  RunResult r = run_cli("validate " + fx("disconnected.json"));
  CHECK(r.exit_code == 1);
  CHECK(nlohmann::json::parse(r.out)["pass"] == false);
}

TEST_CASE("validate: a periodicity witness is reported but informational") {
  RunResult r = run_cli("validate " + fx("single_loop.json"));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::string witness = j["results"][2]["witness"];
  CHECK(witness.find("PeriodicWitness") == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("validate").exit_code == 2);
  CHECK(run_cli("no-such-command x").exit_code == 2);
  CHECK(run_cli("measure " + fx("ledrappier.json") + " --path zzz").exit_code == 2);
}

TEST_CASE("reports are byte-identical modulo timing") {
  RunResult a = run_cli("ck-check " + fx("ledrappier.json") + " --depth 1");
  RunResult b = run_cli("ck-check " + fx("ledrappier.json") + " --depth 1");
  CHECK(a.exit_code == 0);
  CHECK(strip_timing(a.out).dump() == strip_timing(b.out).dump());
}

TEST_CASE("eigen reports exact spectral data") {
  RunResult r = run_cli("eigen " + fx("ledrappier.json"));
  CHECK(r.exit_code == 0);
  auto j = strip_timing(r.out);
  CHECK(j["data"]["exact"] == true);
  CHECK(j["data"]["rho"][0] == 2.0);
  CHECK(j["data"]["rho"][1] == 2.0);
  CHECK(j["data"]["x_exact"][0] == "1/4");
}

TEST_CASE("measure by degree and by path id") {
  RunResult deg = run_cli("measure " + fx("ledrappier.json") + " --path 1,1");
  CHECK(deg.exit_code == 0);
  auto j = nlohmann::json::parse(deg.out);
  CHECK(j["values"].size() == 16);
  CHECK(j["values"][0]["measure"] == 0.0625);
  CHECK(j["values"][0]["measure_exact"] == "1/16");

  RunResult one = run_cli("measure " + fx("ledrappier.json") + " --path v:u0");
  auto k = nlohmann::json::parse(one.out);
  CHECK(k["values"][0]["measure"] == 0.25);
}

TEST_CASE("ck-check exits by verdict and reports the mode") {
  RunResult r = run_cli("ck-check " + fx("ledrappier.json") + " --depth 1");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "exact");
  CHECK(r.exit_code == 0);
  RunResult f = run_cli("ck-check " + fx("product_graph.json") + " --depth 1");
  CHECK(nlohmann::json::parse(f.out)["mode"] == "float");
  CHECK(f.exit_code == 0);
  RunResult forced = run_cli("ck-check " + fx("ledrappier.json") + " --depth 1 --float");
  CHECK(nlohmann::json::parse(forced.out)["mode"] == "float");
}

TEST_CASE("kms-check: beta 1 passes, beta 2 fails with witness") {
  RunResult ok = run_cli("kms-check " + fx("ledrappier.json") + " --beta 1 --bound 1");
  CHECK(ok.exit_code == 0);
  RunResult bad = run_cli("kms-check " + fx("ledrappier.json") + " --beta 2 --bound 1");
  CHECK(bad.exit_code == 1);
  auto j = nlohmann::json::parse(bad.out);
  CHECK(j["results"][0]["pass"] == false);
  CHECK(j["results"][0].contains("witness"));
}

TEST_CASE("kms-check custom dynamics") {
  // ln 2 per color reproduces the preferred dynamics
  RunResult ok = run_cli("kms-check " + fx("ledrappier.json") +
                         " --dynamics custom:0.6931471805599453,0.6931471805599453 --beta 1 "
                         "--bound 1");
  CHECK(ok.exit_code == 0);
  RunResult bad =
      run_cli("kms-check " + fx("ledrappier.json") + " --dynamics custom:1.0,0.5 --beta 1 --bound 1");
  CHECK(bad.exit_code == 1);
  CHECK(run_cli("kms-check " + fx("ledrappier.json") + " --dynamics bogus --beta 1").exit_code ==
        2);
}

TEST_CASE("kms-check hausdorff dynamics") {
  RunResult ok =
      run_cli("kms-check " + fx("ledrappier.json") + " --dynamics hausdorff --beta 0.5 --bound 1");
  CHECK(ok.exit_code == 0);
  RunResult bad =
      run_cli("kms-check " + fx("ledrappier.json") + " --dynamics hausdorff --beta 1.0 --bound 1");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("dimension: formula 0.5 and estimate agree on ledrappier") {
  RunResult r = run_cli("dimension " + fx("ledrappier.json") + " --box-depth 8");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["data"]["formula"] == 0.5);
  CHECK(std::abs(j["data"]["estimate"].get<double>() - 0.5) <= 0.05);
}

TEST_CASE("dimension rejects non-{0,1} inputs via check failure") {
  RunResult r = run_cli("dimension " + fx("one_vertex_flip.json"));
  CHECK(r.exit_code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"][0]["pass"] == false);
}

TEST_CASE("embed writes the documented CSV") {
  std::string out = "/tmp/kgr_cli_pc.csv";
  RunResult r = run_cli("embed " + fx("ledrappier.json") + " --depth 1 --out " + out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "path_id,value_numerator,denominator_power,measure");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("wavelets verifies and exports the basis") {
  std::string out = "/tmp/kgr_cli_basis.json";
  RunResult r = run_cli("wavelets " + fx("ledrappier.json") + " --levels 2 --out " + out);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  std::ifstream in(out);
  nlohmann::json basis;
  in >> basis;
  CHECK(basis["vectors"].size() == 64);
}
