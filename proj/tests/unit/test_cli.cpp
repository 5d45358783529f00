#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gausschain/cli.hpp"
#include "gausschain/decomposition.hpp"
#include "gausschain/report.hpp"

using namespace gausschain;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gausschain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GAUSSCHAIN_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("validate") {
  const Run ok = cli({"validate", "--config", data("n3.cfg")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("PASS  oracle_equivalence") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const Run rwa = cli({"validate", "--config", data("rwa_n4.cfg")});
  CHECK(rwa.code == kExitOk);
  CHECK(rwa.out.find("PASS  rwa_no_entanglement") != std::string::npos);

  const Run unstable = cli({"validate", "--config", data("unstable.cfg")});
  CHECK(unstable.code == kExitValidation);
  CHECK(unstable.out.find("FAIL  stability") != std::string::npos);
}

TEST_CASE("usage and config errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"sweep", "--format", "xml"}).code == kExitUsage);
  CHECK(cli({"sweep", "--config", "/nonexistent/x.cfg"}).code == kExitUsage);
  const Run bad = cli({"sweep", "--config", data("bad_key.cfg")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("chain.kapa") != std::string::npos);
  CHECK(cli({"decompose", "--format", "csv"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("sweep to stdout and file") {
  const Run r = cli({"sweep", "--config", data("n3.cfg")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("tau,pair,log_negativity\n", 0) == 0);
  CHECK(r.err.find("peak 1-2: tau=44.") != std::string::npos);

  const std::string path = "gausschain_cli_test.json";
  const Run j = cli({"sweep", "--config", data("n3.cfg"), "--format", "json", "--engine", "oracle", "--out", path});
  REQUIRE(j.code == kExitOk);
  CHECK(j.out.empty());
  const auto parsed = nlohmann::json::parse(read_file(path));
  CHECK(parsed.size() == 1201);
  std::remove(path.c_str());

  CHECK(cli({"sweep", "--config", data("n3.cfg"), "--out", "/nonexistent-dir/out.csv"}).code == kExitIo);
  CHECK(cli({"sweep", "--config", data("unstable.cfg")}).code == kExitValidation);
}

TEST_CASE("tag summary reports dominance") {
  const Run r = cli({"tag", "--config", data("tag_n3.cfg")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("tau,pair,log_negativity,c11,c12,c21,c22\n", 0) == 0);
  CHECK(r.err.find("end-to-end dominance (1-3)") != std::string::npos);
}

TEST_CASE("decompose and simulate") {
  const Run d = cli({"decompose", "--config", data("n3.cfg")});
  REQUIRE(d.code == kExitOk);
  CHECK(parse_circuit(d.out) == build_propagator({3, 1.0, 0.1, CouplingModel::Full}, 0.0).gates);
  CHECK(d.out.find("-0\n") == std::string::npos);

  const Run s = cli({"simulate", "--config", data("n3.cfg"), "--format", "json"});
  REQUIRE(s.code == kExitOk);
  CHECK(nlohmann::json::parse(s.out)["covariance"].size() == 6);
}
