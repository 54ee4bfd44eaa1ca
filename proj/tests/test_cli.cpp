#include <fstream>
#include <sstream>

#include "doctest.h"
#include "golden_cases.hpp"
#include "schema_check.hpp"
#include "thompson/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = thompson::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json schema(const std::string& verb) {
  std::ifstream in(std::string(THOMPSON_SOURCE_DIR) + "/docs/schemas/" + verb + ".schema.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

void check_schema(const std::string& verb, std::vector<std::string> args) {
  args.push_back("--json");
  auto r = run(args);
  REQUIRE(r.code == 0);
  auto errors = support::validate(nlohmann::json::parse(r.out), schema(verb));
  INFO(verb << ": " << (errors.empty() ? "" : errors.front()));
  CHECK(errors.empty());
}

}  // namespace

TEST_CASE("cli examples") {
  auto w = run({"word", "f0 f0^-1"});
  CHECK(w.code == 0);
  CHECK(w.out.find("identity: yes") != std::string::npos);
  CHECK(w.out.find("class:  F") != std::string::npos);
  auto e = run({"eval", "f2", "0"});
  CHECK(e.code == 0);
  CHECK(e.out == "3/4\n");
  CHECK(run({"eval", "f0", "3/2^2"}).out == "1/2\n");
  CHECK(run({"kernel-test", "Phi0"}).out == "false\n");
  CHECK(run({"kernel-test", R"({"domain_leaves":["g:1/1","g:1/2"],"range_leaves":["g:1/1","g:1/2"],"perm":[1,2]})"})
            .out == "true\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run({"word", "f7"}).code == 1);
  CHECK(run({"eval", "f0", "1"}).code == 1);
  CHECK(run({"eval", "f0", "1/3"}).code == 1);
  CHECK(run({"cantor", "--omega", "bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"theta", "{not json"}).code == 1);
  auto h = run({"nk-count", "--omega", "omega_k:1", "--K", "1.1", "--horizon", "40"});
  CHECK(h.code == 2);
  CHECK(h.err.find("NotFoundWithinHorizon") != std::string::npos);
  CHECK(run({"nk-count", "--omega", "geometric:1/1152921504606846976,1", "--K", "1.1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli json matches the published schemas") {
  check_schema("word", {"word", "f0 f2"});
  check_schema("eval", {"eval", "f1", "3/4"});
  check_schema("cantor", {"cantor", "--omega", "explicit:1/3,1/2,...", "--depth", "2"});
  check_schema("cantor", {"cantor", "--omega", "geometric:1,1/2", "--depth", "1"});
  check_schema("brd-check", {"brd-check", "--omega", "omega_k:1", "--horizon", "100"});
  check_schema("theta", {"theta", "Phi3"});
  check_schema("realize", {"realize", "f1 f2"});
  check_schema("kernel-test", {"kernel-test", "Phi1"});
  check_schema("length-table", {"length-table", "--omega", "omega_k:2", "--depths", "10,100"});
  check_schema("nk-count", {"nk-count", "--omega", "geometric:1/1073741824,1/2", "--K", "1.1,2"});
  check_schema("twist-table", {"twist-table", "--n", "5", "--grid", "64"});
  check_schema("omega-ratio", {"omega-ratio", "--n", "100,1000"});
}

TEST_CASE("cli output is deterministic") {
  for (const auto& c : support::golden_cases()) {
    auto a = run(c.args), b = run(c.args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("twist table trend") {
  auto r = run({"twist-table", "--omega", "omega_k:1", "--n", "5,10,20,40", "--grid", "64", "--json"});
  REQUIRE(r.code == 0);
  auto rows = nlohmann::json::parse(r.out)["rows"];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i]["K_Psi0"].get<double>() < rows[i - 1]["K_Psi0"].get<double>());
    CHECK(rows[i]["K_Psi1"].get<double>() < rows[i - 1]["K_Psi1"].get<double>());
    CHECK(rows[i]["mod_U0"].get<double>() > rows[i - 1]["mod_U0"].get<double>());
  }
}
