#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sstream>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nijenhuis");
  std::ostringstream out, err;
  const int code = nijenhuis::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("catalog") {
    const auto text = run({"catalog"});
    CHECK(text.code == 0);
    CHECK(text.out.find("EIII") != std::string::npos);
    const auto j = parse(run({"catalog", "--format", "json"}));
    CHECK(j["report_version"] == 1);
    CHECK(j["result"]["entries"].size() == 6);
    const auto one = parse(run({"catalog", "--space", "AIII", "--n", "5", "--k", "2", "--format", "json"}));
    REQUIRE(one["result"]["entries"].size() == 1);
    CHECK(one["result"]["entries"][0]["rank"] == 2);
    CHECK(one["result"]["entries"][0]["rho_phi_norm"] == "-4/3");
  }

  TEST_CASE("minimal check and search") {
    const auto spin = parse(run({"minimal", "check", "BDI", "--n", "8", "--rep", "spin", "--format", "json"}));
    CHECK(spin["result"]["minimal"] == true);
    CHECK(spin["result"]["lambda_phi"]["im"] == "1/2");
    const auto fund = parse(run({"minimal", "check", "BDI", "--n", "8", "--rep", "fundamental", "--format", "json"}));
    CHECK(fund["result"]["minimal"] == false);
    const auto e6 = run({"minimal", "search", "e6", "--format", "json"});
    CHECK(e6.code == 0);
    const auto j = parse(e6);
    CHECK(j["result"]["verdict"] == "none exist");
    int nontrivial = 0;
    for (const auto& s : j["result"]["survivors"])
      if (!s["witness"].is_string()) ++nontrivial;
    CHECK(nontrivial == 2);
    CHECK(run({"minimal", "check", "EIII"}).code == 2);
    CHECK(run({"minimal", "search", "a5"}).code == 2);
  }

  TEST_CASE("verify exit codes") {
    CHECK(run({"verify", "explicit-formula", "--space", "CI", "--n", "3", "--trials", "10", "--seed", "1"}).code == 0);
    CHECK(run({"verify", "slice", "--space", "DIII", "--n", "4", "--trials", "5", "--seed", "1"}).code == 0);
    CHECK(run({"verify", "explicit-formula", "--mutate", "drop-half", "--trials", "5", "--seed", "1"}).code == 1);
    CHECK(run({"verify", "explicit-formula", "--space", "EIII"}).code == 2);
    CHECK(run({"verify", "no-such-suite"}).code == 2);
    CHECK(run({"verify", "kphi", "--trials", "0"}).code == 2);
    CHECK(run({"verify", "kphi", "--tol", "-1"}).code == 2);
    CHECK(run({"verify", "kphi", "--space", "AIII", "--n", "3", "--k", "7"}).code == 2);
  }

  TEST_CASE("same seed gives byte-identical JSON") {
    const std::vector<std::string> args = {"verify", "basic-forms", "--space", "AIII", "--n", "4", "--k", "2",
                                           "--trials", "7", "--seed", "123", "--format", "json"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["config"]["seed"] == 123);
    CHECK(j["result"]["seed"] == 123);
  }

  TEST_CASE("the seed is echoed when drawn from entropy") {
    const auto j = parse(run({"verify", "quadratic", "--trials", "2", "--format", "json"}));
    CHECK(j["config"].contains("seed"));
  }

  TEST_CASE("symbolic and spectrum") {
    const auto e3 = parse(run({"symbolic", "eiii", "--format", "json"}));
    CHECK(e3["result"]["pass"] == true);
    const auto e7 = run({"symbolic", "evii"});
    CHECK(e7.code == 0);
    CHECK(e7.out.find("not a member") != std::string::npos);
    CHECK(run({"spectrum", "--space", "CI", "--n", "3", "--point", "base"}).code == 0);
    const auto top = parse(run({"spectrum", "--space", "CI", "--n", "3", "--point", "pi2", "--format", "json"}));
    bool has_two = false;
    for (const auto& z : top["result"]["eigenvalues"]) has_two = has_two || std::abs(z["re"].get<double>() - 2) < 1e-12;
    CHECK(has_two);
    CHECK(run({"spectrum", "--space", "BDI", "--n", "8", "--point", "random", "--seed", "4"}).code == 0);
  }

  TEST_CASE("help and bad flags") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"catalog", "--format", "xml"}).code == 2);
  }
}
