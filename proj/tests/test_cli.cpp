// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using rdmrep::cli::run_cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rdmrep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rdmrep_cli_test_" + name);
}

}  // namespace

TEST_CASE("exact ground energies", "[cli]") {
  const Run r = run({"--json", "exact", "--model", "hubbard_dimer", "--lambda", "1"});
  REQUIRE(r.code == 0);
  CHECK_THAT(json_of(r)["E"].get<double>(), WithinAbs(2.0 - std::sqrt(8.0), 1e-10));
  const Run text = run({"exact", "--model", "hubbard_dimer", "--lambda", "0"});
  CHECK(text.code == 0);
  CHECK_THAT(text.out, ContainsSubstring("E = -2"));
}

TEST_CASE("bounds at half filling", "[cli]") {
  const auto witness = scratch("witness.txt");
  const Run r = run({"--json", "bounds", "--model", "model_a", "--occ", "1,1", "--out", witness.string()});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK_THAT(j["lb"].get<double>(), WithinAbs(0.8, 1e-6));
  CHECK_THAT(j["ub"].get<double>(), WithinAbs(1.1, 1e-6));
  CHECK_THAT(j["hf"].get<double>(), WithinAbs(1.35, 1e-12));
  CHECK(std::filesystem::exists(witness));

  const Run mm = run({"--json", "maxmin", "--model", "model_a", "--lambda", "-1", "--witness-file", witness.string()});
  CHECK(mm.code == 0);
  std::filesystem::remove(witness);
}

TEST_CASE("input errors exit with code 2", "[cli]") {
  CHECK(run({"bounds", "--model", "model_a", "--occ", "2.5,-0.5"}).code == 2);
  CHECK(run({"bounds", "--model", "model_a", "--occ", "1,1,0"}).code == 2);
  CHECK(run({"exact", "--model", "helium"}).code == 2);
  CHECK(run({"exact", "--fcidump", scratch("missing").string()}).code == 2);
  CHECK(run({"maxmin", "--model", "hubbard_dimer", "--lambda", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("check verdicts and exit codes", "[cli]") {
  const Run hf = run({"--json", "check", "--model", "model_a", "--occ", "1,1", "--functional", "hf"});
  CHECK(hf.code == 1);
  const auto j = json_of(hf);
  CHECK(j["verdict"] == "not-representable");
  CHECK(j["witness_lambda"].get<double>() == -1.0);
  CHECK(j["witness_margin"].get<double>() >= 0.24);

  CHECK(run({"check", "--model", "model_a", "--occ", "1,1", "--w", "0.9"}).code == 0);

  const auto table = scratch("table.txt");
  std::ofstream(table) << "w = 0.95\noccupations = [1, 1]\n";
  CHECK(run({"check", "--model", "model_a", "--occ", "1,1", "--functional", table.string()}).code == 0);
  std::filesystem::remove(table);
}

TEST_CASE("sweep output is deterministic", "[cli]") {
  const Run a = run({"sweep", "--model", "hubbard_dimer", "--points", "5"});
  const Run b = run({"sweep", "--model", "hubbard_dimer", "--points", "5"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("n,lb,ub,hf,gap_lb,gap_ub\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 6);
}

TEST_CASE("max-min cutting plane from the command line", "[cli]") {
  const Run r = run({"--json", "maxmin", "--model", "hubbard_dimer", "--lambda", "1", "--auto", "16"});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["gap"].get<double>() <= 1e-4);
}
