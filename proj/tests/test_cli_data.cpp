#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "braidknots/cli_data.hpp"
#include "braidknots/errors.hpp"

using namespace braidknots;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(BRAIDKNOTS_CLI) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string& name) { return "cli_data_test_" + name; }

}  // namespace

TEST_CASE("word parsing") {
  CHECK(parse_word("[1,-2,3]") == BraidWord{1, -2, 3});
  CHECK(parse_word("1 -2 3") == BraidWord{1, -2, 3});
  CHECK(parse_word("[]").empty());
  CHECK(parse_word("+1,2") == BraidWord{1, 2});
  CHECK_THROWS_AS(parse_word("[1,0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("[1,x]"), std::invalid_argument);
  CHECK(word_from_json_line("{\"braid\":[1,1,1]}") == BraidWord{1, 1, 1});
  CHECK(word_from_json_line("[2,1]") == BraidWord{2, 1});
}

TEST_CASE("balanced dataset with valid labels") {
  DatasetOptions o;
  o.n_letters = 12;
  o.count = 40;
  o.seed = 7;
  o.with_dt = true;
  const auto records = make_dataset(o);
  REQUIRE(records.size() == 40);
  int zeros = 0;
  for (const auto& r : records) {
    zeros += r.label == 0 ? 1 : 0;
    CHECK(r.braid.size() == 12);
    REQUIRE(r.dt.has_value());
    CHECK(r.dt->size() == 12);
  }
  CHECK(zeros == 20);
  CHECK(audit_dataset(records).empty());
  o.threads = 3;
  const auto again = make_dataset(o);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(to_jsonl(records[i]) == to_jsonl(again[i]));
  o.count = 3;
  CHECK_THROWS_AS(make_dataset(o), std::invalid_argument);
}

TEST_CASE("record serialization") {
  DatasetRecord r;
  r.seed = 1;
  r.index = 2;
  r.label = 0;
  r.braid = BraidWord{1, 1, 1};
  r.fingerprint = summarize(fingerprint(r.braid));
  r.dt = std::vector<int>{4, 6, 2};
  const auto j = nlohmann::json::parse(to_jsonl(r));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["braid"] == std::vector<int>{1, 1, 1});
  CHECK(j["fingerprint"]["alexander"] == "t - 1 + t^-1");
  CHECK(j["fingerprint"]["arf"] == 1);
  CHECK(j["dt"] == std::vector<int>{4, 6, 2});
}

TEST_CASE("DT export") {
  const auto out = export_dt({"{\"braid\":[1,1,1],\"label\":0}", "[]", "", "{\"braid\":[1,1]}"});
  REQUIRE(out.size() == 3);
  CHECK(nlohmann::json::parse(out[0])["dt"] == std::vector<int>{4, 6, 2});
  CHECK(nlohmann::json::parse(out[0])["label"] == 0);
  CHECK(nlohmann::json::parse(out[1])["dt"].empty());
  CHECK(nlohmann::json::parse(out[2]).contains("error"));
}

TEST_CASE("CSV tables carry a schema version") {
  PriorStats s;
  s.total = 3;
  s.prime = 2;
  s.unknots = 1;
  s.by_name = {{"3_1", 1}, {"0_1", 1}, {"3_1 # 4_1", 1}};
  s.by_crossings = {{0, 1}, {3, 1}, {7, 1}};
  const std::string knots = knot_counts_csv(s);
  CHECK(knots.rfind("schema_version,knot,crossings,prime,count\n", 0) == 0);
  CHECK(knots.find("1,\"3_1 # 4_1\",7,0,1") != std::string::npos);
  CHECK(knots.find("1,\"3_1\",3,1,1") != std::string::npos);
  CHECK(crossing_histogram_csv(s).find("1,3,1\n") != std::string::npos);
  const std::string js = jones_score_csv({"{\"braid\":[1,1,1],\"score\":0.5}"});
  CHECK(js == "schema_version,index,jones_span,score\n1,0,3,0.5\n");
}

TEST_CASE("command line: certify exit codes") {
  CHECK(run("certify --word \"[1,1,1]\" > /dev/null") == 3);
  CHECK(run("certify --word \"[1,-2,1,-2]\" > /dev/null") == 3);
  CHECK(run("certify --word \"[-1,2,1,-2]\" > /dev/null") == 0);
  CHECK(run("certify --word \"[2,1]\" > /dev/null") == 0);
  CHECK(run("certify --word \"[1,0]\" > /dev/null 2>&1") == 1);
  const std::string out = temp_path("certify.json");
  CHECK(run("certify --word \"[1,2,-1,3,-2]\" > " + out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "CertifiedUnknot");
  CHECK(j["certificate"]["success"] == true);
  std::remove(out.c_str());
}

TEST_CASE("command line: dataset and evaluate are reproducible") {
  const std::string a = temp_path("a.jsonl"), b = temp_path("b.jsonl");
  REQUIRE(run("dataset --n-letters 10 --count 10 --seed 3 --dt --out " + a) == 0);
  REQUIRE(run("dataset --n-letters 10 --count 10 --seed 3 --dt --threads 2 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).size() > 100);
  REQUIRE(run("evaluate --n-max 12 --episodes 20 --seed 4 --out " + a) == 0);
  REQUIRE(run("evaluate --n-max 12 --episodes 20 --seed 4 --threads 2 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  const auto report = nlohmann::json::parse(slurp(a));
  CHECK(report["episodes"] == 20);
  CHECK(run("dataset --n-letters 10 --count 10 > /dev/null 2>&1") != 0);  // seed is mandatory
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("command line: generate, invariants, stats, export-dt") {
  const std::string words = temp_path("words.jsonl"), csv = temp_path("stats.csv"), dt = temp_path("dt.jsonl");
  REQUIRE(run("generate --kind knot --n-letters 9 --count 30 --seed 1 --out " + words) == 0);
  REQUIRE(run("stats --mode knots --input " + words + " --out " + csv) == 0);
  CHECK(slurp(csv).rfind("schema_version,knot", 0) == 0);
  REQUIRE(run("stats --mode crossings --input " + words + " --out " + csv) == 0);
  CHECK(slurp(csv).rfind("schema_version,crossings", 0) == 0);
  REQUIRE(run("export-dt --input " + words + " --out " + dt) == 0);
  CHECK(slurp(dt).find("\"dt\"") != std::string::npos);
  REQUIRE(run("invariants --word \"[1,1,1]\" > " + csv) == 0);
  const auto j = nlohmann::json::parse(slurp(csv));
  CHECK(j["identified_as"] == "3_1");
  CHECK(j["dt"] == std::vector<int>{4, 6, 2});
  std::remove(words.c_str());
  std::remove(csv.c_str());
  std::remove(dt.c_str());
}
