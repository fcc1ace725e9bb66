// Copyright 2026 The qensim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qensim/report.hpp"
#include "qensim/scenarios.hpp"

using namespace qensim;
using nlohmann::json;

namespace {

ScenarioReport sample_report() {
  ScenarioReport r;
  r.scenario_id = "despagnat";
  r.seed = 42;
  r.parameters["n"] = static_cast<std::int64_t>(10000);
  r.parameters["label"] = std::string("S2");
  r.parameters["scale"] = 0.5;
  r.add_with_reference("delta_sigma_z_S2", 100.0, Oracle::kAnalytic, 100.0,
                       1e-10);
  r.add("mc_mean_S2", -0.3125, Oracle::kMonteCarlo);
  r.add_with_reference("skewed", 3.5, Oracle::kExhaustive, 2.0, 0.1);
  return r;
}

}  // namespace

TEST_CASE("format names parse strictly") {
  CHECK(parse_output_format("json-records") == OutputFormat::kJsonRecords);
  CHECK(parse_output_format("csv") == OutputFormat::kCsv);
  CHECK_THROWS_AS(parse_output_format("yaml"), std::invalid_argument);
  CHECK_THROWS_AS(parse_output_format("JSON-RECORDS"), std::invalid_argument);
  CHECK_THROWS_AS(parse_output_format(""), std::invalid_argument);
}

TEST_CASE("json rendering is one lexicographically ordered line") {
  const std::string text =
      render_report(sample_report(), OutputFormat::kJsonRecords);
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  // exactly one line: no interior newline
  CHECK(text.find('\n') == text.size() - 1);

  const json doc = json::parse(text);
  const std::vector<std::string> expected_top = {
      "computed",   "conformance", "oracles", "paper_reference_values",
      "parameters", "scenario_id", "seed"};
  std::vector<std::string> top;
  for (auto it = doc.begin(); it != doc.end(); ++it) top.push_back(it.key());
  CHECK(top == expected_top);

  // serialized key order in the raw text is lexicographic as well
  std::size_t pos = 0;
  for (const auto& key : expected_top) {
    const std::size_t at = text.find("\"" + key + "\"", pos);
    REQUIRE(at != std::string::npos);
    pos = at;
  }

  CHECK(doc["scenario_id"] == "despagnat");
  CHECK(doc["seed"] == 42);
  CHECK(doc["parameters"]["n"] == 10000);
  CHECK(doc["parameters"]["label"] == "S2");
  CHECK(doc["parameters"]["scale"] == 0.5);
  CHECK(doc["computed"]["delta_sigma_z_S2"] == 100.0);
  CHECK(doc["oracles"]["delta_sigma_z_S2"] == "analytic");
  CHECK(doc["oracles"]["mc_mean_S2"] == "monte-carlo");
  CHECK(doc["oracles"]["skewed"] == "exhaustive");
  CHECK(doc["conformance"]["delta_sigma_z_S2"] == "match");
  CHECK(doc["conformance"]["mc_mean_S2"] == "no-reference");
  CHECK(doc["conformance"]["skewed"] == "mismatch");
  CHECK(doc["paper_reference_values"]["delta_sigma_z_S2"] == 100.0);
  CHECK(doc["paper_reference_values"].count("mc_mean_S2") == 0);
}

TEST_CASE("csv rendering matches the frozen layout") {
  const std::string text = render_report(sample_report(), OutputFormat::kCsv);
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "scenario_id,quantity,value,oracle,paper_value,conformance");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "despagnat,delta_sigma_z_S2,100.0,analytic,100.0,match");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "despagnat,mc_mean_S2,-0.3125,monte-carlo,,no-reference");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "despagnat,skewed,3.5,exhaustive,2.0,mismatch");
  CHECK(!std::getline(lines, line));
  CHECK(text.back() == '\n');
}

TEST_CASE("numbers survive a full write-read round trip") {
  ScenarioReport r;
  r.scenario_id = "roundtrip";
  r.seed = 0;
  const double values[] = {0.1 + 0.2,
                           3.141592653589793,
                           -1.0 / 3.0,
                           1e-17,
                           123456789.123456789,
                           2.2250738585072014e-308,
                           0.0};
  int idx = 0;
  for (const double v : values) {
    r.add("v" + std::to_string(idx++), v, Oracle::kAnalytic);
  }
  const json doc =
      json::parse(render_report(r, OutputFormat::kJsonRecords));
  idx = 0;
  for (const double v : values) {
    const double back = doc["computed"]["v" + std::to_string(idx++)];
    CHECK(back == v);
  }

  // csv column three must round trip as well
  const std::string csv = render_report(r, OutputFormat::kCsv);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  idx = 0;
  while (std::getline(lines, line)) {
    const std::size_t a = line.find(',');
    const std::size_t b = line.find(',', a + 1);
    const std::size_t c = line.find(',', b + 1);
    const double back = std::stod(line.substr(b + 1, c - b - 1));
    CHECK(back == values[idx++]);
  }
  CHECK(idx == 7);
}

TEST_CASE("negative zero is reported as plain zero") {
  ScenarioReport r;
  r.scenario_id = "zero";
  r.seed = 0;
  r.add("z", -0.0, Oracle::kAnalytic);
  const std::string csv = render_report(r, OutputFormat::kCsv);
  CHECK(csv.find("-0") == std::string::npos);
  CHECK(csv.find("zero,z,0.0,analytic,,no-reference\n") != std::string::npos);
}

TEST_CASE("file emission writes exactly the rendered bytes") {
  const auto path = std::filesystem::temp_directory_path() /
                    "qensim_report_test.json";
  const ScenarioReport r = sample_report();
  const std::string expected =
      render_report(r, OutputFormat::kJsonRecords);
  const std::size_t written =
      emit_report(r, OutputFormat::kJsonRecords, path.string());
  CHECK(written == expected.size());
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == expected);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(
      emit_report(r, OutputFormat::kCsv, std::string("/nonexistent-dir/x.csv")),
      std::runtime_error);
}
