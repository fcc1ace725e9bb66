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

#include "qensim/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

namespace qensim {

namespace {

using nlohmann::json;

// Shortest decimal form that parses back to the same double; integral values
// keep a trailing ".0" so the column stays visibly numeric.
std::string number_text(double v) {
  return json(v).dump();
}

json parameters_json(const ScenarioReport& report) {
  json params = json::object();
  for (const auto& [key, value] : report.parameters) {
    std::visit([&](const auto& v) { params[key] = v; }, value);
  }
  return params;
}

std::string render_json(const ScenarioReport& report) {
  json computed = json::object();
  json oracles = json::object();
  for (const auto& [key, cv] : report.computed) {
    computed[key] = cv.value;
    oracles[key] = oracle_name(cv.oracle);
  }
  json refs = json::object();
  for (const auto& [key, value] : report.paper_reference_values)
    refs[key] = value;
  json conf = json::object();
  for (const auto& [key, c] : report.conformance)
    conf[key] = conformance_name(c);

  json j;
  j["computed"] = computed;
  j["conformance"] = conf;
  j["oracles"] = oracles;
  j["paper_reference_values"] = refs;
  j["parameters"] = parameters_json(report);
  j["scenario_id"] = report.scenario_id;
  j["seed"] = report.seed;
  return j.dump() + "\n";
}

std::string render_csv(const ScenarioReport& report) {
  std::string out = "scenario_id,quantity,value,oracle,paper_value,conformance\n";
  for (const auto& [key, cv] : report.computed) {
    out += report.scenario_id;
    out += ',';
    out += key;
    out += ',';
    out += number_text(cv.value);
    out += ',';
    out += oracle_name(cv.oracle);
    out += ',';
    const auto ref = report.paper_reference_values.find(key);
    if (ref != report.paper_reference_values.end())
      out += number_text(ref->second);
    out += ',';
    const auto conf = report.conformance.find(key);
    out += conformance_name(conf != report.conformance.end()
                                ? conf->second
                                : Conformance::kNoReference);
    out += '\n';
  }
  return out;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json-records") return OutputFormat::kJsonRecords;
  if (name == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("unknown output format: " + name);
}

std::string render_report(const ScenarioReport& report, OutputFormat format) {
  return format == OutputFormat::kJsonRecords ? render_json(report)
                                              : render_csv(report);
}

std::size_t emit_report(const ScenarioReport& report, OutputFormat format,
                        const std::optional<std::string>& output_path) {
  const std::string text = render_report(report, format);
  if (output_path) {
    std::ofstream out(*output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + *output_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + *output_path);
  } else {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  }
  return text.size();
}

}  // namespace qensim
