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

#ifndef QENSIM_REPORT_HPP_
#define QENSIM_REPORT_HPP_

#include <optional>
#include <string>

#include "qensim/scenarios.hpp"

namespace qensim {

enum class OutputFormat { kJsonRecords, kCsv };

// Parses "json-records" / "csv"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string& name);

// Renders a report deterministically: keys in lexicographic order, numbers
// in shortest round-trip decimal form, UTF-8, LF line ends.  json-records is
// one JSON object per line; csv has a header plus one row per computed
// quantity (columns scenario_id,quantity,value,oracle,paper_value,
// conformance, empty paper_value when there is no reference).
std::string render_report(const ScenarioReport& report, OutputFormat format);

// Renders and writes to `output_path`, or to stdout when unset.  Returns the
// number of bytes written.
std::size_t emit_report(const ScenarioReport& report, OutputFormat format,
                        const std::optional<std::string>& output_path);

}  // namespace qensim

#endif  // QENSIM_REPORT_HPP_
