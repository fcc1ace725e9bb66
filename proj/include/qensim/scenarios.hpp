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

#ifndef QENSIM_SCENARIOS_HPP_
#define QENSIM_SCENARIOS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qensim {

// How a computed quantity was obtained.
enum class Oracle { kAnalytic, kMonteCarlo, kExhaustive };

// Relation of a computed quantity to its published reference value, if any.
enum class Conformance { kMatch, kMismatch, kNoReference };

const char* oracle_name(Oracle o);
const char* conformance_name(Conformance c);

struct ComputedValue {
  double value;
  Oracle oracle;
};

using ParamValue = std::variant<std::int64_t, double, std::string>;

// Self-describing result of one scenario run.  Reference values are
// conformance metadata: they are reported alongside the computed numbers and
// never act as assertions.
struct ScenarioReport {
  std::string scenario_id;
  std::map<std::string, ParamValue> parameters;
  std::uint64_t seed;
  std::map<std::string, ComputedValue> computed;
  std::map<std::string, double> paper_reference_values;
  std::map<std::string, Conformance> conformance;  // one entry per computed key

  // Attaches a computed value with no reference.
  void add(const std::string& key, double value, Oracle oracle);
  // Attaches a computed value plus its published reference; conformance is
  // match when |value - ref| <= abs_tol + rel_tol * |ref|.
  void add_with_reference(const std::string& key, double value, Oracle oracle,
                          double reference, double abs_tol, double rel_tol = 0.0);
};

struct DespagnatConfig {
  std::uint64_t n = 10000;       // molecules per ensemble (even)
  std::uint64_t trials = 10000;  // repeated global measurements
  int threads = 1;
};

struct CollapseConfig {
  std::uint64_t n = 10000;   // entangled pairs
  std::string basis = "z";   // remote measurement basis: "z" or "x"
  std::uint64_t runs = 1000; // independent repetitions of the whole chain
  int threads = 1;
};

struct PeresConfig {
  std::vector<std::uint64_t> sizes = {100, 400};  // ensemble sizes (even)
  std::uint64_t trials = 100000;                  // distinguisher trials
  int threads = 1;
};

struct PreskillConfig {
  std::uint64_t n = 10000;        // shared pairs
  std::string alice_basis = "x";  // "x" (same as published side) or "z"
  int threads = 1;
};

struct BellPairConfig {
  std::uint64_t trials = 10000;  // classification trials per source
  int threads = 1;
};

struct Bb84Config {
  std::uint64_t photons = 100000;
  std::string preparation = "four_state";    // "four_state" or "two_state"
  std::string eve = "intercept_resend_z";    // or "none"
  int threads = 1;
};

struct NmrConfig {
  std::uint64_t n = 1000000;     // molecules
  double epsilon = 0.01;         // pure-state admixture
  std::uint64_t trials = 20000;  // Monte Carlo repetitions
  double dm_tolerance = 1e-3;    // allowed compressed-dm gap (count rounding)
  int threads = 1;
};

// Two same-density-matrix ensembles with different compositions: one is an
// equal z-basis mixture, the other an equal x-basis mixture; the global
// sigma_z sum fluctuates as 0 vs sqrt(N).
ScenarioReport run_despagnat(const DespagnatConfig& cfg, std::uint64_t seed);

// Remote projective measurement over n Bell pairs: the local ensemble
// acquires a definite composition whose imbalance scales as sqrt(n)/2 while
// the local density matrix stays within O(1/sqrt(n)) of maximally mixed.
ScenarioReport run_collapse_chain(const CollapseConfig& cfg, std::uint64_t seed);

// Single-shot discrimination of a z-eigenstate mixture from a y-eigenstate
// mixture with the same density matrix; the failure probability decays as
// 1/sqrt(N).
ScenarioReport run_peres_distinguisher(const PeresConfig& cfg,
                                       std::uint64_t seed);

// Correlation test across shared pairs after one side publishes x-basis
// outcomes: same-basis agreement is perfect, cross-basis agreement is 1/2.
ScenarioReport run_preskill_correlation(const PreskillConfig& cfg,
                                        std::uint64_t seed);

// Two Bell-pair sources with identical reduced density matrices that a
// Bell-basis measurement tells apart with certainty.
ScenarioReport run_bell_pair_distinguish(const BellPairConfig& cfg,
                                         std::uint64_t seed);

// Quantum key distribution with an intercept-resend eavesdropper: the
// four-state protocol exposes the attack (QBER 1/4), the two-state variant
// leaks the key with zero error rate.
ScenarioReport run_bb84(const Bb84Config& cfg, std::uint64_t seed);

// Effective-pure-state composition vs product-state decomposition of the
// same density matrix, compared through global sigma_z x sigma_z
// fluctuations; audits the published coefficient tables verbatim.
ScenarioReport run_nmr_comparison(const NmrConfig& cfg, std::uint64_t seed);

}  // namespace qensim

#endif  // QENSIM_SCENARIOS_HPP_
