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

#ifndef QENSIM_MEASUREMENT_HPP_
#define QENSIM_MEASUREMENT_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qensim/ensemble.hpp"
#include "qensim/qmath.hpp"
#include "qensim/rng.hpp"

namespace qensim {

// Result of one projective measurement on a single state.
struct SingleMeasurement {
  double eigenvalue;       // clustered eigenvalue of the realized outcome
  StateVector post_state;  // normalized projected state
  double probability;      // exact Born weight of the realized branch
};

// Result of measuring every member of an ensemble once.
struct MeasurementRecord {
  // (eigenvalue, multiplicity), ascending by eigenvalue; zero-count outcomes
  // are kept so the layout is observable-determined, not draw-determined.
  std::vector<std::pair<double, std::uint64_t>> outcomes;
  Ensemble post_ensemble;   // collapsed members, exact counts
  double global_sum;        // sum of realized eigenvalues over all members
  // For two-outcome observables: count(lower eigenvalue) - N/2, the surplus
  // of lower-eigenvalue results over an even split.  Zero otherwise.
  std::int64_t imbalance;
};

// One conditional branch of a remote pair measurement.
struct RemoteBranch {
  double eigenvalue;       // B outcome
  StateVector state_b;     // B eigenstate for this outcome
  StateVector state_a;     // conditional collapsed state on A
  double probability;      // exact Born weight
  std::uint64_t count;     // realized occurrences
};

// Outcome of measuring matched pairs remotely: subsystem B is measured in a
// nondegenerate basis, subsystem A keeps the conditional collapsed states.
struct RemoteCollapseResult {
  Ensemble ensemble_a;
  Ensemble ensemble_b;
  // Possible outcomes (Born weight > 0) ascending by eigenvalue; branches
  // that were never realized keep count 0.
  std::vector<RemoteBranch> branches;
  std::int64_t imbalance;  // count(lower eigenvalue) - n_pairs/2
};

// Mean and sample standard deviation (denominator trials - 1) of the global
// sum over repeated full-ensemble measurements.
struct GlobalSumStats {
  double mean;
  double std_dev;
  std::uint64_t trials;
};

enum class BellOutcome { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

const char* bell_outcome_name(BellOutcome o);

// Projective measurement with Born-rule branch selection and collapse.
// Branch weights below 1e-12 are clamped to zero (unreachable branches).
SingleMeasurement measure_state(const StateVector& psi, const Observable& omega,
                                RngStream& rng);

// Measures every member of `e` once.  Statistically identical to repeated
// measure_state calls; members of equal preparation share precomputed branch
// tables so the cost is O(total_count) cheap draws.
MeasurementRecord measure_ensemble(const Ensemble& e, const Observable& omega,
                                   RngStream& rng);

// Takes n_pairs copies of a two-qubit state (qubit 0 = A, qubit 1 = B),
// measures B of each pair in `basis_b` (a nondegenerate single-qubit
// observable), and returns the conditional ensembles on both sides.
RemoteCollapseResult measure_pairs_remote(const StateVector& pair_state,
                                          std::uint64_t n_pairs,
                                          const Observable& basis_b,
                                          RngStream& rng);

// Repeats the full-ensemble global-sum measurement `trials` times and
// reports mean and sample std of the realized sums.  Each trial draws from
// its own substream, so the result is independent of `threads`.
GlobalSumStats empirical_global_stats(const Ensemble& e, const Observable& omega,
                                      std::uint64_t trials, const RngStream& rng,
                                      int threads = 1);

// Projective measurement of a two-qubit state in the Bell basis.
std::pair<BellOutcome, double> bell_basis_measure(const StateVector& psi,
                                                  RngStream& rng);

}  // namespace qensim

#endif  // QENSIM_MEASUREMENT_HPP_
