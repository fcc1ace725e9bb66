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

#ifndef QENSIM_ENSEMBLE_HPP_
#define QENSIM_ENSEMBLE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qensim/qmath.hpp"

namespace qensim {

struct EnsembleEntry {
  StateVector state;
  std::uint64_t count;
};

// A finite collection of identically-dimensioned pure states with exact
// integer multiplicities: the physical preparation record, which carries
// strictly more information than the density matrix it compresses to.
//
// Construction canonicalizes: zero-count entries are dropped, each state is
// put in global-phase canonical form, entries whose states agree up to
// 1 - F^2 < 1e-12 are merged (counts added), and the result is sorted by
// amplitude sequence, descending lexicographically on (re, im) pairs -- which
// places computational basis states in natural |00..0>, |00..1>, ... order.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleEntry> entries);

  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  std::uint64_t total_count() const { return total_; }
  int n_qubits() const;
  Eigen::Index dim() const;

 private:
  std::vector<EnsembleEntry> entries_;
  std::uint64_t total_;
};

struct CompositionReport {
  std::uint64_t total_count;
  // One line per entry, in canonical order: (state fingerprint, N_k/N).
  std::vector<std::pair<std::string, double>> weights;
  DensityMatrix compressed;
};

// Canonical text form of a state's canonical-phase amplitudes; equal
// fingerprints imply equal states up to the merge tolerance.
std::string state_fingerprint(const StateVector& state);

// rho = (1/N) sum_k N_k |psi_k><psi_k|.
DensityMatrix compressed_dm(const Ensemble& e);

// Mean of <Omega> over single-molecule draws: (1/N) sum_k N_k <Omega>_k.
double sampling_expectation(const Ensemble& e, const Observable& omega);

// Expected value of the molecule-summed observable: N * sampling_expectation.
double global_expectation(const Ensemble& e, const Observable& omega);

// <Omega^2> - <Omega>^2 for a single pure state.
double per_state_variance(const StateVector& psi, const Observable& omega);

// Root-mean-square fluctuation of the molecule-summed observable when every
// member is measured once:
//   Delta = sqrt( sum_k N_k (<Omega^2>_k - <Omega>_k^2) ).
// Depends on the composition, not just the compressed density matrix.
double global_fluctuation(const Ensemble& e, const Observable& omega);

// Ordered tensor product of every member (canonical order, counts expanded).
// Guarded: total_count * n_qubits must not exceed 20.
StateVector full_state(const Ensemble& e);

// True when the two ensembles contain the same states (up to global phase
// and the merge tolerance) with identical counts.
bool same_composition(const Ensemble& a, const Ensemble& b);

CompositionReport composition_report(const Ensemble& e);

}  // namespace qensim

#endif  // QENSIM_ENSEMBLE_HPP_
