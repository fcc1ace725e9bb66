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

#include "qensim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qensim/sampling.hpp"

namespace qensim {

namespace {

// Born weights of a state across the eigenspaces of a decomposed observable.
// Weights below the floor are clamped to zero (unreachable branches); the
// rest are renormalized to sum to one.
std::vector<double> born_weights(const StateVector& psi,
                                 const std::vector<SpectralComponent>& comps) {
  std::vector<double> w(comps.size());
  double total = 0.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    double p = (comps[c].projector * psi.amplitudes()).squaredNorm();
    if (p < tol::kBornFloor) p = 0.0;
    w[c] = p;
    total += p;
  }
  if (total <= 0.0)
    throw std::runtime_error("born_weights: state has no reachable branch");
  for (double& p : w) p /= total;
  return w;
}

std::int64_t two_outcome_imbalance(
    const std::vector<std::pair<double, std::uint64_t>>& outcomes,
    std::uint64_t n) {
  if (outcomes.size() != 2) return 0;
  return static_cast<std::int64_t>(outcomes.front().second) -
         static_cast<std::int64_t>(n / 2);
}

}  // namespace

const char* bell_outcome_name(BellOutcome o) {
  switch (o) {
    case BellOutcome::kPhiPlus: return "phi_plus";
    case BellOutcome::kPhiMinus: return "phi_minus";
    case BellOutcome::kPsiPlus: return "psi_plus";
    case BellOutcome::kPsiMinus: return "psi_minus";
  }
  return "?";
}

SingleMeasurement measure_state(const StateVector& psi, const Observable& omega,
                                RngStream& rng) {
  if (psi.dim() != omega.dim())
    throw std::invalid_argument("measure_state: dimension mismatch");
  auto comps = spectral_decompose(omega);
  auto weights = born_weights(psi, comps);

  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    acc += weights[c];
    cdf[c] = acc;
  }
  std::size_t pick = sample_discrete(cdf, rng);
  while (weights[pick] == 0.0 && pick > 0) --pick;  // never select a clamped branch

  CVector projected = comps[pick].projector * psi.amplitudes();
  return SingleMeasurement{comps[pick].eigenvalue,
                           StateVector::normalized(std::move(projected)),
                           weights[pick]};
}

MeasurementRecord measure_ensemble(const Ensemble& e, const Observable& omega,
                                   RngStream& rng) {
  if (e.dim() != omega.dim())
    throw std::invalid_argument("measure_ensemble: dimension mismatch");
  auto comps = spectral_decompose(omega);

  std::vector<std::pair<double, std::uint64_t>> outcomes;
  outcomes.reserve(comps.size());
  for (const auto& c : comps) outcomes.emplace_back(c.eigenvalue, 0);

  double global_sum = 0.0;
  std::vector<EnsembleEntry> post;
  for (const auto& entry : e.entries()) {
    auto weights = born_weights(entry.state, comps);
    auto counts = sample_multinomial(entry.count, weights, rng);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (counts[c] == 0) continue;
      outcomes[c].second += counts[c];
      global_sum += comps[c].eigenvalue * static_cast<double>(counts[c]);
      CVector projected = comps[c].projector * entry.state.amplitudes();
      post.push_back(EnsembleEntry{
          StateVector::normalized(std::move(projected)), counts[c]});
    }
  }

  std::int64_t imb = two_outcome_imbalance(outcomes, e.total_count());
  return MeasurementRecord{std::move(outcomes),
                           Ensemble(std::move(post)), global_sum, imb};
}

RemoteCollapseResult measure_pairs_remote(const StateVector& pair_state,
                                          std::uint64_t n_pairs,
                                          const Observable& basis_b,
                                          RngStream& rng) {
  if (pair_state.n_qubits() != 2)
    throw std::invalid_argument("measure_pairs_remote: need a two-qubit state");
  if (basis_b.dim() != 2)
    throw std::invalid_argument(
        "measure_pairs_remote: basis must be a single-qubit observable");
  if (n_pairs == 0)
    throw std::invalid_argument("measure_pairs_remote: no pairs");
  auto comps = spectral_decompose(basis_b);
  if (comps.size() != 2)
    throw std::invalid_argument(
        "measure_pairs_remote: measurement basis must be nondegenerate");

  const CVector& psi = pair_state.amplitudes();
  struct Partial {
    double eigenvalue;
    CVector b_vec;
    CVector a_vec;
    double weight;
  };
  std::vector<Partial> partials;
  double total = 0.0;
  for (const auto& comp : comps) {
    // Rank-1 projector: recover the unit eigenvector from its largest column.
    Eigen::Index piv;
    comp.projector.diagonal().real().maxCoeff(&piv);
    CVector v = comp.projector.col(piv) / std::sqrt(comp.projector(piv, piv).real());
    CVector alpha(2);
    for (Eigen::Index a = 0; a < 2; ++a)
      alpha(a) = psi(2 * a) * std::conj(v(0)) + psi(2 * a + 1) * std::conj(v(1));
    double w = alpha.squaredNorm();
    if (w < tol::kBornFloor) continue;  // impossible outcome
    partials.push_back(Partial{comp.eigenvalue, std::move(v), std::move(alpha), w});
    total += w;
  }
  if (partials.empty())
    throw std::runtime_error("measure_pairs_remote: no reachable outcome");

  std::vector<double> weights;
  for (auto& p : partials) weights.push_back(p.weight / total);
  auto counts = sample_multinomial(n_pairs, weights, rng);

  std::vector<RemoteBranch> branches;
  std::vector<EnsembleEntry> a_entries, b_entries;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    auto& p = partials[i];
    RemoteBranch br{p.eigenvalue,
                    StateVector::normalized(std::move(p.b_vec)).canonical(),
                    StateVector::normalized(std::move(p.a_vec)).canonical(),
                    weights[i], counts[i]};
    if (counts[i] > 0) {
      a_entries.push_back(EnsembleEntry{br.state_a, counts[i]});
      b_entries.push_back(EnsembleEntry{br.state_b, counts[i]});
    }
    branches.push_back(std::move(br));
  }

  std::int64_t imb = 0;
  if (branches.size() == 2)
    imb = static_cast<std::int64_t>(branches.front().count) -
          static_cast<std::int64_t>(n_pairs / 2);
  return RemoteCollapseResult{Ensemble(std::move(a_entries)),
                              Ensemble(std::move(b_entries)),
                              std::move(branches), imb};
}

GlobalSumStats empirical_global_stats(const Ensemble& e, const Observable& omega,
                                      std::uint64_t trials, const RngStream& rng,
                                      int threads) {
  if (trials == 0)
    throw std::invalid_argument("empirical_global_stats: no trials");
  if (e.dim() != omega.dim())
    throw std::invalid_argument("empirical_global_stats: dimension mismatch");
  auto comps = spectral_decompose(omega);
  std::vector<double> eigenvalues;
  for (const auto& c : comps) eigenvalues.push_back(c.eigenvalue);

  // Shared per-entry branch tables; each trial only draws counts.
  std::vector<std::vector<double>> entry_weights;
  std::vector<std::uint64_t> entry_counts;
  for (const auto& entry : e.entries()) {
    entry_weights.push_back(born_weights(entry.state, comps));
    entry_counts.push_back(entry.count);
  }

  std::vector<double> sums(trials);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      RngStream local = rng.substream(t);
      double sum = 0.0;
      for (std::size_t k = 0; k < entry_weights.size(); ++k) {
        auto counts = sample_multinomial(entry_counts[k], entry_weights[k], local);
        for (std::size_t c = 0; c < counts.size(); ++c)
          sum += eigenvalues[c] * static_cast<double>(counts[c]);
      }
      sums[t] = sum;
    }
  };

  int n_threads = std::max(threads, 1);
  if (n_threads == 1 || trials < 2) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
      std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (double s : sums) mean += s;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double s : sums) ss += (s - mean) * (s - mean);
  double std_dev =
      trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  return GlobalSumStats{mean, std_dev, trials};
}

std::pair<BellOutcome, double> bell_basis_measure(const StateVector& psi,
                                                  RngStream& rng) {
  if (psi.n_qubits() != 2)
    throw std::invalid_argument("bell_basis_measure: need a two-qubit state");
  const CVector& a = psi.amplitudes();
  double p[4] = {0.5 * std::norm(a(0) + a(3)), 0.5 * std::norm(a(0) - a(3)),
                 0.5 * std::norm(a(1) + a(2)), 0.5 * std::norm(a(1) - a(2))};
  double total = 0.0;
  for (double& v : p) {
    if (v < tol::kBornFloor) v = 0.0;
    total += v;
  }
  std::vector<double> cdf(4);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += p[i] / total;
    cdf[i] = acc;
  }
  std::size_t pick = sample_discrete(cdf, rng);
  while (p[pick] == 0.0 && pick > 0) --pick;
  return {static_cast<BellOutcome>(pick), p[pick] / total};
}

}  // namespace qensim
