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

#include "qensim/ensemble.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qensim {

namespace {

// Descending lexicographic comparison of (re, im) amplitude sequences; puts
// computational basis states in natural |0...0>, |0...1>, ... order.
bool amplitude_order(const StateVector& a, const StateVector& b) {
  const CVector& x = a.amplitudes();
  const CVector& y = b.amplitudes();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).real() != y(i).real()) return x(i).real() > y(i).real();
    if (x(i).imag() != y(i).imag()) return x(i).imag() > y(i).imag();
  }
  return false;
}

// Amplitudes are quantized to a 1e-12 grid so the key is stable against the
// rounding noise of phase canonicalization; preparations closer than that
// merge as identical anyway.
void append_double(std::string& out, double v) {
  double q = std::round(v * 1e12) / 1e12;
  if (q == 0.0) q = 0.0;  // never print the sign of a negative zero
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, q);
  out.append(buf, res.ptr);
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleEntry> entries) : total_(0) {
  std::vector<EnsembleEntry> kept;
  for (auto& e : entries) {
    if (e.count == 0) continue;
    kept.push_back(EnsembleEntry{e.state.canonical(), e.count});
  }
  if (kept.empty())
    throw std::invalid_argument("ensemble has no members");
  for (const auto& e : kept)
    if (e.state.dim() != kept.front().state.dim())
      throw std::invalid_argument("ensemble members differ in dimension");

  // Merge preparations that are the same state up to global phase.
  for (auto& e : kept) {
    bool merged = false;
    for (auto& existing : entries_) {
      if (1.0 - fidelity_sq(existing.state, e.state) < tol::kMergeInfidelity) {
        existing.count += e.count;
        merged = true;
        break;
      }
    }
    if (!merged) entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const EnsembleEntry& a, const EnsembleEntry& b) {
              return amplitude_order(a.state, b.state);
            });
  for (const auto& e : entries_) total_ += e.count;
}

int Ensemble::n_qubits() const { return entries_.front().state.n_qubits(); }

Eigen::Index Ensemble::dim() const { return entries_.front().state.dim(); }

std::string state_fingerprint(const StateVector& state) {
  StateVector c = state.canonical();
  std::string out;
  for (Eigen::Index i = 0; i < c.dim(); ++i) {
    if (i) out.push_back(';');
    append_double(out, c.amplitude(i).real());
    out.push_back(',');
    append_double(out, c.amplitude(i).imag());
  }
  return out;
}

DensityMatrix compressed_dm(const Ensemble& e) {
  const double n = static_cast<double>(e.total_count());
  CMatrix acc = CMatrix::Zero(e.dim(), e.dim());
  for (const auto& entry : e.entries()) {
    const CVector& a = entry.state.amplitudes();
    acc += (static_cast<double>(entry.count) / n) * (a * a.adjoint());
  }
  return DensityMatrix(std::move(acc),
                       std::vector<int>(std::max(e.n_qubits(), 1), 2));
}

double sampling_expectation(const Ensemble& e, const Observable& omega) {
  const double n = static_cast<double>(e.total_count());
  double acc = 0.0;
  for (const auto& entry : e.entries())
    acc += static_cast<double>(entry.count) * expectation(entry.state, omega);
  return acc / n;
}

double global_expectation(const Ensemble& e, const Observable& omega) {
  return static_cast<double>(e.total_count()) *
         sampling_expectation(e, omega);
}

double per_state_variance(const StateVector& psi, const Observable& omega) {
  if (psi.dim() != omega.dim())
    throw std::invalid_argument("per_state_variance: dimension mismatch");
  // Moments over the spectral measure with weights normalized the same way
  // the measurement path normalizes Born weights; normalizing keeps the
  // moments of eigenstates exact (no last-ulp leakage from projector
  // arithmetic).
  double total = 0.0, first = 0.0, second = 0.0;
  for (const SpectralComponent& comp : spectral_decompose(omega)) {
    double w = (comp.projector * psi.amplitudes()).squaredNorm();
    if (w < tol::kBornFloor) w = 0.0;
    total += w;
    first += w * comp.eigenvalue;
    second += w * comp.eigenvalue * comp.eigenvalue;
  }
  if (total <= 0.0)
    throw std::runtime_error("per_state_variance: spectral weights vanished");
  first /= total;
  second /= total;
  const double var = second - first * first;
  return var > 0.0 ? var : 0.0;
}

double global_fluctuation(const Ensemble& e, const Observable& omega) {
  double acc = 0.0;
  for (const auto& entry : e.entries())
    acc += static_cast<double>(entry.count) *
           per_state_variance(entry.state, omega);
  return std::sqrt(acc);
}

StateVector full_state(const Ensemble& e) {
  const std::uint64_t width =
      e.total_count() * static_cast<std::uint64_t>(e.n_qubits());
  if (width > 20)
    throw std::length_error(
        "full_state: joint register exceeds the 20-qubit guard");
  CVector acc;
  bool first = true;
  for (const auto& entry : e.entries()) {
    for (std::uint64_t c = 0; c < entry.count; ++c) {
      if (first) {
        acc = entry.state.amplitudes();
        first = false;
      } else {
        acc = tensor_product(acc, entry.state.amplitudes()).eval();
      }
    }
  }
  return StateVector(std::move(acc));
}

bool same_composition(const Ensemble& a, const Ensemble& b) {
  if (a.total_count() != b.total_count()) return false;
  if (a.entries().size() != b.entries().size()) return false;
  if (a.dim() != b.dim()) return false;
  std::vector<bool> used(b.entries().size(), false);
  for (const auto& ea : a.entries()) {
    bool found = false;
    for (std::size_t j = 0; j < b.entries().size(); ++j) {
      if (used[j]) continue;
      const auto& eb = b.entries()[j];
      if (ea.count == eb.count &&
          1.0 - fidelity_sq(ea.state, eb.state) < tol::kMergeInfidelity) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

CompositionReport composition_report(const Ensemble& e) {
  const double total = static_cast<double>(e.total_count());
  std::vector<std::pair<std::string, double>> weights;
  weights.reserve(e.entries().size());
  for (const auto& entry : e.entries())
    weights.emplace_back(state_fingerprint(entry.state),
                         static_cast<double>(entry.count) / total);
  return CompositionReport{e.total_count(), std::move(weights),
                           compressed_dm(e)};
}

}  // namespace qensim
