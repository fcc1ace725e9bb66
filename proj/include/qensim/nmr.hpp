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

#ifndef QENSIM_NMR_HPP_
#define QENSIM_NMR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qensim/ensemble.hpp"
#include "qensim/qmath.hpp"
#include "qensim/rng.hpp"

namespace qensim {

// Highly mixed state with a small effective admixture, as prepared in
// room-temperature bulk spin resonance:
//   rho = (1 - epsilon)/d * I + epsilon * rho_eff.
struct EffectivePureState {
  double epsilon;         // in (0, 1]
  DensityMatrix rho_eff;  // the effective component (usually pure)
};

DensityMatrix effective_dm(const EffectivePureState& eps_state);

// The six single-qubit polarization projectors P = (I +- sigma_axis)/2,
// indexed 0..5 as x+, y+, z+, x-, y-, z-.  Each is rank one; its unit
// eigenvector is the corresponding polarized pure state.
class PauliDictionary {
 public:
  static constexpr int kSize = 6;

  const CMatrix& projector(int i) const;            // 2x2
  const StateVector& state(int i) const;            // unit eigenvector
  CMatrix product_projector(int i, int j) const;    // P_i (x) P_j, 4x4
  StateVector product_state(int i, int j) const;    // state(i) (x) state(j)
  const std::string& label(int i) const;            // "x+", ..., "z-"

  PauliDictionary();

 private:
  std::array<CMatrix, kSize> projectors_;
  std::array<StateVector, kSize> states_;
  std::array<std::string, kSize> labels_;
};

// Two-qubit mixture over the 36 polarization products:
//   sum_ij w_ij P_i (x) P_j   with   w_ij = (1/9 + C_ij)/4.
// Weights must be non-negative within 1e-12 (convex mixture of product
// states); the total weight is reported, never forced to one.
class ProductDecomposition {
 public:
  using Coefficients = std::array<std::array<double, 6>, 6>;

  explicit ProductDecomposition(Coefficients c);

  // Scales a table given in units of epsilon.
  static ProductDecomposition from_table(const Coefficients& table_in_eps,
                                         double epsilon);

  double coefficient(int i, int j) const { return c_[i][j]; }
  double weight(int i, int j) const { return (1.0 / 9.0 + c_[i][j]) / 4.0; }
  double weight_sum() const;
  double coefficient_sum() const;

 private:
  Coefficients c_;
};

// sum_ij w_ij P_i (x) P_j.  Returned as a raw matrix: published coefficient
// tables do not always reconstruct a unit-trace operator, and that defect is
// part of what verify_decomposition reports.
CMatrix decomposition_dm(const ProductDecomposition& dec,
                         const PauliDictionary& dict);

struct DecompositionCheck {
  double max_abs_residual;  // max |reconstruction - target| entry
  double trace_deficit;     // signed: (sum of weights) - 1
  double min_weight;
};

DecompositionCheck verify_decomposition(const ProductDecomposition& dec,
                                        const PauliDictionary& dict,
                                        const DensityMatrix& target);

struct DecompositionSolve {
  ProductDecomposition decomposition;
  double residual;      // max |reconstruction - target| entry
  double trace_error;   // |sum of weights - 1|
  bool feasible;        // residual < 1e-10 and trace_error < 1e-10
};

// Non-negative least squares (active-set) fit of the 36 product-projector
// weights to `target`, with the unit-trace condition as a heavily weighted
// extra equation.  Deterministic.  A residual above 1e-8 is a reliable
// infeasibility verdict for states this solver cannot represent.
DecompositionSolve solve_product_decomposition(const DensityMatrix& target,
                                               const PauliDictionary& dict);

// sigma_z (x) sigma_z on two qubits.
Observable sigma_zz();

// Partial transpose over the second qubit of a two-qubit operator.
CMatrix partial_transpose(const CMatrix& m);

// Minimum eigenvalue of the partial transpose: negative iff the two-qubit
// state is entangled (exact witness in dimension 2x2).
double ppt_min_eigenvalue(const DensityMatrix& rho);

// Composition the effective-pure picture assigns to N molecules with a Bell
// target: round(eps*N) genuine pair states plus round((1-eps)*N/4) in each
// two-qubit basis state (round half up).  `rounding_error` receives
// |sum of rounded counts - n_total|.
Ensemble effective_bell_ensemble(std::uint64_t n_total, double epsilon,
                                 std::uint64_t* rounding_error = nullptr);

// Composition realizing a product decomposition with integer counts:
// round(w_ij * N) molecules in each product state.  `max_count_rounding`
// receives the largest |rounded - exact| over the 36 cells.
Ensemble decomposition_ensemble(const ProductDecomposition& dec,
                                const PauliDictionary& dict,
                                std::uint64_t n_total,
                                double* max_count_rounding = nullptr);

struct CompareOptions {
  std::uint64_t trials = 20000;
  int threads = 1;
  double dm_tolerance = 1e-12;  // required closeness of the compressed dms
};

// Head-to-head fluctuation comparison of two compositions that compress to
// (nearly) the same density matrix.
struct ComparisonReport {
  double fluct_a_analytic;
  double fluct_b_analytic;
  double fluct_a_mc;
  double fluct_b_mc;
  double mean_a_mc;
  double mean_b_mc;
  double dm_max_difference;
  bool dm_within_tolerance;
  double dm_tolerance;
};

ComparisonReport compare_compositions(const Ensemble& a, const Ensemble& b,
                                      const Observable& omega,
                                      const CompareOptions& options,
                                      const RngStream& rng);

// 6x6 coefficient tables in units of epsilon.  The built-in tables mirror
// the published ones verbatim, typos included; the CSV loader reads the same
// layout from disk (header "row,col,coeff_eps", 1-indexed cells, omitted
// cells are zero).
ProductDecomposition::Coefficients builtin_effective_bell_table();
ProductDecomposition::Coefficients builtin_effective_xplus0_table();
ProductDecomposition::Coefficients load_coefficient_table(
    const std::string& path);

}  // namespace qensim

#endif  // QENSIM_NMR_HPP_
