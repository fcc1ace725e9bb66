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

#include "qensim/nmr.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qensim/measurement.hpp"
#include "qensim/states.hpp"

namespace qensim {

namespace {
constexpr double kTraceRowWeight = 1000.0;  // unit-trace equation emphasis
constexpr double kFeasibleTol = 1e-10;
}  // namespace

DensityMatrix effective_dm(const EffectivePureState& eps_state) {
  const double eps = eps_state.epsilon;
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("effective_dm: epsilon outside (0, 1]");
  const Eigen::Index d = eps_state.rho_eff.dim();
  CMatrix m = ((1.0 - eps) / static_cast<double>(d)) *
                  CMatrix::Identity(d, d) +
              eps * eps_state.rho_eff.entries();
  return DensityMatrix(std::move(m), eps_state.rho_eff.dims());
}

PauliDictionary::PauliDictionary()
    : states_{states::plus_x(),  states::plus_y(),  states::ket0(),
              states::minus_x(), states::minus_y(), states::ket1()},
      labels_{"x+", "y+", "z+", "x-", "y-", "z-"} {
  const CMatrix paulis[3] = {states::pauli_x(), states::pauli_y(),
                             states::pauli_z()};
  for (int axis = 0; axis < 3; ++axis) {
    projectors_[axis] = (states::identity(2) + paulis[axis]) / 2.0;
    projectors_[axis + 3] = (states::identity(2) - paulis[axis]) / 2.0;
  }
}

const CMatrix& PauliDictionary::projector(int i) const {
  if (i < 0 || i >= kSize)
    throw std::out_of_range("PauliDictionary: index out of range");
  return projectors_[i];
}

const StateVector& PauliDictionary::state(int i) const {
  if (i < 0 || i >= kSize)
    throw std::out_of_range("PauliDictionary: index out of range");
  return states_[i];
}

CMatrix PauliDictionary::product_projector(int i, int j) const {
  return tensor_product(projector(i), projector(j));
}

StateVector PauliDictionary::product_state(int i, int j) const {
  return tensor_product(state(i), state(j));
}

const std::string& PauliDictionary::label(int i) const {
  if (i < 0 || i >= kSize)
    throw std::out_of_range("PauliDictionary: index out of range");
  return labels_[i];
}

ProductDecomposition::ProductDecomposition(Coefficients c) : c_(c) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (weight(i, j) < -1e-12)
        throw std::invalid_argument(
            "ProductDecomposition: negative weight at cell (" +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

ProductDecomposition ProductDecomposition::from_table(
    const Coefficients& table_in_eps, double epsilon) {
  Coefficients c;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) c[i][j] = table_in_eps[i][j] * epsilon;
  return ProductDecomposition(c);
}

double ProductDecomposition::weight_sum() const {
  double s = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s += weight(i, j);
  return s;
}

double ProductDecomposition::coefficient_sum() const {
  double s = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s += c_[i][j];
  return s;
}

CMatrix decomposition_dm(const ProductDecomposition& dec,
                         const PauliDictionary& dict) {
  CMatrix acc = CMatrix::Zero(4, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      acc += dec.weight(i, j) * dict.product_projector(i, j);
  return acc;
}

DecompositionCheck verify_decomposition(const ProductDecomposition& dec,
                                        const PauliDictionary& dict,
                                        const DensityMatrix& target) {
  if (target.dim() != 4)
    throw std::invalid_argument("verify_decomposition: need a two-qubit target");
  CMatrix recon = decomposition_dm(dec, dict);
  double min_w = dec.weight(0, 0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) min_w = std::min(min_w, dec.weight(i, j));
  return DecompositionCheck{max_abs_diff(recon, target.entries()),
                            dec.weight_sum() - 1.0, min_w};
}

namespace {

// Dense non-negative least squares, Lawson-Hanson active set.  Sizes here
// are tiny (33 x 36), so plain QR subproblems are plenty.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<int> passive;
  std::vector<bool> in_passive(n, false);

  const double a_scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  Eigen::VectorXd residual = b - a * x;
  Eigen::VectorXd w = a.transpose() * residual;

  auto solve_passive = [&](void) -> Eigen::VectorXd {
    Eigen::MatrixXd ap(a.rows(), passive.size());
    for (std::size_t c = 0; c < passive.size(); ++c)
      ap.col(c) = a.col(passive[c]);
    return ap.colPivHouseholderQr().solve(b);
  };

  const int max_outer = 10 * n;
  for (int outer = 0; outer < max_outer; ++outer) {
    // Dual feasibility, relative to the remaining misfit: a representable
    // target is pursued down to rounding level, while an unrepresentable one
    // terminates once every gradient entry is negligible against its
    // irreducible residual.
    const double grad_tol = 1e-10 * a_scale * residual.norm();
    int best = -1;
    double best_w = grad_tol;
    for (int j = 0; j < n; ++j)
      if (!in_passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive.push_back(best);
    in_passive[best] = true;

    for (int inner = 0; inner < max_outer; ++inner) {
      Eigen::VectorXd z = solve_passive();
      double min_z = z.minCoeff();
      if (min_z > 0.0) {
        for (std::size_t c = 0; c < passive.size(); ++c)
          x(passive[c]) = z(c);
        break;
      }
      // Step toward z only as far as feasibility allows, then drop the
      // variables pinned at zero.
      double alpha = 1.0;
      for (std::size_t c = 0; c < passive.size(); ++c)
        if (z(c) <= 0.0) {
          double xc = x(passive[c]);
          alpha = std::min(alpha, xc / (xc - z(c)));
        }
      for (std::size_t c = 0; c < passive.size(); ++c) {
        double nx = x(passive[c]) + alpha * (z(c) - x(passive[c]));
        x(passive[c]) = nx;
      }
      std::vector<int> next;
      for (int idx : passive) {
        if (x(idx) <= 1e-14) {
          x(idx) = 0.0;
          in_passive[idx] = false;
        } else {
          next.push_back(idx);
        }
      }
      passive = std::move(next);
      if (passive.empty()) break;
    }
    residual = b - a * x;
    w = a.transpose() * residual;
  }
  return x;
}

}  // namespace

DecompositionSolve solve_product_decomposition(const DensityMatrix& target,
                                               const PauliDictionary& dict) {
  if (target.dim() != 4)
    throw std::invalid_argument(
        "solve_product_decomposition: need a two-qubit target");

  // 32 rows: real and imaginary parts of every matrix entry; one more row
  // enforces unit total weight (every product projector has unit trace).
  Eigen::MatrixXd a(33, 36);
  Eigen::VectorXd b(33);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CMatrix pp = dict.product_projector(i, j);
      int col = 6 * i + j;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          a(4 * r + c, col) = pp(r, c).real();
          a(16 + 4 * r + c, col) = pp(r, c).imag();
        }
      a(32, col) = kTraceRowWeight;
    }
  const CMatrix& t = target.entries();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      b(4 * r + c) = t(r, c).real();
      b(16 + 4 * r + c) = t(r, c).imag();
    }
  b(32) = kTraceRowWeight;

  Eigen::VectorXd weights = nnls(a, b);

  ProductDecomposition::Coefficients coeffs;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      coeffs[i][j] = 4.0 * weights(6 * i + j) - 1.0 / 9.0;
  ProductDecomposition dec(coeffs);

  double residual = max_abs_diff(decomposition_dm(dec, dict), t);
  double trace_error = std::abs(dec.weight_sum() - 1.0);
  bool feasible = residual < kFeasibleTol && trace_error < kFeasibleTol;
  return DecompositionSolve{dec, residual, trace_error, feasible};
}

Observable sigma_zz() {
  return Observable(tensor_product(states::pauli_z(), states::pauli_z()),
                    "sigma_z*sigma_z");
}

CMatrix partial_transpose(const CMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw std::invalid_argument("partial_transpose: need a 4x4 matrix");
  CMatrix out(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out.block<2, 2>(2 * a, 2 * b) =
          m.block<2, 2>(2 * a, 2 * b).transpose();
  return out;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("ppt_min_eigenvalue: need a two-qubit state");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(partial_transpose(rho.entries()),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {
std::uint64_t round_half_up(double x) {
  return static_cast<std::uint64_t>(std::floor(x + 0.5));
}
}  // namespace

Ensemble effective_bell_ensemble(std::uint64_t n_total, double epsilon,
                                 std::uint64_t* rounding_error) {
  if (n_total == 0)
    throw std::invalid_argument("effective_bell_ensemble: empty ensemble");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("effective_bell_ensemble: epsilon outside [0, 1]");
  const double n = static_cast<double>(n_total);
  std::uint64_t n_bell = round_half_up(epsilon * n);
  std::uint64_t n_basis = round_half_up((1.0 - epsilon) * n / 4.0);

  std::vector<EnsembleEntry> entries;
  entries.push_back(EnsembleEntry{states::bell_phi_plus(), n_bell});
  for (int k = 0; k < 4; ++k)
    entries.push_back(EnsembleEntry{states::basis_state(2, k), n_basis});
  Ensemble out(std::move(entries));
  if (rounding_error) {
    std::uint64_t realized = out.total_count();
    *rounding_error = realized > n_total ? realized - n_total
                                         : n_total - realized;
  }
  return out;
}

Ensemble decomposition_ensemble(const ProductDecomposition& dec,
                                const PauliDictionary& dict,
                                std::uint64_t n_total,
                                double* max_count_rounding) {
  if (n_total == 0)
    throw std::invalid_argument("decomposition_ensemble: empty ensemble");
  const double n = static_cast<double>(n_total);
  std::vector<EnsembleEntry> entries;
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double exact = dec.weight(i, j) * n;
      std::uint64_t count = exact > 0.0 ? round_half_up(exact) : 0;
      worst = std::max(worst, std::abs(static_cast<double>(count) - exact));
      if (count > 0)
        entries.push_back(EnsembleEntry{dict.product_state(i, j), count});
    }
  if (max_count_rounding) *max_count_rounding = worst;
  return Ensemble(std::move(entries));
}

ComparisonReport compare_compositions(const Ensemble& a, const Ensemble& b,
                                      const Observable& omega,
                                      const CompareOptions& options,
                                      const RngStream& rng) {
  DensityMatrix rho_a = compressed_dm(a);
  DensityMatrix rho_b = compressed_dm(b);
  double diff = max_abs_diff(rho_a.entries(), rho_b.entries());

  GlobalSumStats stats_a = empirical_global_stats(
      a, omega, options.trials, rng.substream(1), options.threads);
  GlobalSumStats stats_b = empirical_global_stats(
      b, omega, options.trials, rng.substream(2), options.threads);

  return ComparisonReport{global_fluctuation(a, omega),
                          global_fluctuation(b, omega),
                          stats_a.std_dev,
                          stats_b.std_dev,
                          stats_a.mean,
                          stats_b.mean,
                          diff,
                          diff <= options.dm_tolerance,
                          options.dm_tolerance};
}

ProductDecomposition::Coefficients builtin_effective_bell_table() {
  ProductDecomposition::Coefficients c{};
  c[0][0] = 1.0;
  c[0][2] = -1.0;
  c[1][1] = -1.0;
  c[1][4] = 1.0;
  c[2][2] = 1.0;
  c[2][5] = 1.0;
  c[3][0] = -1.0;
  c[3][3] = 1.0;
  c[4][1] = 1.0;
  c[4][4] = -1.0;
  c[5][2] = -1.0;
  c[5][5] = 1.0;
  return c;
}

ProductDecomposition::Coefficients builtin_effective_xplus0_table() {
  ProductDecomposition::Coefficients c{};
  c[0][0] = 1.0 / 3.0;
  c[0][1] = 1.0 / 3.0;
  c[0][2] = 5.0 / 3.0;
  c[0][3] = -1.0 / 3.0;
  c[1][2] = 1.0 / 3.0;
  c[2][2] = 1.0;
  c[3][0] = -1.0 / 2.0;
  c[3][1] = -1.0 / 3.0;
  c[3][2] = -1.0;
  c[3][3] = -1.0 / 3.0;
  c[3][4] = -1.0 / 3.0;
  c[3][5] = 1.0;
  c[4][2] = 1.0 / 3.0;
  c[4][5] = -1.0 / 3.0;
  c[5][2] = 1.0 / 3.0;
  c[5][5] = -1.0 / 3.0;
  return c;
}

ProductDecomposition::Coefficients load_coefficient_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_coefficient_table: cannot open " + path);
  ProductDecomposition::Coefficients c{};
  std::string line;
  if (!std::getline(in, line) || line.rfind("row,col,coeff_eps", 0) != 0)
    throw std::runtime_error("load_coefficient_table: bad header in " + path);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    int idx[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("load_coefficient_table: short row at line " +
                                 std::to_string(lineno));
      idx[k] = std::stoi(cell);
      if (idx[k] < 1 || idx[k] > 6)
        throw std::runtime_error("load_coefficient_table: index out of range "
                                 "at line " + std::to_string(lineno));
    }
    if (!std::getline(row, cell))
      throw std::runtime_error("load_coefficient_table: missing value at line " +
                               std::to_string(lineno));
    c[idx[0] - 1][idx[1] - 1] = std::stod(cell);
  }
  return c;
}

}  // namespace qensim
