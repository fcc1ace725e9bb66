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

#ifndef QENSIM_QMATH_HPP_
#define QENSIM_QMATH_HPP_

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qensim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Numerical tolerances shared across the library.  Validation tolerances are
// deliberately tighter than the clustering / feasibility thresholds built on
// top of them.
namespace tol {
inline constexpr double kNormCheck = 1e-8;       // ctor rejects worse vectors
inline constexpr double kHermitian = 1e-12;      // max |M - M^dagger| entry
inline constexpr double kHermitianExpect = 1e-8; // imaginary residue => error
inline constexpr double kTraceOne = 1e-12;
inline constexpr double kPsd = 1e-10;            // eigenvalue >= -kPsd
inline constexpr double kPurity = 1e-10;
inline constexpr double kEigenCluster = 1e-9;    // spectral gap threshold
inline constexpr double kUnitary = 1e-10;
inline constexpr double kPhase = 1e-9;           // amplitude counts as nonzero
inline constexpr double kBornFloor = 1e-12;      // branch weight clamp
inline constexpr double kMergeInfidelity = 1e-12; // 1 - F^2 below => same state
}  // namespace tol

// Pure state of n qubits stored as 2^n complex amplitudes.  Qubit 0 is the
// most significant bit of the basis index: |q0 q1 ... q_{n-1}>.
class StateVector {
 public:
  // `amplitudes` must have power-of-two length and unit L2 norm within 1e-8;
  // the stored vector is renormalized exactly.
  explicit StateVector(CVector amplitudes);

  // Scales an arbitrary nonzero vector to unit norm.
  static StateVector normalized(CVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const CVector& amplitudes() const { return amps_; }
  Complex amplitude(Eigen::Index i) const { return amps_(i); }

  // Global-phase canonical form: the first amplitude with modulus > 1e-9 is
  // made real and positive.
  StateVector canonical() const;

 private:
  CVector amps_;
  int n_qubits_;
};

// Density operator over a tensor product of subsystems with dimensions
// `dims` (product equals the matrix dimension).  Validated on construction:
// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10,
// Tr(rho^2) <= 1 + 1e-12.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix entries, std::vector<int> dims);

  // Single subsystem of dimension d.
  static DensityMatrix single_system(CMatrix entries);
  // All-qubit system; the matrix dimension must be a power of two.
  static DensityMatrix of_qubits(CMatrix entries);

  const CMatrix& entries() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  Eigen::Index dim() const { return m_.rows(); }

  double purity() const;                 // Tr(rho^2)
  bool is_pure() const;                  // |purity - 1| < 1e-10

 private:
  CMatrix m_;
  std::vector<int> dims_;
};

// Hermitian operator with a human-readable label.  Rejects matrices whose
// anti-Hermitian part exceeds 1e-12 per entry.
class Observable {
 public:
  Observable(CMatrix matrix, std::string label);

  const CMatrix& matrix() const { return m_; }
  const std::string& label() const { return label_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
  std::string label_;
};

struct SpectralComponent {
  double eigenvalue;   // cluster representative (mean of clustered values)
  CMatrix projector;   // orthogonal projector onto the clustered eigenspace
  int multiplicity;    // eigenspace dimension
};

// Kronecker products; the left factor supplies the most significant index.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
CVector tensor_product(const CVector& a, const CVector& b);
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Traces out every subsystem not listed in `keep` (sorted ascending, no
// duplicates, non-empty, all in range).  The result keeps the relative order
// of the retained subsystems.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// <psi|Omega|psi> and Tr(rho Omega).  Errors on dimension mismatch or an
// imaginary residue above 1e-8; smaller residues are discarded.
double expectation(const StateVector& psi, const Observable& omega);
double expectation(const DensityMatrix& rho, const Observable& omega);

// Eigen-decomposition with eigenvalues within 1e-9 of each other merged into
// a single eigenspace.  Components are sorted by ascending eigenvalue and
// their projectors sum to the identity.
std::vector<SpectralComponent> spectral_decompose(const Observable& omega);

// Applies a unitary acting on the listed qubits (targets[0] is the most
// significant index of `u`).  The operator must satisfy
// max|U U^dagger - I| <= 1e-10.  Qubit subsystems only.
StateVector apply_unitary(const StateVector& psi, const CMatrix& u,
                          const std::vector<int>& targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u,
                            const std::vector<int>& targets);

// |psi><psi| as a qubit-system density matrix.
DensityMatrix outer(const StateVector& psi);

// |<a|b>|^2.
double fidelity_sq(const StateVector& a, const StateVector& b);

// max_ij |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qensim

#endif  // QENSIM_QMATH_HPP_
