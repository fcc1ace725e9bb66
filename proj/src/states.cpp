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

#include "qensim/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qensim::states {

namespace {
const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix hadamard() {
  CMatrix m(2, 2);
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return m;
}

CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1;  // |00> -> |00>
  m(1, 1) = 1;  // |01> -> |01>
  m(2, 3) = 1;  // |11> -> |10>
  m(3, 2) = 1;  // |10> -> |11>
  return m;
}

namespace {
StateVector two_amp(Complex a0, Complex a1) {
  CVector v(2);
  v << a0, a1;
  return StateVector(std::move(v));
}
}  // namespace

StateVector ket0() { return two_amp(1.0, 0.0); }
StateVector ket1() { return two_amp(0.0, 1.0); }
StateVector plus_x() { return two_amp(kInvSqrt2, kInvSqrt2); }
StateVector minus_x() { return two_amp(kInvSqrt2, -kInvSqrt2); }
StateVector plus_y() { return two_amp(kInvSqrt2, kI * kInvSqrt2); }
StateVector minus_y() { return two_amp(kInvSqrt2, -kI * kInvSqrt2); }

StateVector basis_state(int n_qubits, Eigen::Index index) {
  if (n_qubits < 1 || n_qubits > 20)
    throw std::invalid_argument("basis_state: qubit count out of range");
  Eigen::Index dim = Eigen::Index(1) << n_qubits;
  if (index < 0 || index >= dim)
    throw std::invalid_argument("basis_state: index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

namespace {
StateVector four_amp(Complex a0, Complex a1, Complex a2, Complex a3) {
  CVector v(4);
  v << a0, a1, a2, a3;
  return StateVector(std::move(v));
}
}  // namespace

StateVector bell_phi_plus() { return four_amp(kInvSqrt2, 0, 0, kInvSqrt2); }
StateVector bell_phi_minus() { return four_amp(kInvSqrt2, 0, 0, -kInvSqrt2); }
StateVector bell_psi_plus() { return four_amp(0, kInvSqrt2, kInvSqrt2, 0); }
StateVector bell_psi_minus() { return four_amp(0, kInvSqrt2, -kInvSqrt2, 0); }

Observable sigma_x() { return Observable(pauli_x(), "sigma_x"); }
Observable sigma_y() { return Observable(pauli_y(), "sigma_y"); }
Observable sigma_z() { return Observable(pauli_z(), "sigma_z"); }

Observable collective_sigma_z(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument(
        "collective_sigma_z: dense operator limited to 12 qubits");
  Eigen::Index dim = Eigen::Index(1) << n_qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    int ones = 0;
    for (int q = 0; q < n_qubits; ++q)
      if ((i >> q) & 1) ++ones;
    m(i, i) = static_cast<double>(n_qubits - 2 * ones);
  }
  return Observable(std::move(m), "sum_sigma_z");
}

}  // namespace qensim::states
