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

#ifndef QENSIM_STATES_HPP_
#define QENSIM_STATES_HPP_

#include "qensim/qmath.hpp"

namespace qensim::states {

CMatrix identity(Eigen::Index d);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix hadamard();
// Controlled-NOT with the control on qubit 0 (most significant bit).
CMatrix cnot();

StateVector ket0();
StateVector ket1();
StateVector plus_x();
StateVector minus_x();
StateVector plus_y();
StateVector minus_y();
// Computational basis state |index> of an n-qubit register.
StateVector basis_state(int n_qubits, Eigen::Index index);

StateVector bell_phi_plus();   // (|00> + |11>)/sqrt(2)
StateVector bell_phi_minus();  // (|00> - |11>)/sqrt(2)
StateVector bell_psi_plus();   // (|01> + |10>)/sqrt(2)
StateVector bell_psi_minus();  // (|01> - |10>)/sqrt(2)

Observable sigma_x();
Observable sigma_y();
Observable sigma_z();
// Sum of single-qubit sigma_z over all n qubits (dense, n <= 12).
Observable collective_sigma_z(int n_qubits);

}  // namespace qensim::states

#endif  // QENSIM_STATES_HPP_
