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

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "qensim/qmath.hpp"
#include "qensim/states.hpp"

using namespace qensim;
using oracles::random_hermitian;
using oracles::random_state;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("state vector validates and renormalizes") {
  CVector good(2);
  good << Complex(1.0, 0.0), Complex(0.0, 0.0);
  CHECK(StateVector(good).n_qubits() == 1);

  CVector slightly_off(2);
  slightly_off << Complex(1.0 + 1e-9, 0.0), Complex(0.0, 0.0);
  const StateVector fixed{slightly_off};
  CHECK(std::abs(fixed.amplitudes().norm() - 1.0) < 1e-15);

  CVector bad_norm(2);
  bad_norm << Complex(2.0, 0.0), Complex(0.0, 0.0);
  CHECK_THROWS_AS(StateVector{bad_norm}, std::invalid_argument);

  CVector bad_len(3);
  bad_len << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(StateVector{bad_len}, std::invalid_argument);

  CVector raw(4);
  raw << Complex(3.0, 0.0), Complex(0.0, 4.0), 0.0, 0.0;
  const StateVector scaled = StateVector::normalized(raw);
  CHECK(scaled.amplitude(0).real() == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(scaled.n_qubits() == 2);
}

TEST_CASE("canonical form fixes the global phase") {
  CVector v(2);
  v << std::exp(kI * 0.7) * std::sqrt(0.5), std::exp(kI * 0.7) * std::sqrt(0.5);
  const StateVector canon = StateVector(v).canonical();
  CHECK(canon.amplitude(0).imag() == 0.0);
  CHECK(canon.amplitude(0).real() > 0.0);
  CHECK(std::abs(canon.amplitude(1) - canon.amplitude(0)) < 1e-14);

  // leading (near-)zero amplitudes are skipped when picking the pivot
  CVector w(2);
  w << Complex(0.0, 0.0), Complex(0.0, -1.0);
  const StateVector canon2 = StateVector(w).canonical();
  CHECK(canon2.amplitude(1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(canon2.amplitude(1).imag() == 0.0);
}

TEST_CASE("density matrix construction enforces physicality") {
  CHECK(DensityMatrix::single_system(0.5 * states::identity(2)).purity() ==
        doctest::Approx(0.5).epsilon(1e-14));

  CMatrix not_hermitian = states::identity(2);
  not_hermitian(0, 1) = Complex(0.3, 0.0);
  not_hermitian *= 0.5;
  CHECK_THROWS_AS(DensityMatrix::single_system(not_hermitian),
                  std::invalid_argument);

  CMatrix bad_trace = 0.7 * states::identity(2);
  CHECK_THROWS_AS(DensityMatrix::single_system(bad_trace),
                  std::invalid_argument);

  CMatrix not_psd(2, 2);
  not_psd << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix::single_system(not_psd),
                  std::invalid_argument);

  CMatrix qutrit = states::identity(3) / 3.0;
  CHECK_THROWS_AS(DensityMatrix::of_qubits(qutrit), std::invalid_argument);
  CHECK(DensityMatrix::single_system(qutrit).dim() == 3);

  const DensityMatrix pure = outer(states::plus_x());
  CHECK(pure.is_pure());
  CHECK(!DensityMatrix::single_system(0.5 * states::identity(2)).is_pure());
}

TEST_CASE("tensor products follow the most-significant-left convention") {
  const CMatrix zx = tensor_product(states::pauli_z(), states::pauli_x());
  CHECK(zx(0, 1).real() == doctest::Approx(1.0));
  CHECK(zx(2, 3).real() == doctest::Approx(-1.0));

  const StateVector v01 =
      tensor_product(states::ket0(), states::ket1());
  CHECK(v01.amplitude(1).real() == doctest::Approx(1.0));
  CHECK(v01.n_qubits() == 2);
}

TEST_CASE("partial trace: entangled pair reduces to the maximally mixed state") {
  const DensityMatrix rho = outer(states::bell_phi_plus());
  for (int keep = 0; keep < 2; ++keep) {
    const DensityMatrix red = partial_trace(rho, {keep});
    CHECK(max_abs_diff(red.entries(), 0.5 * states::identity(2)) < 1e-14);
  }
}

TEST_CASE("partial trace: product states reduce to their factors") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 5; ++rep) {
    const StateVector a{random_state(gen, 2)};
    const StateVector b{random_state(gen, 2)};
    const DensityMatrix joint = outer(tensor_product(a, b));
    CHECK(max_abs_diff(partial_trace(joint, {0}).entries(),
                       outer(a).entries()) < 1e-12);
    CHECK(max_abs_diff(partial_trace(joint, {1}).entries(),
                       outer(b).entries()) < 1e-12);
  }
}

TEST_CASE("partial trace keeps subsystem order and validates arguments") {
  const StateVector trip = tensor_product(
      tensor_product(states::ket0(), states::plus_x()), states::ket1());
  const DensityMatrix rho = outer(trip);
  const DensityMatrix kept = partial_trace(rho, {0, 2});
  const CMatrix expected =
      tensor_product(outer(states::ket0()).entries(),
                     outer(states::ket1()).entries());
  CHECK(max_abs_diff(kept.entries(), expected) < 1e-13);

  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {3}), std::invalid_argument);

  // the keep list is a set: order does not matter
  CHECK(max_abs_diff(partial_trace(rho, {2, 0}).entries(),
                     partial_trace(rho, {0, 2}).entries()) == 0.0);
}

TEST_CASE("expectation values on states and mixtures") {
  CHECK(expectation(states::ket0(), states::sigma_z()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expectation(states::plus_x(), states::sigma_z()) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(expectation(DensityMatrix::single_system(0.5 * states::identity(2)),
                    states::sigma_x()) == doctest::Approx(0.0).epsilon(1e-14));

  // dimension mismatch
  CHECK_THROWS_AS(expectation(states::bell_phi_plus(), states::sigma_z()),
                  std::invalid_argument);
}

TEST_CASE("expectation agrees between pure-state and density forms") {
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 20; ++rep) {
    const StateVector psi{random_state(gen, 4)};
    const Observable obs{random_hermitian(gen, 4), "rand"};
    CHECK(expectation(psi, obs) ==
          doctest::Approx(expectation(outer(psi), obs)).epsilon(1e-10));
  }
}

TEST_CASE("spectral decomposition clusters degenerate eigenvalues") {
  const auto comps = spectral_decompose(states::sigma_z());
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].eigenvalue == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(comps[1].eigenvalue == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(comps[0].multiplicity == 1);

  const auto ident = spectral_decompose(Observable{states::identity(4), "1"});
  REQUIRE(ident.size() == 1);
  CHECK(ident[0].multiplicity == 4);
  CHECK(max_abs_diff(ident[0].projector, states::identity(4)) < 1e-12);

  // sigma_z (x) 1: eigenvalues -1 and +1, each doubly degenerate
  const Observable zi{tensor_product(states::pauli_z(), states::identity(2)),
                      "z1"};
  const auto zcomp = spectral_decompose(zi);
  REQUIRE(zcomp.size() == 2);
  CHECK(zcomp[0].multiplicity == 2);
  CHECK(zcomp[1].multiplicity == 2);
}

TEST_CASE("spectral decomposition reconstructs random observables") {
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 10; ++rep) {
    const Observable obs{random_hermitian(gen, 4), "rand"};
    const auto comps = spectral_decompose(obs);
    CMatrix sum = CMatrix::Zero(4, 4);
    CMatrix resolved = CMatrix::Zero(4, 4);
    for (const auto& c : comps) {
      sum += c.projector;
      resolved += c.eigenvalue * c.projector;
      // projectors are idempotent and Hermitian
      CHECK(max_abs_diff(c.projector * c.projector, c.projector) < 1e-10);
    }
    CHECK(max_abs_diff(sum, states::identity(4)) < 1e-10);
    CHECK(max_abs_diff(resolved, obs.matrix()) < 1e-9);
  }
}

TEST_CASE("unitary application targets the right qubits") {
  const StateVector s00 = tensor_product(states::ket0(), states::ket0());
  // flip qubit 0 (most significant)
  const StateVector s10 = apply_unitary(s00, states::pauli_x(), {0});
  CHECK(std::abs(s10.amplitude(2) - Complex(1.0, 0.0)) < 1e-14);
  // flip qubit 1
  const StateVector s01 = apply_unitary(s00, states::pauli_x(), {1});
  CHECK(std::abs(s01.amplitude(1) - Complex(1.0, 0.0)) < 1e-14);

  // controlled flip: |10> -> |11>, |0x> untouched
  const StateVector c1 = apply_unitary(s10, states::cnot(), {0, 1});
  CHECK(std::abs(c1.amplitude(3) - Complex(1.0, 0.0)) < 1e-14);
  const StateVector c0 = apply_unitary(s01, states::cnot(), {0, 1});
  CHECK(std::abs(c0.amplitude(1) - Complex(1.0, 0.0)) < 1e-14);

  // swapped target list acts as the reversed-control gate
  const StateVector r = apply_unitary(s01, states::cnot(), {1, 0});
  CHECK(std::abs(r.amplitude(3) - Complex(1.0, 0.0)) < 1e-14);

  CHECK_THROWS_AS(apply_unitary(s00, states::cnot(), {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(s00, states::cnot(), {0, 2}),
                  std::invalid_argument);
  CMatrix not_unitary = states::identity(2);
  not_unitary(0, 0) = 1.5;
  CHECK_THROWS_AS(apply_unitary(s00, not_unitary, {0}),
                  std::invalid_argument);
}

TEST_CASE("unitary application agrees between state and mixture forms") {
  std::mt19937_64 gen(41);
  for (int rep = 0; rep < 10; ++rep) {
    const StateVector psi{random_state(gen, 8)};
    // random unitary from the QR of a random matrix
    const CMatrix h = random_hermitian(gen, 4);
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CMatrix u = es.eigenvectors();
    const std::vector<int> targets{2, 0};
    const StateVector mapped = apply_unitary(psi, u, targets);
    const DensityMatrix mapped_dm = apply_unitary(outer(psi), u, targets);
    CHECK(max_abs_diff(outer(mapped).entries(), mapped_dm.entries()) < 1e-11);
  }
}

TEST_CASE("hadamard squares to identity through the application path") {
  const StateVector s = states::ket1();
  const StateVector twice =
      apply_unitary(apply_unitary(s, states::hadamard(), {0}),
                    states::hadamard(), {0});
  CHECK(fidelity_sq(twice, s) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("fidelity and elementwise distance helpers") {
  CHECK(fidelity_sq(states::ket0(), states::ket1()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fidelity_sq(states::plus_x(), states::ket0()) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(max_abs_diff(states::identity(2), states::pauli_z()) ==
        doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("observable rejects non-hermitian matrices") {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  CHECK_THROWS_AS(Observable(m, "bad"), std::invalid_argument);
  CHECK_NOTHROW(Observable(states::pauli_y(), "y"));
}

TEST_CASE("collective spin operator is the sum of per-qubit terms") {
  const Observable two = states::collective_sigma_z(2);
  CMatrix expected =
      tensor_product(states::pauli_z(), states::identity(2)) +
      tensor_product(states::identity(2), states::pauli_z());
  CHECK(max_abs_diff(two.matrix(), expected) < 1e-14);
}
