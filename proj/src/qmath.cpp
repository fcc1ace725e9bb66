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

#include "qensim/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qensim {

namespace {

int qubit_count_for(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("state vector is empty");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0)
      throw std::invalid_argument("state dimension is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

void check_hermitian(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  double worst = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (worst > tol::kHermitian)
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not Hermitian (defect " +
                                std::to_string(worst) + ")");
}

double real_part_checked(Complex v, const char* what) {
  if (std::abs(v.imag()) > tol::kHermitianExpect)
    throw std::runtime_error(std::string(what) +
                             ": non-negligible imaginary part " +
                             std::to_string(v.imag()));
  return v.real();
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  n_qubits_ = qubit_count_for(amps_.size());
  double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol::kNormCheck)
    throw std::invalid_argument("state vector is not normalized (norm " +
                                std::to_string(norm) + ")");
  amps_ /= norm;
}

StateVector StateVector::normalized(CVector amplitudes) {
  double norm = amplitudes.norm();
  if (norm < tol::kPhase)
    throw std::invalid_argument("cannot normalize a (near-)zero vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::canonical() const {
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    double mod = std::abs(amps_(i));
    if (mod > tol::kPhase) {
      CVector out = amps_ * (std::conj(amps_(i)) / mod);
      out(i) = Complex(mod, 0.0);  // exactly real after the phase rotation
      return StateVector(std::move(out));
    }
  }
  return *this;  // unreachable for a unit vector
}

DensityMatrix::DensityMatrix(CMatrix entries, std::vector<int> dims)
    : m_(std::move(entries)), dims_(std::move(dims)) {
  check_hermitian(m_, "density matrix");
  Eigen::Index expected = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    expected *= d;
  }
  if (dims_.empty() || expected != m_.rows())
    throw std::invalid_argument(
        "subsystem dimensions do not multiply to the matrix dimension");
  double trace_err = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (trace_err > tol::kTraceOne)
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(trace_err));
  // Hermiticity holds within tolerance; symmetrize so downstream spectral
  // calls see an exactly Hermitian operator.
  m_ = ((m_ + m_.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::kPsd)
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  if (purity() > 1.0 + tol::kPurity)
    throw std::invalid_argument("density matrix purity exceeds 1");
}

DensityMatrix DensityMatrix::single_system(CMatrix entries) {
  int d = static_cast<int>(entries.rows());
  return DensityMatrix(std::move(entries), {d});
}

DensityMatrix DensityMatrix::of_qubits(CMatrix entries) {
  int n = qubit_count_for(entries.rows());
  return DensityMatrix(std::move(entries), std::vector<int>(std::max(n, 1), 2));
}

double DensityMatrix::purity() const {
  return (m_ * m_).trace().real();
}

bool DensityMatrix::is_pure() const {
  return std::abs(purity() - 1.0) < tol::kPurity;
}

Observable::Observable(CMatrix matrix, std::string label)
    : m_(std::move(matrix)), label_(std::move(label)) {
  check_hermitian(m_, ("observable '" + label_ + "'").c_str());
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector tensor_product(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return StateVector(tensor_product(a.amplitudes(), b.amplitudes()));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const auto& dims = rho.dims();
  const int m = static_cast<int>(dims.size());
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("partial_trace: duplicate subsystem index");
  for (int k : sorted)
    if (k < 0 || k >= m)
      throw std::invalid_argument("partial_trace: subsystem index out of range");
  if (static_cast<int>(sorted.size()) == m)
    return rho;  // nothing traced out

  std::vector<int> traced;
  for (int s = 0; s < m; ++s)
    if (!std::binary_search(sorted.begin(), sorted.end(), s))
      traced.push_back(s);

  // Strides of each subsystem in the full MSB-first index.
  std::vector<Eigen::Index> stride(m, 1);
  for (int s = m - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  Eigen::Index dim_keep = 1, dim_traced = 1;
  for (int k : sorted) dim_keep *= dims[k];
  for (int t : traced) dim_traced *= dims[t];

  // Full-index offset for the a-th kept (resp. t-th traced) multi-index.
  auto offsets = [&](const std::vector<int>& subs, Eigen::Index count) {
    std::vector<Eigen::Index> off(count, 0);
    for (Eigen::Index v = 0; v < count; ++v) {
      Eigen::Index rest = v;
      for (int idx = static_cast<int>(subs.size()) - 1; idx >= 0; --idx) {
        int s = subs[idx];
        off[v] += (rest % dims[s]) * stride[s];
        rest /= dims[s];
      }
    }
    return off;
  };
  std::vector<Eigen::Index> keep_off = offsets(sorted, dim_keep);
  std::vector<Eigen::Index> tr_off = offsets(traced, dim_traced);

  const CMatrix& src = rho.entries();
  CMatrix out = CMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index a = 0; a < dim_keep; ++a)
    for (Eigen::Index b = 0; b < dim_keep; ++b) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index t = 0; t < dim_traced; ++t)
        acc += src(keep_off[a] + tr_off[t], keep_off[b] + tr_off[t]);
      out(a, b) = acc;
    }

  std::vector<int> out_dims;
  for (int k : sorted) out_dims.push_back(dims[k]);
  return DensityMatrix(std::move(out), std::move(out_dims));
}

double expectation(const StateVector& psi, const Observable& omega) {
  if (psi.dim() != omega.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  Complex v = psi.amplitudes().dot(omega.matrix() * psi.amplitudes());
  return real_part_checked(v, "expectation");
}

double expectation(const DensityMatrix& rho, const Observable& omega) {
  if (rho.dim() != omega.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  // Tr(rho Omega) = sum_ij rho_ij Omega_ji without forming the product.
  Complex v = (rho.entries().transpose().cwiseProduct(omega.matrix())).sum();
  return real_part_checked(v, "expectation");
}

std::vector<SpectralComponent> spectral_decompose(const Observable& omega) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(omega.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigensolver failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();

  std::vector<SpectralComponent> comps;
  Eigen::Index i = 0;
  while (i < vals.size()) {
    Eigen::Index j = i + 1;
    while (j < vals.size() && vals(j) - vals(j - 1) <= tol::kEigenCluster) ++j;
    const Eigen::Index mult = j - i;
    SpectralComponent c;
    c.eigenvalue = vals.segment(i, mult).mean();
    auto block = vecs.middleCols(i, mult);
    c.projector = block * block.adjoint();
    c.multiplicity = static_cast<int>(mult);
    comps.push_back(std::move(c));
    i = j;
  }
  return comps;
}

namespace {

void check_targets(int n_qubits, const CMatrix& u,
                   const std::vector<int>& targets) {
  if (targets.empty())
    throw std::invalid_argument("apply_unitary: no target qubits");
  std::vector<int> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("apply_unitary: duplicate target qubit");
  for (int t : targets)
    if (t < 0 || t >= n_qubits)
      throw std::invalid_argument("apply_unitary: target qubit out of range");
  Eigen::Index need = Eigen::Index(1) << targets.size();
  if (u.rows() != u.cols() || u.rows() != need)
    throw std::invalid_argument(
        "apply_unitary: operator dimension does not match target count");
  double defect =
      (u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > tol::kUnitary)
    throw std::invalid_argument("apply_unitary: operator is not unitary "
                                "(defect " + std::to_string(defect) + ")");
}

// Applies u to the listed qubits of an n-qubit vector.  targets[0] supplies
// the most significant bit of u's index, matching the global convention.
CVector apply_on_qubits(const CVector& v, const CMatrix& u,
                        const std::vector<int>& targets, int n_qubits) {
  const int k = static_cast<int>(targets.size());
  const Eigen::Index block = Eigen::Index(1) << k;
  const Eigen::Index dim = v.size();

  // Bit position (from LSB) of each target in the full index.
  std::vector<int> pos(k);
  for (int j = 0; j < k; ++j) pos[j] = n_qubits - 1 - targets[j];

  std::vector<bool> is_target(n_qubits, false);
  for (int p : pos) is_target[p] = true;
  std::vector<int> free_pos;
  for (int p = 0; p < n_qubits; ++p)
    if (!is_target[p]) free_pos.push_back(p);

  CVector out(dim);
  std::vector<Eigen::Index> idx(block);
  CVector gathered(block);
  const Eigen::Index n_free = Eigen::Index(1) << free_pos.size();
  for (Eigen::Index f = 0; f < n_free; ++f) {
    Eigen::Index base = 0;
    for (std::size_t b = 0; b < free_pos.size(); ++b)
      if ((f >> b) & 1) base |= Eigen::Index(1) << free_pos[b];
    for (Eigen::Index s = 0; s < block; ++s) {
      Eigen::Index full = base;
      for (int j = 0; j < k; ++j)
        if ((s >> (k - 1 - j)) & 1) full |= Eigen::Index(1) << pos[j];
      idx[s] = full;
    }
    for (Eigen::Index s = 0; s < block; ++s) gathered(s) = v(idx[s]);
    CVector transformed = u * gathered;
    for (Eigen::Index s = 0; s < block; ++s) out(idx[s]) = transformed(s);
  }
  return out;
}

}  // namespace

StateVector apply_unitary(const StateVector& psi, const CMatrix& u,
                          const std::vector<int>& targets) {
  check_targets(psi.n_qubits(), u, targets);
  return StateVector(apply_on_qubits(psi.amplitudes(), u, targets,
                                     psi.n_qubits()));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u,
                            const std::vector<int>& targets) {
  for (int d : rho.dims())
    if (d != 2)
      throw std::invalid_argument("apply_unitary: qubit subsystems only");
  const int n = static_cast<int>(rho.dims().size());
  check_targets(n, u, targets);
  // U rho U^dagger, one column / row sweep at a time.
  CMatrix out = rho.entries();
  for (Eigen::Index c = 0; c < out.cols(); ++c)
    out.col(c) = apply_on_qubits(out.col(c), u, targets, n);
  CMatrix adj = out.adjoint();
  for (Eigen::Index c = 0; c < adj.cols(); ++c)
    adj.col(c) = apply_on_qubits(adj.col(c), u, targets, n);
  return DensityMatrix(adj.adjoint(), rho.dims());
}

DensityMatrix outer(const StateVector& psi) {
  CMatrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(std::move(m),
                       std::vector<int>(std::max(psi.n_qubits(), 1), 2));
}

double fidelity_sq(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qensim
