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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qensim/ensemble.hpp"
#include "qensim/measurement.hpp"
#include "qensim/nmr.hpp"
#include "qensim/qmath.hpp"
#include "qensim/report.hpp"
#include "qensim/rng.hpp"
#include "qensim/scenarios.hpp"
#include "qensim/states.hpp"

namespace py = pybind11;
using namespace qensim;

namespace {

Observable make_observable(const CMatrix& m) { return Observable{m, "custom"}; }

Ensemble make_ensemble(
    const std::vector<std::pair<CVector, std::uint64_t>>& members) {
  std::vector<EnsembleEntry> entries;
  entries.reserve(members.size());
  for (const auto& [amplitudes, count] : members) {
    entries.push_back({StateVector::normalized(amplitudes), count});
  }
  return Ensemble{std::move(entries)};
}

std::string render(const ScenarioReport& report, const std::string& fmt) {
  return render_report(report, parse_output_format(fmt));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Seeded simulations of quantum ensembles: compositions, projective "
      "measurements, fluctuation statistics, and product-state "
      "decompositions, with deterministic structured reports.";
  m.attr("__version__") = QENSIM_VERSION;

  // ---- states and operators (numpy arrays in and out) ----------------------
  m.def("ket0", [] { return states::ket0().amplitudes(); },
        "Computational-basis up state.");
  m.def("ket1", [] { return states::ket1().amplitudes(); },
        "Computational-basis down state.");
  m.def("plus_x", [] { return states::plus_x().amplitudes(); });
  m.def("minus_x", [] { return states::minus_x().amplitudes(); });
  m.def("plus_y", [] { return states::plus_y().amplitudes(); });
  m.def("minus_y", [] { return states::minus_y().amplitudes(); });
  m.def("bell_phi_plus", [] { return states::bell_phi_plus().amplitudes(); });
  m.def("bell_phi_minus",
        [] { return states::bell_phi_minus().amplitudes(); });
  m.def("bell_psi_plus", [] { return states::bell_psi_plus().amplitudes(); });
  m.def("bell_psi_minus",
        [] { return states::bell_psi_minus().amplitudes(); });
  m.def("pauli_x", [] { return states::pauli_x(); });
  m.def("pauli_y", [] { return states::pauli_y(); });
  m.def("pauli_z", [] { return states::pauli_z(); });
  m.def("hadamard", [] { return states::hadamard(); });
  m.def("cnot", [] { return states::cnot(); });
  m.def("identity", [](int dim) { return states::identity(dim); },
        py::arg("dim"));

  // ---- state algebra --------------------------------------------------------
  m.def(
      "tensor_product",
      [](const CVector& a, const CVector& b) {
        return tensor_product(StateVector::normalized(a),
                              StateVector::normalized(b))
            .amplitudes();
      },
      py::arg("a"), py::arg("b"), "Joint state of two subsystem states.");
  m.def(
      "tensor_product_op",
      [](const CMatrix& a, const CMatrix& b) { return tensor_product(a, b); },
      py::arg("a"), py::arg("b"), "Kronecker product of two operators.");
  m.def(
      "outer",
      [](const CVector& psi) {
        return outer(StateVector::normalized(psi)).entries();
      },
      py::arg("psi"), "Projector |psi><psi| as a dense matrix.");
  m.def(
      "partial_trace",
      [](const CMatrix& rho, const std::vector<int>& keep) {
        return partial_trace(DensityMatrix::of_qubits(rho), keep).entries();
      },
      py::arg("rho"), py::arg("keep"),
      "Reduced density matrix over the kept qubits (most significant first).");
  m.def(
      "expectation",
      [](const CVector& psi, const CMatrix& omega) {
        return expectation(StateVector::normalized(psi),
                           make_observable(omega));
      },
      py::arg("psi"), py::arg("omega"));
  m.def(
      "expectation_dm",
      [](const CMatrix& rho, const CMatrix& omega) {
        return expectation(DensityMatrix::single_system(rho),
                           make_observable(omega));
      },
      py::arg("rho"), py::arg("omega"));
  m.def(
      "apply_unitary",
      [](const CVector& psi, const CMatrix& u, const std::vector<int>& targets) {
        return apply_unitary(StateVector::normalized(psi), u, targets)
            .amplitudes();
      },
      py::arg("psi"), py::arg("u"), py::arg("targets"));
  m.def(
      "fidelity_sq",
      [](const CVector& a, const CVector& b) {
        return fidelity_sq(StateVector::normalized(a),
                           StateVector::normalized(b));
      },
      py::arg("a"), py::arg("b"));

  // ---- ensembles ------------------------------------------------------------
  py::class_<Ensemble>(m, "Ensemble",
                       "Explicit composition {(state, count)}: the "
                       "information a density matrix discards.")
      .def(py::init(&make_ensemble), py::arg("members"))
      .def_property_readonly("total_count", &Ensemble::total_count)
      .def_property_readonly("n_qubits", &Ensemble::n_qubits)
      .def("members",
           [](const Ensemble& e) {
             std::vector<std::pair<CVector, std::uint64_t>> out;
             for (const auto& entry : e.entries())
               out.emplace_back(entry.state.amplitudes(), entry.count);
             return out;
           })
      .def("__len__",
           [](const Ensemble& e) { return e.entries().size(); })
      .def("__repr__", [](const Ensemble& e) {
        return "Ensemble(" + std::to_string(e.entries().size()) +
               " distinct states, " + std::to_string(e.total_count()) +
               " members)";
      });

  m.def("compressed_dm",
        [](const Ensemble& e) { return compressed_dm(e).entries(); },
        py::arg("ensemble"),
        "Count-weighted single-molecule density matrix.");
  m.def(
      "sampling_expectation",
      [](const Ensemble& e, const CMatrix& omega) {
        return sampling_expectation(e, make_observable(omega));
      },
      py::arg("ensemble"), py::arg("omega"));
  m.def(
      "global_expectation",
      [](const Ensemble& e, const CMatrix& omega) {
        return global_expectation(e, make_observable(omega));
      },
      py::arg("ensemble"), py::arg("omega"));
  m.def(
      "global_fluctuation",
      [](const Ensemble& e, const CMatrix& omega) {
        return global_fluctuation(e, make_observable(omega));
      },
      py::arg("ensemble"), py::arg("omega"),
      "Dispersion of the summed observable over one global measurement.");
  m.def("full_state",
        [](const Ensemble& e) { return full_state(e).amplitudes(); },
        py::arg("ensemble"),
        "Joint product state of every member (small ensembles only).");
  m.def("same_composition", &same_composition, py::arg("a"), py::arg("b"));

  // ---- measurement -----------------------------------------------------------
  m.def(
      "measure_ensemble",
      [](const Ensemble& e, const CMatrix& omega, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        const MeasurementRecord rec =
            measure_ensemble(e, make_observable(omega), rng);
        py::dict out;
        out["outcomes"] = rec.outcomes;
        out["global_sum"] = rec.global_sum;
        out["imbalance"] = rec.imbalance;
        return out;
      },
      py::arg("ensemble"), py::arg("omega"), py::arg("seed"),
      py::arg("stream") = 0,
      "Measure every member once; returns outcome counts and the global sum.");
  m.def(
      "empirical_global_stats",
      [](const Ensemble& e, const CMatrix& omega, std::uint64_t trials,
         std::uint64_t seed, std::uint64_t stream, int threads) {
        const RngStream rng(seed, stream);
        const GlobalSumStats st =
            empirical_global_stats(e, make_observable(omega), trials, rng,
                                   threads);
        return py::make_tuple(st.mean, st.std_dev);
      },
      py::arg("ensemble"), py::arg("omega"), py::arg("trials"),
      py::arg("seed"), py::arg("stream") = 0, py::arg("threads") = 1,
      "(mean, std) of the global sum over repeated full measurements.");
  m.def(
      "measure_pairs_remote",
      [](const CVector& pair_state, std::uint64_t n_pairs,
         const CMatrix& basis_b, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const RemoteCollapseResult res = measure_pairs_remote(
            StateVector::normalized(pair_state), n_pairs,
            make_observable(basis_b), rng);
        py::list branches;
        for (const RemoteBranch& b : res.branches) {
          py::dict d;
          d["eigenvalue"] = b.eigenvalue;
          d["count"] = b.count;
          d["probability"] = b.probability;
          d["state_a"] = b.state_a.amplitudes();
          d["state_b"] = b.state_b.amplitudes();
          branches.append(d);
        }
        py::dict out;
        out["branches"] = branches;
        out["imbalance"] = res.imbalance;
        return out;
      },
      py::arg("pair_state"), py::arg("n_pairs"), py::arg("basis_b"),
      py::arg("seed"), py::arg("stream") = 0,
      "Measure side B of n identical two-qubit pairs; side A keeps the "
      "conditional states.");
  m.def(
      "bell_basis_measure",
      [](const CVector& psi, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto [outcome, prob] =
            bell_basis_measure(StateVector::normalized(psi), rng);
        return py::make_tuple(bell_outcome_name(outcome), prob);
      },
      py::arg("psi"), py::arg("seed"), py::arg("stream") = 0);

  // ---- highly mixed states and product decompositions -------------------------
  m.def(
      "effective_dm",
      [](double epsilon, const CMatrix& rho_eff) {
        return effective_dm({epsilon, DensityMatrix::of_qubits(rho_eff)})
            .entries();
      },
      py::arg("epsilon"), py::arg("rho_eff"),
      "(1-eps)/d * I + eps * rho_eff.");
  m.def("sigma_zz", [] { return sigma_zz().matrix(); });
  m.def(
      "ppt_min_eigenvalue",
      [](const CMatrix& rho) {
        return ppt_min_eigenvalue(DensityMatrix::of_qubits(rho));
      },
      py::arg("rho"),
      "Minimum partial-transpose eigenvalue: negative iff entangled (2x2).");
  m.def(
      "solve_product_decomposition",
      [](const CMatrix& rho) {
        const PauliDictionary dict;
        const DecompositionSolve solve = solve_product_decomposition(
            DensityMatrix::of_qubits(rho), dict);
        Eigen::MatrixXd weights(6, 6);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j)
            weights(i, j) = solve.decomposition.weight(i, j);
        py::dict out;
        out["weights"] = weights;
        out["residual"] = solve.residual;
        out["trace_error"] = solve.trace_error;
        out["feasible"] = solve.feasible;
        return out;
      },
      py::arg("rho"),
      "Nonnegative polarization-product weights fitting rho, with residual "
      "and feasibility verdict.");
  m.def("effective_bell_ensemble",
        [](std::uint64_t n, double epsilon) {
          return effective_bell_ensemble(n, epsilon);
        },
        py::arg("n"), py::arg("epsilon"),
        "Composition with round(eps*n) genuine pairs in a uniform background.");

  // ---- scenario runners (rendered reports) -----------------------------------
  m.def(
      "despagnat",
      [](std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
         int threads, const std::string& fmt) {
        DespagnatConfig cfg;
        cfg.n = n;
        cfg.trials = trials;
        cfg.threads = threads;
        return render(run_despagnat(cfg, seed), fmt);
      },
      py::arg("n") = 10000, py::arg("trials") = 10000, py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("fmt") = "json-records");
  m.def(
      "collapse",
      [](std::uint64_t n, const std::string& basis, std::uint64_t runs,
         std::uint64_t seed, int threads, const std::string& fmt) {
        CollapseConfig cfg;
        cfg.n = n;
        cfg.basis = basis;
        cfg.runs = runs;
        cfg.threads = threads;
        return render(run_collapse_chain(cfg, seed), fmt);
      },
      py::arg("n") = 10000, py::arg("basis") = "z", py::arg("runs") = 1000,
      py::arg("seed") = 0, py::arg("threads") = 1,
      py::arg("fmt") = "json-records");
  m.def(
      "peres",
      [](const std::vector<std::uint64_t>& sizes, std::uint64_t trials,
         std::uint64_t seed, int threads, const std::string& fmt) {
        PeresConfig cfg;
        cfg.sizes = sizes;
        cfg.trials = trials;
        cfg.threads = threads;
        return render(run_peres_distinguisher(cfg, seed), fmt);
      },
      py::arg("sizes") = std::vector<std::uint64_t>{100, 400},
      py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("threads") = 1,
      py::arg("fmt") = "json-records");
  m.def(
      "preskill",
      [](std::uint64_t n, const std::string& alice_basis, std::uint64_t seed,
         int threads, const std::string& fmt) {
        PreskillConfig cfg;
        cfg.n = n;
        cfg.alice_basis = alice_basis;
        cfg.threads = threads;
        return render(run_preskill_correlation(cfg, seed), fmt);
      },
      py::arg("n") = 10000, py::arg("alice_basis") = "x", py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("fmt") = "json-records");
  m.def(
      "bellpair",
      [](std::uint64_t trials, std::uint64_t seed, int threads,
         const std::string& fmt) {
        BellPairConfig cfg;
        cfg.trials = trials;
        cfg.threads = threads;
        return render(run_bell_pair_distinguish(cfg, seed), fmt);
      },
      py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("threads") = 1,
      py::arg("fmt") = "json-records");
  m.def(
      "bb84",
      [](std::uint64_t photons, const std::string& preparation,
         const std::string& eve, std::uint64_t seed, int threads,
         const std::string& fmt) {
        Bb84Config cfg;
        cfg.photons = photons;
        cfg.preparation = preparation;
        cfg.eve = eve;
        cfg.threads = threads;
        return render(run_bb84(cfg, seed), fmt);
      },
      py::arg("photons") = 100000, py::arg("preparation") = "four_state",
      py::arg("eve") = "intercept_resend_z", py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("fmt") = "json-records");
  m.def(
      "nmr",
      [](std::uint64_t n, double epsilon, std::uint64_t trials,
         double dm_tolerance, std::uint64_t seed, int threads,
         const std::string& fmt) {
        NmrConfig cfg;
        cfg.n = n;
        cfg.epsilon = epsilon;
        cfg.trials = trials;
        cfg.dm_tolerance = dm_tolerance;
        cfg.threads = threads;
        return render(run_nmr_comparison(cfg, seed), fmt);
      },
      py::arg("n") = 1000000, py::arg("epsilon") = 0.01,
      py::arg("trials") = 20000, py::arg("dm_tolerance") = 1e-3,
      py::arg("seed") = 0, py::arg("threads") = 1,
      py::arg("fmt") = "json-records");
}
