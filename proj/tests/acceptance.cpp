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

// Acceptance gate: one self-contained check per shipped guarantee, one
// [PASS]/[FAIL] line each, every tolerance pinned below.  Exits nonzero if
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qensim/ensemble.hpp"
#include "qensim/nmr.hpp"
#include "qensim/qmath.hpp"
#include "qensim/report.hpp"
#include "qensim/scenarios.hpp"
#include "qensim/states.hpp"

using namespace qensim;

namespace {

constexpr std::uint64_t kSeed = 20260814;

int g_failures = 0;

class Criterion {
 public:
  Criterion(int index, std::string label)
      : index_(index), label_(std::move(label)),
        start_(std::chrono::steady_clock::now()) {}

  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) problems_.push_back(what);
  }

  void expect_close(double value, double target, double tol,
                    const std::string& what) {
    if (!(std::abs(value - target) <= tol)) {
      std::ostringstream os;
      os << what << " = " << value << ", want " << target << " +- " << tol;
      problems_.push_back(os.str());
    }
  }

  void expect_runtime(double budget_s) {
    const double t = elapsed_s();
    if (t >= budget_s) {
      std::ostringstream os;
      os << "runtime " << t << " s exceeds " << budget_s << " s";
      problems_.push_back(os.str());
    }
  }

  void fail(const std::string& what) { problems_.push_back(what); }

  ~Criterion() {
    if (problems_.empty()) {
      std::printf("[PASS] %02d %s (%.1f s)\n", index_, label_.c_str(),
                  elapsed_s());
    } else {
      ++g_failures;
      std::string joined;
      for (const auto& p : problems_) {
        if (!joined.empty()) joined += "; ";
        joined += p;
      }
      std::printf("[FAIL] %02d %s: %s\n", index_, label_.c_str(),
                  joined.c_str());
    }
    std::fflush(stdout);
  }

 private:
  int index_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

double value_of(const ScenarioReport& r, const std::string& key) {
  return r.computed.at(key).value;
}

// 1. Same-matrix ensembles: exact fluctuations 0 and sqrt(N), Monte Carlo
//    std within 3% of 100 at N = 10^4, under 30 s.
void criterion_1() {
  Criterion c(1, "aligned vs transverse ensemble fluctuations");
  try {
    DespagnatConfig cfg;  // n = 10^4, trials = 10^4
    const ScenarioReport r = run_despagnat(cfg, kSeed);
    c.expect(value_of(r, "delta_sigma_z_S1") == 0.0,
             "analytic S1 fluctuation must be exactly 0");
    c.expect_close(value_of(r, "delta_sigma_z_S2"), 100.0, 1e-10,
                   "analytic S2 fluctuation");
    c.expect_close(value_of(r, "mc_std_S2"), 100.0, 3.0,
                   "Monte Carlo S2 std (3%)");
    c.expect(value_of(r, "mc_std_S1") == 0.0,
             "Monte Carlo S1 std must be exactly 0");
    c.expect_runtime(30.0);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 2. The additive per-molecule bookkeeping equals the exact variance on the
//    assembled product state for >= 50 random small ensembles, under 60 s.
void criterion_2() {
  Criterion c(2, "full-state variance oracle equivalence");
  try {
    std::mt19937_64 gen(777);
    int accepted = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 400 && accepted < 60; ++rep) {
      const int qubits = 1 + static_cast<int>(gen() % 2);
      const int dim = 1 << qubits;
      const int kinds = 1 + static_cast<int>(gen() % 3);
      std::vector<EnsembleEntry> entries;
      std::uint64_t total = 0;
      for (int k = 0; k < kinds; ++k) {
        const std::uint64_t count = 1 + gen() % 2;
        total += count;
        entries.push_back(
            {StateVector{oracles::random_state(gen, dim)}, count});
      }
      if (total > 6) continue;
      ++accepted;
      const Ensemble e{std::move(entries)};
      const Observable obs{oracles::random_hermitian(gen, dim), "rand"};

      std::vector<oracles::CVector> molecules;
      for (const auto& entry : e.entries())
        for (std::uint64_t i = 0; i < entry.count; ++i)
          molecules.push_back(entry.state.amplitudes());
      const auto moments = oracles::global_moments(molecules, obs.matrix());

      const double fluct = global_fluctuation(e, obs);
      worst = std::max(worst,
                       std::abs(moments.variance - fluct * fluct));
      worst = std::max(worst,
                       std::abs(moments.mean - global_expectation(e, obs)));
    }
    c.expect(accepted >= 50, "needs at least 50 random ensembles");
    c.expect_close(worst, 0.0, 1e-10,
                   "worst |full-state moment - additive moment|");
    c.expect_runtime(60.0);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 3. Two-pair remote collapse: outcome-case frequencies within 4 sigma of
//    (1/4, 1/4, 1/2) over 10^5 runs, under 30 s.
void criterion_3() {
  Criterion c(3, "two-pair collapse case frequencies");
  try {
    CollapseConfig cfg;
    cfg.n = 2;
    cfg.basis = "z";
    cfg.runs = 100000;
    const ScenarioReport r = run_collapse_chain(cfg, kSeed);
    const double runs = 100000.0;
    const double sig_quarter = std::sqrt(0.25 * 0.75 / runs);
    const double sig_half = std::sqrt(0.5 * 0.5 / runs);
    c.expect_close(value_of(r, "freq_both_up"), 0.25, 4.0 * sig_quarter,
                   "both-up frequency");
    c.expect_close(value_of(r, "freq_both_down"), 0.25, 4.0 * sig_quarter,
                   "both-down frequency");
    c.expect_close(value_of(r, "freq_mixed"), 0.5, 4.0 * sig_half,
                   "mixed frequency");
    c.expect_runtime(30.0);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 4. Imbalance scaling: std of the outcome surplus over 10^4 runs at
//    N = 10^4 within 5% of sqrt(N)/2 = 50; the realized local matrix matches
//    its closed form to 1e-12.
void criterion_4() {
  Criterion c(4, "collapse imbalance scaling and local-matrix form");
  try {
    CollapseConfig cfg;
    cfg.n = 10000;
    cfg.runs = 10000;
    const ScenarioReport r = run_collapse_chain(cfg, kSeed);
    c.expect_close(value_of(r, "imbalance_std_mc"), 50.0, 2.5,
                   "empirical imbalance std (5%)");
    c.expect_close(value_of(r, "rho_form_residual"), 0.0, 1e-12,
                   "realized local matrix vs closed form");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 5. Single-copy distinguisher: failure rate at N = 100 within 10% of
//    sqrt(2/(pi*100)) over 10^5 trials; failure(400)/failure(100) inside
//    [0.4, 0.6].
void criterion_5() {
  Criterion c(5, "distinguisher failure rate and scaling");
  try {
    PeresConfig cfg;  // sizes {100, 400}, trials 10^5
    const ScenarioReport r = run_peres_distinguisher(cfg, kSeed);
    const double asym = std::sqrt(2.0 / (100.0 * 3.14159265358979323846));
    c.expect_close(value_of(r, "failure_mc_n100"), asym, 0.1 * asym,
                   "failure rate at N=100 (10%)");
    const double ratio =
        value_of(r, "failure_mc_n400") / value_of(r, "failure_mc_n100");
    c.expect(ratio >= 0.4 && ratio <= 0.6,
             "failure(400)/failure(100) = " + std::to_string(ratio) +
                 ", want within [0.4, 0.6]");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 6. Published-key correlation: same-basis agreement exactly 1, cross-basis
//    agreement within 4 sigma of 1/2 at N = 10^4.
void criterion_6() {
  Criterion c(6, "post-publication correlation rates");
  try {
    PreskillConfig same;  // n = 10^4, alice_basis = "x"
    const ScenarioReport rs = run_preskill_correlation(same, kSeed);
    c.expect(value_of(rs, "agreement_rate") == 1.0,
             "same-basis agreement must be exactly 1.0");
    PreskillConfig cross;
    cross.alice_basis = "z";
    const ScenarioReport rc = run_preskill_correlation(cross, kSeed);
    c.expect_close(value_of(rc, "agreement_rate"), 0.5,
                   4.0 * 0.5 / std::sqrt(10000.0),
                   "cross-basis agreement (4 sigma)");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 7. Equal local matrices, perfectly distinguishable sources: reduced
//    matrices within 1e-12 elementwise, classification accuracy 1.0 over
//    10^4 trials.
void criterion_7() {
  Criterion c(7, "entangled-basis source classification");
  try {
    BellPairConfig cfg;  // trials = 10^4
    const ScenarioReport r = run_bell_pair_distinguish(cfg, kSeed);
    c.expect_close(value_of(r, "rho_a_max_difference"), 0.0, 1e-12,
                   "reduced-matrix difference");
    c.expect(value_of(r, "classification_accuracy") == 1.0,
             "classification accuracy must be exactly 1.0");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 8. Decomposition audit: uniform table reconstructs I/4 to 1e-14; verbatim
//    tables are audited with their residuals, trace deficits, and the 2*eps
//    coefficient-sum finding; the solver decomposes the eps = 0.01 admixture
//    with residual < 1e-10 and rejects the pure entangled target, in line
//    with its negative partial-transpose eigenvalue.
void criterion_8() {
  Criterion c(8, "product-decomposition audit and solver verdicts");
  try {
    const PauliDictionary dict;
    ProductDecomposition::Coefficients zero{};
    for (auto& row : zero) row.fill(0.0);
    const CMatrix uniform = decomposition_dm(ProductDecomposition{zero}, dict);
    c.expect_close(max_abs_diff(uniform, 0.25 * states::identity(4)), 0.0,
                   1e-14, "uniform-table reconstruction of I/4");

    NmrConfig cfg;  // n = 10^6, eps = 0.01, trials = 2*10^4
    const ScenarioReport r = run_nmr_comparison(cfg, kSeed);
    for (const char* key :
         {"table_bell_residual", "table_bell_trace_deficit",
          "table_xplus0_residual", "table_xplus0_trace_deficit"}) {
      c.expect(r.computed.count(key) == 1,
               std::string("missing audit entry ") + key);
    }
    c.expect(r.conformance.count("table_bell_coeff_sum") == 1 &&
                 r.conformance.at("table_bell_coeff_sum") ==
                     Conformance::kMatch,
             "coefficient row-sum 2*eps finding must be a match entry");
    c.expect_close(value_of(r, "table_bell_coeff_sum"), 0.02, 1e-10,
                   "coefficient sum at eps = 0.01");
    c.expect(value_of(r, "solver_feasible") == 1.0,
             "solver must decompose the eps = 0.01 state");
    c.expect(value_of(r, "solver_residual") < 1e-10,
             "solver residual must be < 1e-10");
    c.expect(value_of(r, "solver_min_weight") >= -1e-12,
             "solved weights must be nonnegative");
    c.expect(value_of(r, "solver_bell_feasible") == 0.0,
             "pure entangled target must be infeasible");
    c.expect(value_of(r, "ppt_min_eigenvalue_bell") < 0.0,
             "partial-transpose witness must be negative");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 9. Fluctuation comparison: per composition, analytic and Monte Carlo
//    dispersion agree within 5% at 2*10^4 trials; the printed reference
//    numbers stay conformance metadata with no assertion on them.
void criterion_9() {
  Criterion c(9, "two-picture dispersion: oracle agreement");
  try {
    NmrConfig cfg;  // n = 10^6, eps = 0.01, trials = 2*10^4
    const ScenarioReport r = run_nmr_comparison(cfg, kSeed);

    const double ea = value_of(r, "fluct_effective_analytic");
    const double em = value_of(r, "fluct_effective_mc");
    if (ea == 0.0) {
      c.expect(em == 0.0, "zero-dispersion side must sample exactly zero");
    } else {
      c.expect_close(em, ea, 0.05 * ea, "effective-side oracle gap (5%)");
    }
    const double pa = value_of(r, "fluct_product_analytic");
    const double pm = value_of(r, "fluct_product_mc");
    c.expect(pa > 0.0, "product side must disperse");
    c.expect_close(pm, pa, 0.05 * pa, "product-side oracle gap (5%)");

    for (const char* key :
         {"fluct_effective_analytic", "fluct_product_analytic"}) {
      c.expect(r.paper_reference_values.count(key) == 1 &&
                   r.conformance.count(key) == 1,
               std::string("reference metadata missing for ") + key);
    }
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 10. Key distribution: four-state intercept-resend QBER within 4 sigma of
//     1/4 at 10^5 photons; two-state intercept leaks everything with zero
//     errors; a quiet channel has exactly zero errors.  Under 60 s.
void criterion_10() {
  Criterion c(10, "key-distribution error and leak rates");
  try {
    Bb84Config four;  // photons = 10^5, four_state, intercept_resend_z
    const ScenarioReport rf = run_bb84(four, kSeed);
    const double sifted = value_of(rf, "sifted_length");
    c.expect(sifted > 0.0, "four-state run must sift a key");
    c.expect_close(value_of(rf, "qber"), 0.25,
                   4.0 * std::sqrt(0.25 * 0.75 / sifted),
                   "four-state intercept QBER (4 sigma)");

    Bb84Config two;
    two.preparation = "two_state";
    const ScenarioReport rt = run_bb84(two, kSeed);
    c.expect(value_of(rt, "qber") == 0.0,
             "two-state intercept QBER must be exactly 0");
    c.expect(value_of(rt, "eve_information_fraction") == 1.0,
             "two-state intercept leak must be exactly 1");

    for (const char* prep : {"four_state", "two_state"}) {
      Bb84Config quiet;
      quiet.preparation = prep;
      quiet.eve = "none";
      const ScenarioReport rq = run_bb84(quiet, kSeed);
      c.expect(value_of(rq, "qber") == 0.0,
               std::string(prep) + " quiet-channel QBER must be exactly 0");
    }
    c.expect_runtime(60.0);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

// 11. Determinism: identical seeds render byte-identical reports for every
//     scenario, with and without internal parallelism.
void criterion_11() {
  Criterion c(11, "byte-identical reruns across seeds and threads");
  try {
    const auto render = [](const ScenarioReport& r) {
      return render_report(r, OutputFormat::kJsonRecords);
    };
    const auto check = [&](const std::string& name, const std::string& a,
                           const std::string& b, const std::string& p) {
      c.expect(a == b, name + ": rerun differs");
      c.expect(a == p, name + ": threaded run differs");
    };

    DespagnatConfig d;
    d.n = 2000;
    d.trials = 2000;
    DespagnatConfig dp = d;
    dp.threads = 4;
    check("despagnat", render(run_despagnat(d, kSeed)),
          render(run_despagnat(d, kSeed)), render(run_despagnat(dp, kSeed)));

    CollapseConfig col;
    col.n = 2000;
    col.runs = 200;
    CollapseConfig colp = col;
    colp.threads = 4;
    check("collapse", render(run_collapse_chain(col, kSeed)),
          render(run_collapse_chain(col, kSeed)),
          render(run_collapse_chain(colp, kSeed)));

    PeresConfig per;
    per.sizes = {10, 40};
    per.trials = 2000;
    PeresConfig perp = per;
    perp.threads = 4;
    check("peres", render(run_peres_distinguisher(per, kSeed)),
          render(run_peres_distinguisher(per, kSeed)),
          render(run_peres_distinguisher(perp, kSeed)));

    PreskillConfig pre;
    pre.n = 2000;
    PreskillConfig prep = pre;
    prep.threads = 4;
    check("preskill", render(run_preskill_correlation(pre, kSeed)),
          render(run_preskill_correlation(pre, kSeed)),
          render(run_preskill_correlation(prep, kSeed)));

    BellPairConfig bp;
    bp.trials = 2000;
    BellPairConfig bpp = bp;
    bpp.threads = 4;
    check("bellpair", render(run_bell_pair_distinguish(bp, kSeed)),
          render(run_bell_pair_distinguish(bp, kSeed)),
          render(run_bell_pair_distinguish(bpp, kSeed)));

    Bb84Config bb;
    bb.photons = 5000;
    Bb84Config bbp = bb;
    bbp.threads = 4;
    check("bb84", render(run_bb84(bb, kSeed)), render(run_bb84(bb, kSeed)),
          render(run_bb84(bbp, kSeed)));

    NmrConfig nm;
    nm.n = 10000;
    nm.epsilon = 0.01;
    nm.trials = 2000;
    NmrConfig nmp = nm;
    nmp.threads = 4;
    check("nmr", render(run_nmr_comparison(nm, kSeed)),
          render(run_nmr_comparison(nm, kSeed)),
          render(run_nmr_comparison(nmp, kSeed)));
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
