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
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qensim/report.hpp"
#include "qensim/scenarios.hpp"

namespace {

struct CommonArgs {
  std::uint64_t seed = 0;
  std::string format = "json-records";
  std::string output;
  int threads = 1;
};

void add_common_flags(CLI::App* sub, CommonArgs* args) {
  sub->add_option("--seed", args->seed, "Master RNG seed; all randomness derives from it")
      ->capture_default_str();
  sub->add_option("--format", args->format, "Report format")
      ->check(CLI::IsMember({"json-records", "csv"}))
      ->capture_default_str();
  sub->add_option("--output", args->output, "Write the report to this file instead of stdout");
  sub->add_option("--threads", args->threads, "Worker threads (never changes output bytes)")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
}

void emit(const qensim::ScenarioReport& report, const CommonArgs& args) {
  qensim::emit_report(report, qensim::parse_output_format(args.format),
                      args.output.empty()
                          ? std::nullopt
                          : std::optional<std::string>(args.output));
}

// String-level validator: unsigned, even, and at least two.
std::string check_even_min2(std::string& s) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) return "not an integer: " + s;
    if (v < 2 || v % 2 != 0) return "must be an even integer >= 2: " + s;
  } catch (const std::exception&) {
    return "not an integer: " + s;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qensim: ensembles of pure quantum states with explicit compositions — "
      "global-fluctuation, collapse, distinguisher, key-distribution and "
      "spin-resonance scenario runners"};
  app.require_subcommand(1);
  const CLI::Validator even_check(check_even_min2, "EVEN>=2", "even_min2");

  qensim::DespagnatConfig despagnat;
  CommonArgs despagnat_args;
  {
    CLI::App* sub = app.add_subcommand(
        "despagnat", "Same compressed state, zero vs sqrt(N) global sigma_z fluctuation");
    sub->add_option("--n", despagnat.n, "Molecules per ensemble")
        ->check(even_check)
        ->capture_default_str();
    sub->add_option("--trials", despagnat.trials, "Repeated global measurements")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}))
        ->capture_default_str();
    add_common_flags(sub, &despagnat_args);
    sub->callback([&] {
      despagnat.threads = despagnat_args.threads;
      emit(qensim::run_despagnat(despagnat, despagnat_args.seed),
           despagnat_args);
    });
  }

  qensim::CollapseConfig collapse;
  CommonArgs collapse_args;
  {
    CLI::App* sub = app.add_subcommand(
        "collapse", "Remote measurement over shared pairs: composition collapse at a distance");
    sub->add_option("--n", collapse.n, "Entangled pairs")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1000000000}))
        ->capture_default_str();
    sub->add_option("--basis", collapse.basis, "Measurement basis on the far side")
        ->check(CLI::IsMember({"z", "x"}))
        ->capture_default_str();
    sub->add_option("--runs", collapse.runs, "Independent repetitions for imbalance statistics")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{10000000}))
        ->capture_default_str();
    add_common_flags(sub, &collapse_args);
    sub->callback([&] {
      collapse.threads = collapse_args.threads;
      emit(qensim::run_collapse_chain(collapse, collapse_args.seed),
           collapse_args);
    });
  }

  qensim::PeresConfig peres;
  CommonArgs peres_args;
  {
    CLI::App* sub = app.add_subcommand(
        "peres", "Single-shot discrimination of equal-density-matrix mixtures");
    sub->add_option("--sizes", peres.sizes, "Ensemble sizes to sweep")
        ->delimiter(',')
        ->check(even_check)
        ->capture_default_str();
    sub->add_option("--trials", peres.trials, "Distinguisher trials per size")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{100000000}))
        ->capture_default_str();
    add_common_flags(sub, &peres_args);
    sub->callback([&] {
      peres.threads = peres_args.threads;
      emit(qensim::run_peres_distinguisher(peres, peres_args.seed),
           peres_args);
    });
  }

  qensim::PreskillConfig preskill;
  CommonArgs preskill_args;
  {
    CLI::App* sub = app.add_subcommand(
        "preskill", "Published x-basis outcomes vs local measurements on shared pairs");
    sub->add_option("--n", preskill.n, "Shared pairs")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000000000}))
        ->capture_default_str();
    sub->add_option("--alice-basis", preskill.alice_basis, "Local measurement basis")
        ->check(CLI::IsMember({"z", "x"}))
        ->capture_default_str();
    add_common_flags(sub, &preskill_args);
    sub->callback([&] {
      preskill.threads = preskill_args.threads;
      emit(qensim::run_preskill_correlation(preskill, preskill_args.seed),
           preskill_args);
    });
  }

  qensim::BellPairConfig bellpair;
  CommonArgs bellpair_args;
  {
    CLI::App* sub = app.add_subcommand(
        "bellpair", "Identical reduced states distinguished by a joint Bell-basis measurement");
    sub->add_option("--trials", bellpair.trials, "Classification trials per source")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
        ->capture_default_str();
    add_common_flags(sub, &bellpair_args);
    sub->callback([&] {
      bellpair.threads = bellpair_args.threads;
      emit(qensim::run_bell_pair_distinguish(bellpair, bellpair_args.seed),
           bellpair_args);
    });
  }

  qensim::Bb84Config bb84;
  CommonArgs bb84_args;
  {
    CLI::App* sub = app.add_subcommand(
        "bb84", "Key distribution with an optional intercept-resend eavesdropper");
    sub->add_option("--photons", bb84.photons, "Transmitted photons")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1000000000}))
        ->capture_default_str();
    sub->add_option("--preparation", bb84.preparation, "Sender state set")
        ->check(CLI::IsMember({"four_state", "two_state"}))
        ->capture_default_str();
    sub->add_option("--eve", bb84.eve, "Eavesdropper model")
        ->check(CLI::IsMember({"none", "intercept_resend_z"}))
        ->capture_default_str();
    add_common_flags(sub, &bb84_args);
    sub->callback([&] {
      bb84.threads = bb84_args.threads;
      emit(qensim::run_bb84(bb84, bb84_args.seed), bb84_args);
    });
  }

  qensim::NmrConfig nmr;
  CommonArgs nmr_args;
  {
    CLI::App* sub = app.add_subcommand(
        "nmr", "Effective-pure composition vs product decomposition of one mixed state");
    sub->add_option("--n", nmr.n, "Molecules")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000000000}))
        ->capture_default_str();
    sub->add_option("--epsilon", nmr.epsilon, "Effective admixture in (0, 1]")
        ->check(CLI::Range(1e-12, 1.0))
        ->capture_default_str();
    sub->add_option("--trials", nmr.trials, "Monte Carlo repetitions")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}))
        ->capture_default_str();
    sub->add_option("--dm-tolerance", nmr.dm_tolerance,
                    "Allowed compressed-state gap between the compared compositions")
        ->check(CLI::Range(1e-15, 1.0))
        ->capture_default_str();
    add_common_flags(sub, &nmr_args);
    sub->callback([&] {
      if (nmr.epsilon * static_cast<double>(nmr.n) < 1.0)
        throw CLI::ValidationError("--epsilon",
                                   "epsilon * n must be at least 1");
      nmr.threads = nmr_args.threads;
      emit(qensim::run_nmr_comparison(nmr, nmr_args.seed), nmr_args);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
