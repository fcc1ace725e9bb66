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

#include "qensim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qensim {

namespace {

// ln C(n, k) via lgamma.
double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_binomial: p outside [0, 1]");
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;

  // Inverse transform anchored at the mode, expanding to whichever neighbor
  // carries more mass.  Expected number of steps is O(sqrt(n p (1-p))).
  const double u = rng.uniform();
  const std::uint64_t mode =
      std::min<std::uint64_t>(n, std::uint64_t(double(n + 1) * p));
  const double log_pmf_mode =
      log_choose(n, mode) + double(mode) * std::log(p) +
      double(n - mode) * std::log1p(-p);
  const double ratio = p / (1.0 - p);

  double pmf_lo = std::exp(log_pmf_mode);  // pmf at lo
  double pmf_hi = pmf_lo;                  // pmf at hi
  std::uint64_t lo = mode, hi = mode;
  double acc = pmf_lo;
  std::uint64_t last = mode;
  while (acc <= u) {
    // pmf of the next candidate on each side.
    double next_lo = lo > 0 ? pmf_lo * double(lo) / (double(n - lo + 1) * ratio)
                            : -1.0;
    double next_hi = hi < n ? pmf_hi * (double(n - hi) * ratio) / double(hi + 1)
                            : -1.0;
    if (next_lo < 0.0 && next_hi < 0.0) break;  // fp round-off: mass exhausted
    if (next_hi >= next_lo) {
      ++hi;
      pmf_hi = next_hi;
      acc += pmf_hi;
      last = hi;
    } else {
      --lo;
      pmf_lo = next_lo;
      acc += pmf_lo;
      last = lo;
    }
  }
  return last;
}

std::vector<std::uint64_t> sample_multinomial(std::uint64_t n,
                                              const std::vector<double>& probs,
                                              RngStream& rng) {
  if (probs.empty())
    throw std::invalid_argument("sample_multinomial: no categories");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0 || !std::isfinite(p))
      throw std::invalid_argument("sample_multinomial: bad probability");
    total += p;
  }
  if (total <= 0.0)
    throw std::invalid_argument("sample_multinomial: zero total mass");

  std::vector<std::uint64_t> counts(probs.size(), 0);
  std::uint64_t remaining = n;
  double mass_left = total;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    double cond = probs[i] / mass_left;
    cond = std::clamp(cond, 0.0, 1.0);
    counts[i] = sample_binomial(remaining, cond, rng);
    remaining -= counts[i];
    mass_left -= probs[i];
    if (mass_left <= 0.0) break;
  }
  // The final category absorbs whatever is left.
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) assigned += counts[i];
  counts.back() = n - assigned;
  return counts;
}

std::size_t sample_discrete(const std::vector<double>& cdf, RngStream& rng) {
  if (cdf.empty()) throw std::invalid_argument("sample_discrete: empty cdf");
  double u = rng.uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return std::size_t(it - cdf.begin());
}

}  // namespace qensim
