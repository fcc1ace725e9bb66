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

#ifndef QENSIM_SAMPLING_HPP_
#define QENSIM_SAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "qensim/rng.hpp"

namespace qensim {

// Exact Binomial(n, p) draw by inverse transform.  The CDF walk starts at the
// distribution mode and expands outward, so the expected work is
// O(sqrt(n p (1-p))) rather than O(n).  Deterministic for a given stream.
std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);

// Exact multinomial draw via sequential binomial conditionals.  `probs` must
// be non-negative; it is normalized by its own sum.  Returns one count per
// category, summing to n.
std::vector<std::uint64_t> sample_multinomial(std::uint64_t n,
                                              const std::vector<double>& probs,
                                              RngStream& rng);

// Draws one category index from a discrete distribution given cumulative
// weights `cdf` (ascending, last entry treated as the total mass).
std::size_t sample_discrete(const std::vector<double>& cdf, RngStream& rng);

}  // namespace qensim

#endif  // QENSIM_SAMPLING_HPP_
