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

#ifndef QENSIM_RNG_HPP_
#define QENSIM_RNG_HPP_

#include <cstdint>
#include <random>

namespace qensim {

// Deterministic counter-based random stream.  A stream is identified by
// (master_seed, stream_id); equal identifiers always yield the same draw
// sequence, regardless of platform or how work is split across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();
  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Child stream derived from identifiers only; does not consume or disturb
  // this stream's state.  substream(k) is reproducible in isolation.
  RngStream substream(std::uint64_t counter) const;

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return id_; }

 private:
  std::uint64_t master_;
  std::uint64_t id_;
  std::mt19937_64 engine_;
};

}  // namespace qensim

#endif  // QENSIM_RNG_HPP_
