// Copyright 2026 The eolpay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace eolpay {

/// Default seed used whenever a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// SplitMix64 generator. Streams derived with `split` are statistically
/// independent of the parent and of each other, and every draw is a fixed
/// function of the seed, so results are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  double normal();
  double exponential(double rate);

  /// Independent child stream identified by `stream_id`; does not advance this generator.
  Rng split(std::uint64_t stream_id) const;

 private:
  std::uint64_t state_;
};

}  // namespace eolpay
