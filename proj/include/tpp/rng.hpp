// Copyright 2026 The tpp authors.
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

#ifndef TPP_RNG_HPP_
#define TPP_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <limits>

namespace tpp {

// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random stream seeded by a 64-bit integer. The state walks
// the SplitMix64 sequence, so identical seeds give identical draws on any
// platform. Exponential draws use the inverse CDF -ln(U)/rate exclusively,
// so a stream's uniforms fully determine every derived draw.
//
// Streams are cheap value types; copy one to replay a draw sequence. Do
// not share a stream across concurrent tasks — derive one per task with
// substream().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  // Independent stream for replicate k of a batch keyed by `seed`.
  // Derivation: mix64(seed ^ (k + 1) * 0x9E3779B97F4A7C15). The multiplier
  // is odd, so distinct k give distinct pre-mix words for a fixed seed.
  static RngStream substream(std::uint64_t seed, std::uint64_t k) {
    return RngStream(mix64(seed ^ ((k + 1) * 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1): 53-bit grid offset by half a
  // step, so 0 and 1 are never returned and logs are always finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // -ln(U)/rate. rate == 0 yields +infinity (no arrival).
  double exponential(double rate) { return -std::log(uniform01()) / rate; }

 private:
  std::uint64_t state_;
};

}  // namespace tpp

#endif  // TPP_RNG_HPP_
