// core/include/fsde/rng.hpp

// Copyright 2026  fsde contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FSDE_RNG_HPP
#define FSDE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

namespace fsde {

// Deterministic random stream. All sampling goes through hand-rolled
// transforms of mt19937_64 output so that sequences are bit-identical across
// standard-library versions (std::*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [lo, hi], inclusive. Unbiased (Lemire rejection).
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller. Two engine draws per sample, no cached
  // spare, so the stream state is exactly the engine state.
  double Normal();

  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  // Serializes/restores the engine state (exact).
  std::string SaveState() const;
  void LoadState(const std::string& s);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive well-separated child seeds.
uint64_t SplitMix64(uint64_t& state);

// Derives a child seed from a root seed and a key path, e.g.
// DeriveSeed(seed, {kDomainStream, subject_id, frame_index}).
uint64_t DeriveSeed(uint64_t root, std::initializer_list<uint64_t> keys);

}  // namespace fsde

#endif  // FSDE_RNG_HPP
