// Copyright 2026 The csbm Authors.
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

#ifndef CSBM_RNG_HPP_
#define CSBM_RNG_HPP_

#include <cstdint>
#include <random>

namespace csbm {

// All sampling in the library draws from a 64-bit Mersenne twister. Uniform
// variates are derived from raw engine output so that streams are identical
// across standard library implementations.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Derived stream seed for one Monte Carlo trial; a pure function of its
// arguments so that results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell_index,
                          std::uint64_t trial_index);

}  // namespace csbm

#endif  // CSBM_RNG_HPP_
