// Copyright (c) 2026 The sgvad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGVAD_COMMON_RNG_H_
#define SGVAD_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sgvad {

using Rng = std::mt19937_64;

// Derives an independent stream from a base seed and a tuple of stream ids
// (epoch, step, sample index, ...). Streams with different ids do not
// depend on the order in which they are created.
inline Rng MakeRng(uint64_t seed, std::initializer_list<uint64_t> stream = {}) {
  auto mix = [](uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  uint64_t state = mix(seed);
  for (uint64_t id : stream) state = mix(state ^ mix(id));
  return Rng(state);
}

// Uniform integer in [lo, hi], both inclusive.
inline int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace sgvad

#endif  // SGVAD_COMMON_RNG_H_
