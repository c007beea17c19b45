// Copyright 2026 The Authors.
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

#ifndef MBT_RNG_H_
#define MBT_RNG_H_

#include <cstdint>
#include <random>

namespace mbt {

// Seeded random stream. The uniform conversion is done here rather than with
// std::uniform_real_distribution so that draws are bit-identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix(seed)) {}

  // Independent stream `index` derived from a master seed. Workers (or trial
  // blocks) each take their own stream.
  static Rng Stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(Mix(seed) ^ Mix(index + 0x632be59bd9b4e019ULL));
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t NextU64() { return engine_(); }

 private:
  // splitmix64 finalizer.
  static std::uint64_t Mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mbt

#endif  // MBT_RNG_H_
