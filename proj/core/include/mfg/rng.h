// Copyright 2026 The mfgkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MFG_RNG_H_
#define MFG_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace mfg {

inline constexpr const char* kRngName = "mt19937_64/splitmix64 v1";

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream `stream` of the generator family keyed by `seed`:
// mt19937_64 seeded with splitmix64(splitmix64(seed) + stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(SplitMix64(SplitMix64(seed) + stream)) {}

  // Uniform on [0, 1) from the top 53 bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Unit-rate exponential.
  double Exponential() { return -std::log1p(-Uniform()); }

  // Index drawn with probability proportional to `weights` (nonnegative,
  // positive total).
  int Categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = Uniform() * total;
    int last = -1;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
      if (weights[i] <= 0.0) continue;
      last = i;
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return last;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mfg

#endif  // MFG_RNG_H_
