// Copyright 2026 The convsec Authors.
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

#ifndef CONVSEC_RNG_H_
#define CONVSEC_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace convsec {

// Derives an independent stream seed from (base, stream) with SplitMix64.
std::uint64_t MixSeed(std::uint64_t base, std::uint64_t stream);

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the distributions below are written out here
// because the <random> distributions are implementation-defined and golden
// files must replay bit-for-bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);
  bool Bernoulli(double p);
  // Binomial(n, 1/2) as a count of fair coin flips.
  int BinomialHalf(int n);
  // Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace convsec

#endif  // CONVSEC_RNG_H_
