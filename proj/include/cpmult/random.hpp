// Copyright 2026 The cpmult Authors
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

// Seeded random generators for the sampling oracles and the test corpus.

#include <cstdint>
#include <random>

#include "cpmult/algebra.hpp"

namespace cpm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  Complex complex_normal() { return {normal(), normal()}; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Entries i.i.d. standard complex Gaussian.
CMatrix random_matrix(Rng& rng, int rows, int cols);

/// (G + G*) / 2 for a Gaussian G.
CMatrix random_hermitian(Rng& rng, int n);

/// Haar-ish unitary from the QR factor of a Gaussian matrix.
CMatrix random_unitary(Rng& rng, int n);

AlgElement random_element(Rng& rng, const Algebra& alg);

/// b* b for random b.
AlgElement random_positive_element(Rng& rng, const Algebra& alg);

/// sum of `terms` conjugations a -> K embed(a) K*, scaled so that
/// ||Phi(1)|| = 1 when normalize is set. Images are projected back onto the
/// target's block structure by using block-diagonal Kraus operators.
CBMap random_cp_map(Rng& rng, const Algebra& source, const Algebra& target,
                    int terms, bool normalize = true);

}  // namespace cpm
