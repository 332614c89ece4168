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

// Generators shared by the unit tests and the acceptance binary.

#include <vector>

#include "cpmult/random.hpp"
#include "cpmult/schur.hpp"

namespace cpm::testing {

// Gram kernel k(x, y) = b_x* b_y, positive definite by construction.
inline Kernel gram_kernel(Rng& rng, const Algebra& alg, int m, int rank) {
  std::vector<std::vector<CMatrix>> b(static_cast<size_t>(m));
  for (int x = 0; x < m; ++x) {
    for (int k = 0; k < alg.num_blocks(); ++k) {
      b[x].push_back(random_matrix(rng, rank, alg.block_size(k)));
    }
  }
  std::vector<AlgElement> v;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      std::vector<CMatrix> blocks;
      for (int k = 0; k < alg.num_blocks(); ++k) blocks.push_back(b[x][k].adjoint() * b[y][k]);
      v.emplace_back(alg, std::move(blocks));
    }
  }
  return Kernel(m, alg, std::move(v));
}

inline Kernel random_hermitian_kernel(Rng& rng, const Algebra& alg, int m) {
  std::vector<AlgElement> v(static_cast<size_t>(m * m), AlgElement::zero(alg));
  for (int x = 0; x < m; ++x) {
    for (int y = x; y < m; ++y) {
      AlgElement a = random_element(rng, alg);
      if (x == y) a = 0.5 * (a + a.adjoint());
      v[x * m + y] = a;
      v[y * m + x] = a.adjoint();
    }
  }
  return Kernel(m, alg, std::move(v));
}

// phi(x, y)(a) = V(x)* rho(a) V(y) for random V(x) and random multiplicities.
inline SchurMultiplierFn random_positive_type(Rng& rng, const Algebra& alg, int m) {
  StinespringData s;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int mult = rng.uniform_int(0, 2);
    s.multiplicities.push_back(mult);
    s.dilation_dim += mult * alg.block_size(k);
  }
  if (s.dilation_dim == 0) {
    s.multiplicities[0] = 1;
    s.dilation_dim = alg.block_size(0);
  }
  const int d = alg.rep_dim();
  for (int x = 0; x < m; ++x) s.v_ops.push_back(random_matrix(rng, s.dilation_dim, d));
  const Algebra out = Algebra::full(d);
  std::vector<CBMap> v;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      v.push_back(CBMap::from_function(alg, out, [&](const AlgElement& a) {
        return AlgElement::from_matrix(out, s.v_ops[x].adjoint() * s.rho(a) * s.v_ops[y]);
      }));
    }
  }
  return SchurMultiplierFn(m, alg, std::move(v));
}

}  // namespace cpm::testing
