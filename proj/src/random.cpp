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

#include "cpmult/random.hpp"

namespace cpm {

CMatrix random_matrix(Rng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

CMatrix random_hermitian(Rng& rng, int n) {
  const CMatrix g = random_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_unitary(Rng& rng, int n) {
  const CMatrix g = random_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

AlgElement random_element(Rng& rng, const Algebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_sizes()) b.push_back(random_matrix(rng, n, n));
  return AlgElement(alg, std::move(b));
}

AlgElement random_positive_element(Rng& rng, const Algebra& alg) {
  const AlgElement b = random_element(rng, alg);
  return b.adjoint() * b;
}

CBMap random_cp_map(Rng& rng, const Algebra& source, const Algebra& target,
                    int terms, bool normalize) {
  // Each Kraus operator maps C^{d_src} into one target block; the image then
  // lies in that block of the target algebra.
  std::vector<CMatrix> ops;
  for (int t = 0; t < terms; ++t) {
    const int k = rng.uniform_int(0, target.num_blocks() - 1);
    CMatrix op = CMatrix::Zero(target.rep_dim(), source.rep_dim());
    op.middleRows(target.rep_offset(k), target.block_size(k)) =
        random_matrix(rng, target.block_size(k), source.rep_dim());
    ops.push_back(std::move(op));
  }
  CBMap phi = CBMap::from_kraus(source, target, ops);
  if (normalize) {
    const double n = op_norm(phi.apply(AlgElement::unit(source)).embed());
    if (n > 0.0) phi *= 1.0 / n;
  }
  return phi;
}

}  // namespace cpm
