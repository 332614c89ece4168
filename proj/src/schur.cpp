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

#include "cpmult/schur.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpmult/error.hpp"
#include "cpmult/random.hpp"

namespace cpm {

Kernel::Kernel(int points, Algebra alg, std::vector<AlgElement> values)
    : points_(points), alg_(std::move(alg)), values_(std::move(values)) {
  if (points_ < 1) throw Error(ErrorCode::ShapeMismatch, "index set must be nonempty");
  if (static_cast<int>(values_.size()) != points_ * points_) {
    throw Error(ErrorCode::ShapeMismatch, "kernel needs m*m values");
  }
  for (const auto& v : values_) {
    if (!(v.algebra() == alg_)) throw Error(ErrorCode::AlgebraMismatch, "kernel value");
  }
}

BlockOperator make_block_operator(int points, int block_dim, CMatrix mat) {
  if (mat.rows() != points * block_dim || mat.cols() != points * block_dim) {
    throw Error(ErrorCode::ShapeMismatch, "block operator size");
  }
  return BlockOperator{points, block_dim, std::move(mat)};
}

BlockOperator t_of_k(const Kernel& k) {
  const int m = k.points();
  const int d = k.algebra().rep_dim();
  CMatrix t = CMatrix::Zero(m * d, m * d);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) t.block(x * d, y * d, d, d) = k.at(x, y).embed();
  }
  return BlockOperator{m, d, std::move(t)};
}

double kernel_l2_norm(const Kernel& k) {
  double s = 0.0;
  for (int x = 0; x < k.points(); ++x) {
    for (int y = 0; y < k.points(); ++y) s += std::pow(k.at(x, y).norm(), 2);
  }
  return std::sqrt(s);
}

bool is_hermitian_kernel(const Kernel& k, double tol) {
  for (int x = 0; x < k.points(); ++x) {
    for (int y = 0; y <= x; ++y) {
      const CMatrix diff = k.at(x, y).adjoint().embed() - k.at(y, x).embed();
      if (diff.norm() > tol * std::max(1.0, k.at(x, y).embed().norm())) return false;
    }
  }
  return true;
}

bool is_pd_on_tuple(const Kernel& k, const std::vector<int>& tuple, double tol) {
  for (int x : tuple) {
    if (x < 0 || x >= k.points()) throw Error(ErrorCode::ShapeMismatch, "tuple point");
  }
  return is_positive_matrix(
      k.algebra(), static_cast<int>(tuple.size()),
      [&](int p, int q) { return k.at(tuple[p], tuple[q]); }, tol);
}

bool is_pd_kernel(const Kernel& k, double tol) {
  std::vector<int> all(static_cast<size_t>(k.points()));
  for (int x = 0; x < k.points(); ++x) all[x] = x;
  return is_pd_on_tuple(k, all, tol);
}

SchurMultiplierFn::SchurMultiplierFn(int points, Algebra alg, std::vector<CBMap> values)
    : points_(points), alg_(std::move(alg)), values_(std::move(values)) {
  if (points_ < 1) throw Error(ErrorCode::ShapeMismatch, "index set must be nonempty");
  if (static_cast<int>(values_.size()) != points_ * points_) {
    throw Error(ErrorCode::ShapeMismatch, "multiplier needs m*m values");
  }
  const Algebra out = Algebra::full(alg_.rep_dim());
  for (const auto& v : values_) {
    if (!(v.source() == alg_) || !(v.target() == out)) {
      throw Error(ErrorCode::ShapeMismatch, "multiplier values must map A into M_d");
    }
  }
}

SchurMultiplierFn SchurMultiplierFn::identity(int points, const Algebra& alg) {
  return SchurMultiplierFn(points, alg,
                           std::vector<CBMap>(static_cast<size_t>(points * points),
                                              CBMap::embedding(alg)));
}

Kernel pointwise(const SchurMultiplierFn& phi, const Kernel& k) {
  if (phi.points() != k.points() || !(phi.algebra() == k.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, "multiplier and kernel disagree");
  }
  std::vector<AlgElement> out;
  for (int x = 0; x < k.points(); ++x) {
    for (int y = 0; y < k.points(); ++y) out.push_back(phi.at(x, y).apply(k.at(x, y)));
  }
  return Kernel(k.points(), Algebra::full(phi.out_dim()), std::move(out));
}

BlockOperator schur_apply(const SchurMultiplierFn& phi, const BlockOperator& b, double tol) {
  const int m = phi.points();
  const int d = phi.algebra().rep_dim();
  if (b.points != m || b.block_dim != d) {
    throw Error(ErrorCode::ShapeMismatch, "block operator does not match multiplier");
  }
  CMatrix out = CMatrix::Zero(m * d, m * d);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const AlgElement a = AlgElement::from_matrix(phi.algebra(), b.block(x, y), tol);
      out.block(x * d, y * d, d, d) = phi.at(x, y).apply(a).embed();
    }
  }
  return BlockOperator{m, d, std::move(out)};
}

CBMap assemble_psi(const SchurMultiplierFn& phi) {
  const int m = phi.points();
  const int d = phi.out_dim();
  const Algebra& alg = phi.algebra();
  const int big = m * d;
  CMatrix act(big * big, alg.dim());
  // Target M_{md} is a single block; its basis index of (X, Y) is X * big + Y.
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const CMatrix& a = phi.at(x, y).action();  // (d*d) x dim A
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          act.row((x * d + i) * big + (y * d + j)) = a.row(i * d + j);
        }
      }
    }
  }
  return CBMap(alg, Algebra::full(big), std::move(act));
}

bool is_positive_type(const SchurMultiplierFn& phi, double tol) {
  return is_cp(assemble_psi(phi), tol);
}

SamplingResult sample_positive_type(const SchurMultiplierFn& phi, int samples,
                                    std::uint64_t seed, double tol) {
  Rng rng(seed);
  const Algebra& alg = phi.algebra();
  const int d = phi.out_dim();
  SamplingResult res;
  for (int s = 0; s < samples; ++s) {
    const int r = rng.uniform_int(1, std::max(2, std::min(4, 2 * phi.points())));
    std::vector<int> tuple(static_cast<size_t>(r));
    for (auto& x : tuple) x = rng.uniform_int(0, phi.points() - 1);
    // Positive (a_pq) in M_r(A): per algebra block P_b = B_b* B_b with B_b of
    // random rank, so low-rank extreme directions are sampled too.
    std::vector<CMatrix> pos;
    for (int b = 0; b < alg.num_blocks(); ++b) {
      const int nb = alg.block_size(b);
      const CMatrix bb = random_matrix(rng, rng.uniform_int(1, r * nb), r * nb);
      pos.push_back(bb.adjoint() * bb);
    }
    CMatrix out(r * d, r * d);
    for (int p = 0; p < r; ++p) {
      for (int q = 0; q < r; ++q) {
        std::vector<CMatrix> blocks;
        for (int b = 0; b < alg.num_blocks(); ++b) {
          const int nb = alg.block_size(b);
          blocks.push_back(pos[b].block(p * nb, q * nb, nb, nb));
        }
        const AlgElement a(alg, std::move(blocks));
        out.block(p * d, q * d, d, d) = phi.at(tuple[p], tuple[q]).apply(a).embed();
      }
    }
    ++res.samples;
    const double scale = std::max(1.0, out.norm());
    if (hermitian_residual(out) > tol * scale) {
      res.violation_found = true;
      res.worst_ratio = std::min(res.worst_ratio, -1.0);
      continue;
    }
    const Spectrum sp = hermitian_spectrum(out, 1.0);
    const double ratio = sp.min_eig / std::max(1.0, sp.max_abs);
    res.worst_ratio = std::min(res.worst_ratio, ratio);
    if (ratio < -tol) res.violation_found = true;
  }
  return res;
}

namespace {

StinespringData split_by_points(const SchurMultiplierFn& phi, StinespringData whole) {
  const int m = phi.points();
  const int d = phi.out_dim();
  StinespringData s;
  s.dilation_dim = whole.dilation_dim;
  s.multiplicities = whole.multiplicities;
  for (int x = 0; x < m; ++x) s.v_ops.push_back(whole.v_ops[0].middleCols(x * d, d));
  for (int j = 0; j < phi.algebra().dim(); ++j) {
    const AlgElement e = AlgElement::basis(phi.algebra(), j);
    const CMatrix r = s.rho(e);
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        const CMatrix lhs = phi.at(x, y).apply(e).embed();
        const CMatrix rhs = s.v_ops[x].adjoint() * r * s.v_ops[y];
        s.residual = std::max(s.residual, (lhs - rhs).norm());
      }
    }
  }
  return s;
}

}  // namespace

StinespringData stinespring_multi(const SchurMultiplierFn& phi, double tol) {
  const CBMap psi = assemble_psi(phi);
  if (!is_cp(psi, tol)) {
    throw Error(ErrorCode::NotPositiveType, "multiplier is not of positive type");
  }
  return split_by_points(phi, stinespring(psi, tol));
}

StinespringData stinespring_multi_positive_part(const SchurMultiplierFn& phi, double tol) {
  return split_by_points(phi, stinespring_positive_part(assemble_psi(phi), tol));
}

double schur_norm_at_unit(const SchurMultiplierFn& phi) {
  const int m = phi.points();
  const int d = phi.algebra().rep_dim();
  const BlockOperator one{m, d, CMatrix::Identity(m * d, m * d)};
  return op_norm(schur_apply(phi, one).mat);
}

}  // namespace cpm
