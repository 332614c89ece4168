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

// Kernels k : X x X -> A on a finite index set X = {0..m-1}, the operators
// T_k on C^m (x) H, and Schur A-multipliers phi : X x X -> CB(A, M_d).

#include <cstdint>
#include <vector>

#include "cpmult/algebra.hpp"

namespace cpm {

class Kernel {
 public:
  /// values in row-major (x, y) order, m * m entries.
  Kernel(int points, Algebra alg, std::vector<AlgElement> values);

  int points() const { return points_; }
  const Algebra& algebra() const { return alg_; }
  const AlgElement& at(int x, int y) const { return values_[x * points_ + y]; }

 private:
  int points_;
  Algebra alg_;
  std::vector<AlgElement> values_;
};

/// An element of M_m (x) B(C^d), stored as one (m d) square matrix.
struct BlockOperator {
  int points = 0;
  int block_dim = 0;
  CMatrix mat;

  CMatrix block(int x, int y) const {
    return mat.block(x * block_dim, y * block_dim, block_dim, block_dim);
  }
};

BlockOperator make_block_operator(int points, int block_dim, CMatrix mat);

/// (T_k xi)(x) = sum_y k(x, y) xi(y): block (x, y) is embed(k(x, y)).
BlockOperator t_of_k(const Kernel& k);

/// (sum_{x,y} ||k(x,y)||^2)^{1/2}, the bound ||T_k|| <= ||k||_2.
double kernel_l2_norm(const Kernel& k);

bool is_hermitian_kernel(const Kernel& k, double tol = kDefaultTol);

/// (k(x_i, x_j))_{i,j} in M_m(A)^+ for the tuple enumerating X, checked block
/// by block in the algebra (never through T_k).
bool is_pd_kernel(const Kernel& k, double tol = kDefaultTol);

/// Same test for an arbitrary tuple of points, repetitions allowed.
bool is_pd_on_tuple(const Kernel& k, const std::vector<int>& tuple,
                    double tol = kDefaultTol);

class SchurMultiplierFn {
 public:
  /// Each value maps alg into M_d, d = alg.rep_dim(); row-major (x, y).
  SchurMultiplierFn(int points, Algebra alg, std::vector<CBMap> values);

  int points() const { return points_; }
  const Algebra& algebra() const { return alg_; }
  int out_dim() const { return alg_.rep_dim(); }
  const CBMap& at(int x, int y) const { return values_[x * points_ + y]; }
  const std::vector<CBMap>& values() const { return values_; }

  /// phi(x, y) = id for all x, y (as maps A -> M_d through the embedding).
  static SchurMultiplierFn identity(int points, const Algebra& alg);

 private:
  int points_;
  Algebra alg_;
  std::vector<CBMap> values_;
};

/// (phi . k)(x, y) = phi(x, y)(k(x, y)), a kernel valued in M_d.
Kernel pointwise(const SchurMultiplierFn& phi, const Kernel& k);

/// S_phi on M_m (x) A. Throws NotInAlgebra if a block leaves embed(A) by more
/// than tol.
BlockOperator schur_apply(const SchurMultiplierFn& phi, const BlockOperator& b,
                          double tol = 1e-10);

/// Psi : A -> M_{m d}, Psi(a) = [phi(x, y)(a)]_{x,y}. phi is of positive type
/// iff Psi is completely positive.
CBMap assemble_psi(const SchurMultiplierFn& phi);

bool is_positive_type(const SchurMultiplierFn& phi, double tol = kDefaultTol);

/// Monte-Carlo search for a witness against positive type: random tuples of
/// points (repetitions allowed), random (a_pq) = B* B in M_r(A)^+, and a PSD
/// test of (phi(x_p, x_q)(a_pq)). Finding no witness is evidence, not proof.
struct SamplingResult {
  bool violation_found = false;
  int samples = 0;
  /// Most negative min-eigenvalue / max(1, norm) seen.
  double worst_ratio = 0.0;
};
SamplingResult sample_positive_type(const SchurMultiplierFn& phi, int samples,
                                    std::uint64_t seed, double tol = kDefaultTol);

/// phi(x, y)(a) = V(x)* rho(a) V(y). Throws NotPositiveType.
StinespringData stinespring_multi(const SchurMultiplierFn& phi, double tol = kDefaultTol);

/// Factorization of the CP part only (never throws); residual reports the
/// distance from phi.
StinespringData stinespring_multi_positive_part(const SchurMultiplierFn& phi,
                                                double tol = kDefaultTol);

/// ||S_phi(1)|| = max_x ||phi(x, x)(1_A)||; equals ||S_phi||_cb for positive
/// type phi.
double schur_norm_at_unit(const SchurMultiplierFn& phi);

}  // namespace cpm
