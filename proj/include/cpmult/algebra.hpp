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

// Finite-dimensional C*-algebras A = M_{n_1} + ... + M_{n_K} in their
// canonical block-diagonal representation on C^d, d = sum n_k, and linear
// maps between them stored as action matrices over the matrix-unit basis.
//
// Basis order: blocks in declaration order, within a block row-major e_{ij}.

#include <functional>
#include <vector>

#include "cpmult/linalg.hpp"

namespace cpm {

class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::vector<int> block_sizes);

  /// M_n as a single-block algebra.
  static Algebra full(int n) { return Algebra({n}); }

  const std::vector<int>& block_sizes() const { return sizes_; }
  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  int block_size(int k) const { return sizes_[k]; }
  int rep_dim() const { return rep_dim_; }
  int dim() const { return dim_; }
  int rep_offset(int k) const { return rep_offsets_[k]; }
  int basis_offset(int k) const { return basis_offsets_[k]; }

  /// Index of e_{ij} in block k.
  int basis_index(int k, int i, int j) const {
    return basis_offsets_[k] + i * sizes_[k] + j;
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> rep_offsets_;
  std::vector<int> basis_offsets_;
  int rep_dim_ = 0;
  int dim_ = 0;
};

class AlgElement {
 public:
  AlgElement() = default;
  AlgElement(Algebra alg, std::vector<CMatrix> blocks);

  static AlgElement zero(const Algebra& alg);
  static AlgElement unit(const Algebra& alg);
  static AlgElement basis(const Algebra& alg, int index);
  static AlgElement from_coords(const Algebra& alg, const CVector& coords);
  /// Reads the diagonal blocks of a d x d matrix; throws NotInAlgebra when the
  /// off-block part exceeds tol * max(1, ||m||_F).
  static AlgElement from_matrix(const Algebra& alg, const CMatrix& m,
                                double tol = 1e-10);
  /// Central element with scalar c_k on block k.
  static AlgElement central(const Algebra& alg, const std::vector<Complex>& c);

  const Algebra& algebra() const { return alg_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(int k) const { return blocks_[k]; }

  CVector coords() const;
  /// Canonical faithful representation: block-diagonal d x d matrix.
  CMatrix embed() const;
  AlgElement adjoint() const;
  double norm() const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(Complex c);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(AlgElement a, Complex c) { return a *= c; }
  friend AlgElement operator*(Complex c, AlgElement a) { return a *= c; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);

 private:
  Algebra alg_;
  std::vector<CMatrix> blocks_;
};

/// Off-block Frobenius mass of a d x d matrix relative to embed(A).
double membership_residual(const Algebra& alg, const CMatrix& m);

bool is_positive_element(const AlgElement& a, double tol = kDefaultTol);

/// Every block is a scalar multiple of the identity.
bool is_central(const AlgElement& a, double tol = 1e-10);

/// PSD test for an n x n matrix over A, (a_{pq}) in M_n(A)^+, evaluated block
/// by block: for each algebra block b the (n n_b)-square matrix of b-components
/// must be PSD. The threshold uses the largest block norm, which is the norm of
/// the matrix in M_n(B(H)).
bool is_positive_matrix(const Algebra& alg, int n,
                        const std::function<AlgElement(int, int)>& entry,
                        double tol = kDefaultTol);

class CBMap {
 public:
  CBMap() = default;
  /// action has shape target.dim() x source.dim().
  CBMap(Algebra source, Algebra target, CMatrix action);

  static CBMap identity(const Algebra& alg);
  static CBMap zero(const Algebra& source, const Algebra& target);
  static CBMap from_function(const Algebra& source, const Algebra& target,
                             const std::function<AlgElement(const AlgElement&)>& fn);
  /// a -> sum_k K_k embed(a) K_k^*, each K_k of shape target.rep_dim() x
  /// source.rep_dim(). Throws NotInAlgebra if images leave the target.
  static CBMap from_kraus(const Algebra& source, const Algebra& target,
                          const std::vector<CMatrix>& ops);
  /// a -> c a (left) or a -> a c (right).
  static CBMap left_multiplication(const AlgElement& c);
  static CBMap right_multiplication(const AlgElement& c);
  /// Transpose on M_n.
  static CBMap transpose(int n);
  /// A -> M_d, a -> embed(a).
  static CBMap embedding(const Algebra& alg);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  const CMatrix& action() const { return action_; }

  AlgElement apply(const AlgElement& a) const;
  AlgElement operator()(const AlgElement& a) const { return apply(a); }

  CBMap& operator+=(const CBMap& o);
  CBMap& operator*=(Complex c);
  friend CBMap operator+(CBMap a, const CBMap& b) { return a += b; }
  friend CBMap operator-(CBMap a, const CBMap& b) { return a += (-1.0) * b; }
  friend CBMap operator*(Complex c, CBMap a) { return a *= c; }

 private:
  Algebra source_;
  Algebra target_;
  CMatrix action_;
};

/// outer o inner.
CBMap compose(const CBMap& outer, const CBMap& inner);

/// Per source block k: C_k = sum_{ij} e_{ij} (x) embed(Phi(e^k_{ij})), of size
/// (n_k t) with t = target.rep_dim().
using ChoiBlocks = std::vector<CMatrix>;
ChoiBlocks choi(const CBMap& phi);

/// Every Choi block Hermitian and PSD within tol.
bool is_cp(const CBMap& phi, double tol = kDefaultTol);

/// For CP maps on a unital algebra ||Phi||_cb = ||Phi(1)||. Throws NotCP.
double cb_norm_cp(const CBMap& phi, double tol = kDefaultTol);

/// Kraus operators (target.rep_dim() x source.rep_dim()) from the Choi
/// eigendecomposition, eigenvalues below tol * max(1, ||C||) discarded.
/// Throws NotCP.
std::vector<CMatrix> kraus(const CBMap& phi, double tol = kDefaultTol);

struct StinespringData {
  int dilation_dim = 0;
  /// Number of copies of source block k in rho; copies are grouped by block.
  std::vector<int> multiplicities;
  /// One V per point (a single V for a plain map), each dilation_dim x t.
  std::vector<CMatrix> v_ops;
  /// Max over basis elements (and point pairs) of ||phi(a) - V* rho(a) V||.
  double residual = 0.0;

  /// rho(a) = (+)_k I_{m_k} (x) a_k.
  CMatrix rho(const AlgElement& a) const;
};

/// Phi(a) = V* rho(a) V. Throws NotCP.
StinespringData stinespring(const CBMap& phi, double tol = kDefaultTol);

/// Same construction from the nonnegative part of the Choi spectrum only; the
/// residual then measures how far phi is from that CP part. Never throws NotCP.
StinespringData stinespring_positive_part(const CBMap& phi, double tol = kDefaultTol);

class TracialState {
 public:
  TracialState() = default;
  /// Throws InvalidSystem unless all weights > 0 and sum w_k n_k = 1.
  TracialState(Algebra alg, std::vector<double> weights);
  /// Normalized trace restricted to each block with weight proportional to n_k
  /// (w_k = 1/d), i.e. tr(embed(a))/d.
  static TracialState normalized(const Algebra& alg);

  const Algebra& algebra() const { return alg_; }
  const std::vector<double>& weights() const { return weights_; }

  Complex operator()(const AlgElement& a) const;

 private:
  Algebra alg_;
  std::vector<double> weights_;
};

/// sum_k w_k tr(a_k). Throws AlgebraMismatch.
Complex trace_eval(const TracialState& tau, const AlgElement& a);

}  // namespace cpm
