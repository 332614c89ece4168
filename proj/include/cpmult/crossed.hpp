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

// Finite groups acting on A by *-automorphisms, the regular covariant pair
// (pi, lambda) on l2(G) (x) C^d, and the reduced crossed product spanned by
// pi(a) lambda_t.
//
// Conventions: group elements are indices 0..n-1. lambda_t sends delta_s (x) xi
// to delta_{ts} (x) xi, so block (ts, s) of lambda_t is I_d. pi(a) is block
// diagonal with block s equal to embed(alpha_{s^-1}(a)).

#include <optional>
#include <string>
#include <vector>

#include "cpmult/algebra.hpp"

namespace cpm {

class Rng;

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Cayley table mul[s][t] = st. Throws InvalidSystem unless it defines a group.
  explicit FiniteGroup(std::vector<std::vector<int>> mul);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);

  int order() const { return static_cast<int>(mul_.size()); }
  int identity() const { return identity_; }
  int mul(int s, int t) const { return mul_[s][t]; }
  int inv(int s) const { return inv_[s]; }
  const std::vector<std::vector<int>>& table() const { return mul_; }
  /// Throws BadElement.
  void check_element(int t) const;

 private:
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int identity_ = 0;
};

/// a -> (U_k a_k U_k^*) placed at block perm[k].
class Automorphism {
 public:
  Automorphism() = default;
  /// Throws InvalidSystem on a non-permutation, size mismatch or non-unitary U.
  Automorphism(Algebra alg, std::vector<int> perm, std::vector<CMatrix> unitaries);
  static Automorphism identity(const Algebra& alg);

  const Algebra& algebra() const { return alg_; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<CMatrix>& unitaries() const { return unitaries_; }
  AlgElement apply(const AlgElement& a) const;
  CBMap as_map() const;

 private:
  Algebra alg_;
  std::vector<int> perm_;
  std::vector<CMatrix> unitaries_;
};

/// Raw system description as read from input, before validation.
struct SystemSpec {
  std::vector<std::vector<int>> mul;
  std::vector<int> blocks;
  struct Action {
    std::vector<int> perm;
    std::vector<CMatrix> unitaries;
  };
  std::vector<Action> action;
  std::optional<std::vector<double>> trace_weights;
};

struct ValidationItem {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Every invariant of a system, itemized: group laws, automorphisms,
/// alpha_e = id, alpha_s alpha_t = alpha_st, trace invariance.
std::vector<ValidationItem> validate_system(const SystemSpec& spec, double tol = 1e-10);

class DynamicalSystem {
 public:
  DynamicalSystem() = default;
  /// Throws InvalidSystem if alpha is not a homomorphism or tau is not
  /// alpha-invariant (residuals above tol).
  DynamicalSystem(FiniteGroup group, Algebra alg, std::vector<Automorphism> action,
                  std::optional<TracialState> trace = std::nullopt, double tol = 1e-10);

  const FiniteGroup& group() const { return group_; }
  const Algebra& algebra() const { return alg_; }
  int order() const { return group_.order(); }
  const Automorphism& alpha(int t) const { return action_[t]; }
  const CBMap& alpha_map(int t) const { return maps_[t]; }
  AlgElement act(int t, const AlgElement& a) const;
  bool has_trace() const { return trace_.has_value(); }
  /// Throws NoTrace.
  const TracialState& trace() const;

  /// Size of the matrices representing the crossed product: n * d.
  int rep_dim() const { return order() * alg_.rep_dim(); }
  /// Linear dimension of the crossed product: n * dim A.
  int crossed_dim() const { return order() * alg_.dim(); }

  friend bool operator==(const DynamicalSystem& a, const DynamicalSystem& b);

 private:
  FiniteGroup group_;
  Algebra alg_;
  std::vector<Automorphism> action_;
  std::vector<CBMap> maps_;
  std::optional<TracialState> trace_;
};

/// Throws InvalidSystem with every failing item listed.
DynamicalSystem build_system(const SystemSpec& spec, double tol = 1e-10);
SystemSpec to_spec(const DynamicalSystem& sys);

/// Coefficients (a_t)_{t in G} of x = sum_t pi(a_t) lambda_t.
struct CrossedElement {
  std::vector<AlgElement> coeffs;

  static CrossedElement zero(const DynamicalSystem& sys);
  /// a at group element t, zero elsewhere.
  static CrossedElement monomial(const DynamicalSystem& sys, const AlgElement& a, int t);
  /// Basis element index = t * dim A + j: e_j at t.
  static CrossedElement basis(const DynamicalSystem& sys, int index);
  /// Coordinates in that basis, t-major.
  CVector coords() const;
  static CrossedElement from_coords(const DynamicalSystem& sys, const CVector& c);
};

CMatrix rep_pi(const DynamicalSystem& sys, const AlgElement& a);
/// Throws BadElement.
CMatrix rep_lambda(const DynamicalSystem& sys, int t);
CMatrix synth(const DynamicalSystem& sys, const CrossedElement& x);

/// Product and adjoint computed on coefficients:
/// (xy)_r = sum_s a_s alpha_s(b_{s^-1 r}),  (x^*)_t = alpha_t(a_{t^-1}^*).
CrossedElement crossed_mul(const DynamicalSystem& sys, const CrossedElement& x,
                           const CrossedElement& y);
CrossedElement crossed_adjoint(const DynamicalSystem& sys, const CrossedElement& x);
CrossedElement crossed_add(const CrossedElement& x, const CrossedElement& y,
                           Complex c = 1.0);

/// E(X) = alpha_t(X_{t,t}), which must not depend on t. Throws
/// NotInCrossedProduct when the diagonal blocks are inconsistent beyond
/// tol * max(1, ||X||_F) or leave embed(A).
AlgElement cond_exp(const DynamicalSystem& sys, const CMatrix& x, double tol = 1e-9);
/// E(X lambda_t^*). Same errors as cond_exp, plus BadElement.
AlgElement fourier_coeff(const DynamicalSystem& sys, const CMatrix& x, int t,
                         double tol = 1e-9);
/// All Fourier coefficients, after a full membership test (throws
/// NotInCrossedProduct).
CrossedElement analyze(const DynamicalSystem& sys, const CMatrix& x, double tol = 1e-9);

/// max over p, q of ||X_{p,q} - alpha_{p^-1}(X_{e, q p^-1})|| together with the
/// distance of the row-e blocks from embed(A). Zero exactly on the crossed
/// product.
double crossed_membership_residual(const DynamicalSystem& sys, const CMatrix& x);

/// max over t and basis a of ||pi(alpha_t(a)) - lambda_t pi(a) lambda_t^*||.
double covariance_residual(const DynamicalSystem& sys);
/// Numerical rank of the Gram matrix of {synth(basis_i)}; n * dim A when synth
/// is injective.
int synth_rank(const DynamicalSystem& sys);

CrossedElement random_crossed_element(Rng& rng, const DynamicalSystem& sys);

}  // namespace cpm
