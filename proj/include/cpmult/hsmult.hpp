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

// Herz-Schur (A, G, alpha)-multipliers F : G -> CB(A), their action S_F on the
// crossed product, the transference N(F), CP certification and the derived
// constructions h_Phi and h_F.

#include <cstdint>
#include <string>
#include <vector>

#include "cpmult/crossed.hpp"
#include "cpmult/schur.hpp"

namespace cpm {

class HSMultiplier {
 public:
  /// One map A -> A per group element.
  HSMultiplier(DynamicalSystem sys, std::vector<CBMap> values);
  static HSMultiplier identity(const DynamicalSystem& sys);
  static HSMultiplier zero(const DynamicalSystem& sys);
  /// F(t) = c_t id.
  static HSMultiplier scalar(const DynamicalSystem& sys, const std::vector<Complex>& c);
  /// F(t)(a) = phi(t) a.
  static HSMultiplier left_multiplier(const DynamicalSystem& sys, const std::vector<AlgElement>& phi);

  const DynamicalSystem& system() const { return sys_; }
  const CBMap& at(int t) const { return values_[t]; }
  const std::vector<CBMap>& values() const { return values_; }
  /// Elements whose map has some action entry of modulus above tol.
  std::vector<int> support(double tol = 0.0) const;

 private:
  DynamicalSystem sys_;
  std::vector<CBMap> values_;
};

/// Coefficientwise: (S_F x)_t = F(t)(x_t). Throws SystemMismatch when x does
/// not have one coefficient in A per group element.
CrossedElement sF_apply(const HSMultiplier& f, const CrossedElement& x);

/// N(F)(s, t)(a) = alpha_{s^-1}(F(s t^-1)(alpha_s(a))), a Schur multiplier on
/// X = G with values landing in A (embedded in M_d).
SchurMultiplierFn transfer_N(const HSMultiplier& f);

/// Linear map on the crossed product, as a matrix on the t-major coordinates
/// of CrossedElement (size n dim A).
class CrossedMap {
 public:
  CrossedMap(DynamicalSystem sys, CMatrix matrix);
  static CrossedMap identity(const DynamicalSystem& sys);
  static CrossedMap from_function(const DynamicalSystem& sys,
                                  const std::function<CrossedElement(const CrossedElement&)>& fn);
  /// Lifts a map on represented matrices; throws NotInCrossedProduct if an
  /// image leaves the crossed product.
  static CrossedMap from_matrix_function(const DynamicalSystem& sys,
                                         const std::function<CMatrix(const CMatrix&)>& fn,
                                         double tol = 1e-9);
  /// S_F.
  static CrossedMap multiplier(const HSMultiplier& f);
  /// X -> pi(E(X)).
  static CrossedMap expectation(const DynamicalSystem& sys);
  /// X -> <X xi, xi> 1 for a unit vector xi; completely positive of rank one.
  static CrossedMap vector_state(const DynamicalSystem& sys, const CVector& xi);
  /// X -> u^* X u for u in the crossed product.
  static CrossedMap conjugation(const DynamicalSystem& sys, const CrossedElement& u);

  const DynamicalSystem& system() const { return sys_; }
  const CMatrix& matrix() const { return matrix_; }
  CrossedElement apply(const CrossedElement& x) const;
  /// Acts on represented matrices (analyze, map, synth).
  CMatrix apply_matrix(const CMatrix& x, double tol = 1e-9) const;

  friend CrossedMap operator+(const CrossedMap& a, const CrossedMap& b);
  friend CrossedMap operator*(Complex c, const CrossedMap& a);

 private:
  DynamicalSystem sys_;
  CMatrix matrix_;
};

/// Witness search for failure of complete positivity of a crossed-product
/// map: single-row y in M_{1 x r}(A x G), X = y^* y >= 0, and a PSD test of
/// Phi^(r)(X). Random starts are refined by alternating minimization of
/// v^* Phi^(r)(y^* y) v over the unit vectors v and the rows y. A violation is
/// an explicit certificate; no violation is evidence only, complete when r is
/// at least the largest block of the crossed product.
struct PositivitySearch {
  bool violation_found = false;
  int evaluations = 0;
  int max_r = 0;
  /// Most negative min-eigenvalue of Phi^(r)(X) over all tried X with ||y|| = 1,
  /// relative to max(1, ||Phi^(r)(X)||).
  double worst_ratio = 0.0;
};
struct SearchOptions {
  int max_r = 3;
  int random_samples = 24;
  int refined_starts = 4;
  int refine_iterations = 12;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};
PositivitySearch search_cp_violation(const CrossedMap& phi, const SearchOptions& opt = {});

struct CPVerdict {
  bool verdict = false;
  bool route_positive_type = false;
  bool route_sampling = false;
  bool route_factorization = false;
  double factorization_residual = 0.0;
  int dilation_dim = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  /// ||S_F||_cb, ||S_N(F)||_cb and ||F(e)||_cb; only meaningful when verdict.
  double cb_SF = 0.0;
  double cb_SNF = 0.0;
  double cb_Fe = 0.0;
};
struct CertifyOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  SearchOptions search = {};
};
/// Three routes: positive type of N(F) (Choi of Psi), witness search on S_F,
/// and the multi-point Stinespring residual of N(F). Throws RoutesDisagree if
/// they do not agree, or if the three norms differ by more than tol when they
/// say CP.
CPVerdict certify_cp(const HSMultiplier& f, const CertifyOptions& opt = {});

/// Recovers F from a Schur multiplier on G leaving the crossed product
/// invariant: F(s)(a) = alpha_p(phi(p, q)(alpha_{p^-1}(a))) for any p q^-1 = s.
/// Throws NotInvariant when images leave A or depend on the representative by
/// more than tol.
HSMultiplier invariance_extract(const DynamicalSystem& sys, const SchurMultiplierFn& phi,
                                double tol = kDefaultTol);
/// Largest distance between representatives (p, q) of the same s, and of
/// phi(p, q)(basis) from A.
double invariance_residual(const DynamicalSystem& sys, const SchurMultiplierFn& phi);

/// h_Phi(s)(a) = E(Phi(pi(a) lambda_s) lambda_s^*).
HSMultiplier h_from_map(const CrossedMap& phi);

/// h_F(s) = sum over p in F with s^-1 p in F of alpha_p o Phi o alpha_{p^-1}.
/// Throws EmptySet, BadElement.
HSMultiplier build_hF(const DynamicalSystem& sys, const std::vector<int>& fset, const CBMap& phi);

/// phi_BC(s, t) = alpha_s o F(s^-1 t) o alpha_{s^-1}; T is BC positive definite
/// iff this Schur multiplier on G is of positive type.
SchurMultiplierFn bc_matrix_multiplier(const HSMultiplier& f);
bool is_bc_pd(const HSMultiplier& f, double tol = kDefaultTol);
/// (alpha_{s_i}(phi(s_i^-1 s_j)))_{i,j} in M_n(A)^+ over the tuple enumerating G.
bool is_alpha_pd(const DynamicalSystem& sys, const std::vector<AlgElement>& phi,
                 double tol = kDefaultTol);
/// (alpha_{s_j}(h(s_i^-1 s_j)))_{i,j} in M_n(A)^+. Throws NotCentral.
bool is_dr_pd(const DynamicalSystem& sys, const std::vector<AlgElement>& h,
              double tol = kDefaultTol);

/// max over r and basis a of ||F(r)(a)^* - alpha_r(F(r^-1)(alpha_{r^-1}(a)^*))||.
double hermitian_symmetry_residual(const HSMultiplier& f);

}  // namespace cpm
