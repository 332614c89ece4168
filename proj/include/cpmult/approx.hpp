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

// Trace-induced L2 structure on A and on the crossed product, the operators
// T_Phi, the decomposition L2(tau') = (+)_t L2_t(tau') and the reports built on
// them.

#include <optional>
#include <string>
#include <vector>

#include "cpmult/hsmult.hpp"

namespace cpm {

/// tau'(X) = tau(E(X)). Throws NoTrace, NotInCrossedProduct.
Complex induced_trace(const DynamicalSystem& sys, const CMatrix& x);

/// A finite-dimensional L2 space over the coordinates of A (matrix units) or
/// of the crossed product (t-major matrix units), with <x, y> = trace(y^* x).
class L2Space {
 public:
  static L2Space over_algebra(const TracialState& tau);
  /// Uses tau' = tau o E. Throws NoTrace.
  static L2Space over_crossed(const DynamicalSystem& sys);

  int dim() const { return static_cast<int>(gram_.rows()); }
  /// gram(i, j) = <b_j, b_i> = trace(b_i^* b_j) for coordinate basis b.
  const CMatrix& gram() const { return gram_; }
  /// Columns: coordinates of an orthonormal basis, Gram-Schmidt over b in order.
  const CMatrix& onb() const { return onb_; }
  /// Coordinates -> ONB components, i.e. onb^-1 = onb^* gram.
  CMatrix to_onb() const { return onb_.adjoint() * gram_; }
  double norm(const CVector& coords) const;
  Complex inner(const CVector& x, const CVector& y) const;

 private:
  L2Space(CMatrix gram);
  CMatrix gram_;
  CMatrix onb_;
};

/// T_Phi in the ONB of the space: onb^* gram M onb for the coordinate matrix M.
/// Throws ShapeMismatch.
CMatrix l2_matrix(const CBMap& phi, const L2Space& space);
CMatrix l2_matrix(const CrossedMap& phi, const L2Space& space);

struct L2Decomposition {
  L2Space base;
  L2Space crossed;
  /// V_t : L2(tau) -> L2(tau'), a -> pi(a) lambda_t, in ONB coordinates.
  std::vector<CMatrix> v;
  /// P_t = V_t V_t^*.
  std::vector<CMatrix> p;
};
/// Throws NoTrace.
L2Decomposition l2_decompose(const DynamicalSystem& sys);

/// Hypotheses shared by the L2 statements: F completely positive, F(e)(1) = 1,
/// tau o F(e) <= tau.
struct Admissibility {
  bool cp = false;
  bool unital = false;
  bool tau_dominated = false;
  double unital_residual = 0.0;
  /// Smallest eigenvalue of the density of tau - tau o F(e) (>= 0 when dominated).
  double tau_gap = 0.0;
  std::string cp_error;  // set when certification itself failed
  bool ok() const { return cp && unital && tau_dominated; }
  std::string failures() const;
};
Admissibility check_admissible(const HSMultiplier& f, const CertifyOptions& opt = {});

/// ||T_{S_F} - sum_t V_t T_{F(t)} V_t^*||. Throws PreconditionFailed, NoTrace.
double check_block_diag(const HSMultiplier& f, const CertifyOptions& opt = {});

struct ContractionResult {
  bool contraction = false;
  /// ||T_{F(t)}|| per group element.
  std::vector<double> norms;
};
/// Throws PreconditionFailed, NoTrace.
ContractionResult contraction_check(const HSMultiplier& f, const CertifyOptions& opt = {});

struct ScalarPd {
  /// phi(s) = tau(F(s)(1_A)).
  std::vector<Complex> phi;
  /// (phi(s_k^-1 s_l))_{k,l}.
  CMatrix matrix;
  double min_eig = 0.0;
  bool verdict = false;
};
/// Requires a CP multiplier with F(e) unital; throws PreconditionFailed, NoTrace.
ScalarPd scalar_pd_extract(const HSMultiplier& f, const CertifyOptions& opt = {});

/// max_t ||T_{h_Phi(t)} - V_t^* P_t T_Phi P_t V_t||. Throws NoTrace.
double compression_identity_check(const CrossedMap& phi);

struct FamilyMember {
  std::string name;
  HSMultiplier f;
};

struct HaagerupRow {
  std::string name;
  Admissibility admissibility;
  bool included = false;
  /// max_{t, a} ||F(t)(a) - a||_{2,tau} over matrix units a.
  std::optional<double> dev_algebra;
  /// max over crossed matrix units x of ||S_F(x) - x||_{2,tau'}.
  std::optional<double> dev_crossed;
  std::optional<double> norm_T_SF;
  std::vector<double> norms_T_Ft;
};
struct HaagerupReport {
  std::vector<HaagerupRow> rows;
  std::string compactness_note;
  std::string vanishing_note;
  bool all_admissible() const;
};
/// Throws NoTrace.
HaagerupReport haagerup_report(const DynamicalSystem& sys, const std::vector<FamilyMember>& family,
                               const CertifyOptions& opt = {});

}  // namespace cpm
