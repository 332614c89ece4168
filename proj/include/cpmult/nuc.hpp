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

// Finitely supported CP multipliers and amenable-action data.

#include <optional>
#include <string>
#include <vector>

#include "cpmult/hsmult.hpp"

namespace cpm {

/// T : G -> Z(A)^+ with sum_t T(t)^2 = 1_A. Centrality and positivity are
/// checked by the operations, not at construction, so bad data can be reported.
struct AmenableData {
  DynamicalSystem system;
  /// One element per group element; zero outside the support.
  std::vector<AlgElement> T;

  static AmenableData uniform(const DynamicalSystem& sys);
  /// T = delta_e 1_A.
  static AmenableData delta_e(const DynamicalSystem& sys);
  /// T(t) = central element with scalar c[t][k] on block k.
  static AmenableData from_scalars(const DynamicalSystem& sys, const std::vector<std::vector<Complex>>& c);

  std::vector<int> support(double tol = 0.0) const;
};

struct AmenableCheck {
  /// ||sum_s T(s)^2 - 1_A||.
  double sum_residual = 0.0;
  /// ||sum_s (T(s) - alpha_t(T(t^-1 s)))^* (T(s) - alpha_t(T(t^-1 s)))|| per t.
  std::vector<double> shift_defects;
};
/// Throws NotCentral, NotPositive, ShapeMismatch.
AmenableCheck check_amenable(const AmenableData& data, double tol = 1e-10);

/// F(s)(a) = sum_p T(p) alpha_p(Phi(alpha_{p^-1}(a))) alpha_s(T(s^-1 p)), the sum
/// restricted to supp T intersected with s supp T. Throws NotCP, NotUnital, and
/// the check_amenable errors.
HSMultiplier build_amenable_multiplier(const AmenableData& data, const CBMap& phi, double tol = kDefaultTol);

struct NuclearityMember {
  std::string name;
  HSMultiplier f;
  std::optional<int> rank_bound;
};

struct NuclearityRow {
  std::string name;
  int support_size = 0;
  /// certify_cp verdict; false also when certification raised an error.
  bool cp = false;
  std::string cp_error;
  /// ||F(e)(1_A)||, which is ||F(e)||_cb when F(e) is CP.
  double fe_norm = 0.0;
  bool norm_ok = false;
  /// Numerical rank of F(s) as a linear map, cutoff 1e-9.
  std::vector<int> ranks;
  std::optional<bool> rank_within_bound;
  /// max over s in G and matrix units a of ||F(s)(a) - a||.
  double dev_algebra = 0.0;
  /// max over the crossed test set of ||S_F(x) - x||.
  double dev_crossed = 0.0;
  /// Largest group support of a crossed test element; bounds dev_crossed / dev_algebra.
  int coupling_factor = 0;
  bool coupling_ok = false;
};
struct NuclearityReport {
  std::vector<NuclearityRow> rows;
  std::string rank_note;
  std::string summation_note;
  std::string test_set_note;
};
/// Crossed test set: every pi(a) lambda_t and every sum_t pi(a) lambda_t over
/// matrix units a. Throws SystemMismatch for members over another system.
NuclearityReport nuclearity_report(const DynamicalSystem& sys, const std::vector<NuclearityMember>& family,
                                   const CertifyOptions& opt = {});

struct ExtractedMultiplier {
  HSMultiplier h;
  std::vector<int> support;
  /// Witness search on Phi found no violation.
  bool map_cp_evidence = false;
  /// Filled when map_cp_evidence.
  std::optional<CPVerdict> certificate;
  /// ||h(e)||_cb <= ||Phi|| = ||Phi(1)||, both for CP Phi.
  std::optional<double> he_cb_norm;
  std::optional<double> map_norm;
};
ExtractedMultiplier extract_from_cp_approx(const CrossedMap& phi, const CertifyOptions& opt = {});

}  // namespace cpm
