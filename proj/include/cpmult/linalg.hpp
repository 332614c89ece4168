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

// Dense complex linear algebra used by every other module. Matrices are
// Eigen::MatrixXcd; the Hermitian eigensolver is a cyclic complex Jacobi
// iteration so results do not depend on the LAPACK in use.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cpm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix, M = U diag(w) U*.
/// Throws NonSquare, or NonHermitian when ||M - M*||_F exceeds
/// rtol * max(1, ||M||_F).
EigResult eig_hermitian(const CMatrix& m, double rtol = 1e-10);

/// Eigenvalues only (same routine, vectors discarded).
std::vector<double> eigvals_hermitian(const CMatrix& m, double rtol = 1e-10);

/// Frobenius norm of M - M*.
double hermitian_residual(const CMatrix& m);

/// True iff the smallest eigenvalue is >= -tol * max(1, ||M||).
bool is_psd(const CMatrix& m, double tol = kDefaultTol);

/// Smallest eigenvalue and spectral norm in one pass; used by callers that
/// need to apply the PSD threshold against a norm computed elsewhere.
struct Spectrum {
  double min_eig = 0.0;
  double max_abs = 0.0;
};
Spectrum hermitian_spectrum(const CMatrix& m, double rtol = 1e-10);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// Singular values, descending.
std::vector<double> singular_values(const CMatrix& m);

/// Number of singular values above cutoff * max(1, sigma_max).
int numerical_rank(const CMatrix& m, double cutoff = kDefaultTol);

/// Block-diagonal assembly.
CMatrix block_diag(const std::vector<CMatrix>& blocks);

/// Matrix unit e_{ij} of size n x n.
CMatrix matrix_unit(int n, int i, int j);

bool all_finite(const CMatrix& m);

}  // namespace cpm
