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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "cpmult/error.hpp"
#include "cpmult/linalg.hpp"
#include "cpmult/random.hpp"

using namespace cpm;
using Catch::Matchers::WithinAbs;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Independent eigenvalue oracle: Eigen's tridiagonal QR solver.
std::vector<double> reference_eigs(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> w(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  return w;
}

}  // namespace

TEST_CASE("eig_hermitian closed forms") {
  SECTION("diagonal") {
    const auto r = eig_hermitian(mat2(3, 0, 0, 1));
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK_THAT(r.eigenvalues[0], WithinAbs(1.0, 1e-14));
    CHECK_THAT(r.eigenvalues[1], WithinAbs(3.0, 1e-14));
    // Permutation of the identity, up to phases.
    CHECK_THAT(std::abs(r.vectors(1, 0)), WithinAbs(1.0, 1e-14));
    CHECK_THAT(std::abs(r.vectors(0, 1)), WithinAbs(1.0, 1e-14));
  }
  SECTION("real symmetric 2x2") {
    const auto r = eig_hermitian(mat2(1, 2, 2, 1));
    CHECK_THAT(r.eigenvalues[0], WithinAbs(-1.0, 1e-14));
    CHECK_THAT(r.eigenvalues[1], WithinAbs(3.0, 1e-14));
  }
  SECTION("Pauli Y") {
    const Complex i(0, 1);
    const auto r = eig_hermitian(mat2(0, i, -i, 0));
    CHECK_THAT(r.eigenvalues[0], WithinAbs(-1.0, 1e-14));
    CHECK_THAT(r.eigenvalues[1], WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("eig_hermitian rejects bad input") {
  CHECK_THROWS_AS(eig_hermitian(CMatrix::Zero(2, 3)), Error);
  try {
    eig_hermitian(mat2(1, 2, 0, 1));
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
  try {
    eig_hermitian(CMatrix::Zero(3, 2));
    FAIL("expected NonSquare");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
}

TEST_CASE("eig_hermitian reconstruction on random inputs up to 64") {
  Rng rng(7);
  for (int n : {1, 2, 3, 5, 8, 13, 21, 34, 64}) {
    const CMatrix m = random_hermitian(rng, n) * rng.uniform(0.1, 50.0);
    const auto r = eig_hermitian(m);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(r.eigenvalues.data(), n);
    const CMatrix recon = r.vectors * w.cast<Complex>().asDiagonal() * r.vectors.adjoint();
    const double scale = std::max(1.0, op_norm(m));
    INFO("n = " << n);
    CHECK((m - recon).norm() <= 1e-10 * scale);
    CHECK((r.vectors.adjoint() * r.vectors - CMatrix::Identity(n, n)).norm() <= 1e-10 * n);
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    const auto ref = reference_eigs(m);
    for (int k = 0; k < n; ++k) CHECK_THAT(r.eigenvalues[k], WithinAbs(ref[k], 1e-10 * scale));
  }
}

TEST_CASE("eig_hermitian handles degenerate spectra") {
  Rng rng(3);
  const CMatrix u = random_unitary(rng, 6);
  Eigen::VectorXcd d(6);
  d << 1, 1, 1, -2, -2, 5;
  const CMatrix m = u * d.asDiagonal() * u.adjoint();
  const auto r = eig_hermitian(m);
  CHECK_THAT(r.eigenvalues[0], WithinAbs(-2.0, 1e-12));
  CHECK_THAT(r.eigenvalues[1], WithinAbs(-2.0, 1e-12));
  CHECK_THAT(r.eigenvalues[4], WithinAbs(1.0, 1e-12));
  CHECK_THAT(r.eigenvalues[5], WithinAbs(5.0, 1e-12));
}

TEST_CASE("is_psd") {
  CHECK(is_psd(mat2(1, 1, 1, 1)));
  CHECK_FALSE(is_psd(mat2(1, 2, 2, 1)));
  CHECK(is_psd(CMatrix::Zero(3, 3)));
  CHECK_THROWS_AS(is_psd(mat2(1, 5, 0, 1)), Error);

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 12);
    const CMatrix b = random_matrix(rng, rng.uniform_int(1, n), n);
    CHECK(is_psd(b.adjoint() * b));
  }
}

TEST_CASE("kron") {
  Rng rng(5);
  const CMatrix m = random_matrix(rng, 2, 2);
  const CMatrix k = kron(CMatrix::Identity(2, 2), m);
  CHECK((k - block_diag({m, m})).norm() == 0.0);

  const CMatrix e12 = matrix_unit(2, 0, 1);
  const CMatrix k2 = kron(e12, CMatrix::Identity(2, 2));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect.block(0, 2, 2, 2) = CMatrix::Identity(2, 2);
  CHECK((k2 - expect).norm() == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2);
    const CMatrix c = random_matrix(rng, 2, 2), d = random_matrix(rng, 2, 2);
    CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm() <= 1e-12);
  }
}

TEST_CASE("op_norm") {
  Rng rng(9);
  CHECK_THAT(op_norm(random_unitary(rng, 5)), WithinAbs(1.0, 1e-12));
  CHECK_THAT(op_norm(mat2(1, 0, 0, 0.25)), WithinAbs(1.0, 1e-14));
  CHECK_THAT(op_norm(mat2(0, 2, 0, 0)), WithinAbs(2.0, 1e-14));
  CHECK(op_norm(CMatrix::Zero(3, 3)) == 0.0);

  for (int trial = 0; trial < 30; ++trial) {
    const CMatrix h = random_hermitian(rng, rng.uniform_int(1, 10));
    const auto w = eigvals_hermitian(h);
    const double expect = std::max(std::abs(w.front()), std::abs(w.back()));
    CHECK_THAT(op_norm(h), WithinAbs(expect, 1e-10 * std::max(1.0, expect)));
  }
}

TEST_CASE("numerical_rank") {
  Rng rng(2);
  const CMatrix a = random_matrix(rng, 6, 2);
  const CMatrix b = random_matrix(rng, 2, 6);
  CHECK(numerical_rank(a * b) == 2);
  CHECK(numerical_rank(CMatrix::Zero(4, 4)) == 0);
  CHECK(numerical_rank(CMatrix::Identity(4, 4)) == 4);
}
