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

#include "cpmult/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpmult/error.hpp"

namespace cpm {

namespace {

constexpr int kMaxSweeps = 100;

void check_hermitian(const CMatrix& m, double rtol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, m.norm());
  const double resid = hermitian_residual(m);
  if (!(resid <= rtol * scale)) {
    throw Error(ErrorCode::NonHermitian,
                "symmetry residual " + std::to_string(resid));
  }
}

double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

// Cyclic Jacobi on a Hermitian matrix. Each rotation J = D * R, where
// D = diag(1, e^{-i phi}) makes the (p,q) pivot real and R is the real
// symmetric Jacobi rotation that annihilates it. A <- J* A J, V <- V J.
void jacobi(CMatrix& a, CMatrix* v) {
  const Eigen::Index n = a.rows();
  if (v) *v = CMatrix::Identity(n, n);
  if (n < 2) {
    if (n == 1) a(0, 0) = a(0, 0).real();
    return;
  }
  const double total = a.squaredNorm();
  if (total == 0.0) return;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= eps * eps * total) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Skip pivots that are negligible against both diagonal entries.
        if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) &&
            std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex cphase = std::conj(phase);
        // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex j_pp = c;
        const Complex j_pq = s;
        const Complex j_qp = -s * cphase;
        const Complex j_qq = c * cphase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * j_pp + akq * j_qp;
          a(k, q) = akp * j_pq + akq * j_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(j_pp) * apk + std::conj(j_qp) * aqk;
          a(q, k) = std::conj(j_pq) * apk + std::conj(j_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        if (v) {
          CMatrix& vv = *v;
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = vv(k, p);
            const Complex vkq = vv(k, q);
            vv(k, p) = vkp * j_pp + vkq * j_qp;
            vv(k, q) = vkp * j_pq + vkq * j_qq;
          }
        }
      }
    }
  }
}

}  // namespace

double hermitian_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

EigResult eig_hermitian(const CMatrix& m, double rtol) {
  check_hermitian(m, rtol);
  CMatrix a = 0.5 * (m + m.adjoint());
  CMatrix v;
  jacobi(a, &v);
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigResult out;
  out.eigenvalues.reserve(static_cast<size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<double> eigvals_hermitian(const CMatrix& m, double rtol) {
  check_hermitian(m, rtol);
  CMatrix a = 0.5 * (m + m.adjoint());
  jacobi(a, nullptr);
  std::vector<double> w(static_cast<size_t>(a.rows()));
  for (Eigen::Index k = 0; k < a.rows(); ++k) w[k] = a(k, k).real();
  std::sort(w.begin(), w.end());
  return w;
}

Spectrum hermitian_spectrum(const CMatrix& m, double rtol) {
  const auto w = eigvals_hermitian(m, rtol);
  Spectrum s;
  if (w.empty()) return s;
  s.min_eig = w.front();
  s.max_abs = std::max(std::abs(w.front()), std::abs(w.back()));
  return s;
}

bool is_psd(const CMatrix& m, double tol) {
  const Spectrum s = hermitian_spectrum(m, tol);
  return s.min_eig >= -tol * std::max(1.0, s.max_abs);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<double> singular_values(const CMatrix& m) {
  if (m.size() == 0) return {};
  // Working on m directly rather than on m* m keeps small singular values
  // accurate, which the rank decision depends on.
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

double op_norm(const CMatrix& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

int numerical_rank(const CMatrix& m, double cutoff) {
  const auto s = singular_values(m);
  if (s.empty()) return 0;
  const double thresh = cutoff * std::max(1.0, s.front());
  return static_cast<int>(
      std::count_if(s.begin(), s.end(), [&](double x) { return x > thresh; }));
}

CMatrix block_diag(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix matrix_unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

}  // namespace cpm
