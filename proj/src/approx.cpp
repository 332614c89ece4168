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

#include "cpmult/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpmult/error.hpp"

namespace cpm {

Complex induced_trace(const DynamicalSystem& sys, const CMatrix& x) { return sys.trace()(cond_exp(sys, x)); }

L2Space::L2Space(CMatrix gram) : gram_(std::move(gram)) {
  const int n = static_cast<int>(gram_.rows());
  onb_ = CMatrix::Zero(n, n);
  auto inner = [&](const CVector& x, const CVector& y) { return y.dot(gram_ * x); };
  for (int j = 0; j < n; ++j) {
    CVector v = CVector::Unit(n, j);
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to rounding.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) v -= inner(v, onb_.col(i)) * onb_.col(i);
    }
    const double nrm2 = inner(v, v).real();
    if (!(nrm2 > 1e-14)) throw Error(ErrorCode::NoTrace, "trace is not faithful on the span");
    onb_.col(j) = v / std::sqrt(nrm2);
  }
}

L2Space L2Space::over_algebra(const TracialState& tau) {
  const Algebra& alg = tau.algebra();
  CMatrix g(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    const AlgElement bi = AlgElement::basis(alg, i).adjoint();
    for (int j = 0; j < alg.dim(); ++j) g(i, j) = tau(bi * AlgElement::basis(alg, j));
  }
  return L2Space(std::move(g));
}

L2Space L2Space::over_crossed(const DynamicalSystem& sys) {
  sys.trace();
  const int n = sys.crossed_dim();
  std::vector<CMatrix> m;
  for (int i = 0; i < n; ++i) m.push_back(synth(sys, CrossedElement::basis(sys, i)));
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = induced_trace(sys, m[i].adjoint() * m[j]);
  }
  return L2Space(std::move(g));
}

double L2Space::norm(const CVector& coords) const {
  return std::sqrt(std::max(0.0, coords.dot(gram_ * coords).real()));
}

Complex L2Space::inner(const CVector& x, const CVector& y) const { return y.dot(gram_ * x); }

CMatrix l2_matrix(const CBMap& phi, const L2Space& space) {
  if (!(phi.source() == phi.target()) || phi.source().dim() != space.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "map does not act on this L2 space");
  }
  return space.to_onb() * phi.action() * space.onb();
}

CMatrix l2_matrix(const CrossedMap& phi, const L2Space& space) {
  if (phi.matrix().rows() != space.dim()) throw Error(ErrorCode::ShapeMismatch, "map does not act on this L2 space");
  return space.to_onb() * phi.matrix() * space.onb();
}

L2Decomposition l2_decompose(const DynamicalSystem& sys) {
  L2Decomposition d{L2Space::over_algebra(sys.trace()), L2Space::over_crossed(sys), {}, {}};
  const int da = sys.algebra().dim();
  for (int t = 0; t < sys.order(); ++t) {
    CMatrix j = CMatrix::Zero(sys.crossed_dim(), da);
    j.block(t * da, 0, da, da).setIdentity();
    d.v.push_back(d.crossed.to_onb() * j * d.base.onb());
    d.p.push_back(d.v.back() * d.v.back().adjoint());
  }
  return d;
}

std::string Admissibility::failures() const {
  std::ostringstream os;
  if (!cp) os << "not completely positive" << (cp_error.empty() ? "" : " (" + cp_error + ")") << "; ";
  if (!unital) os << "F(e)(1) != 1 (residual " << unital_residual << "); ";
  if (!tau_dominated) os << "tau o F(e) <= tau fails (min density eigenvalue " << tau_gap << "); ";
  std::string s = os.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

Admissibility check_admissible(const HSMultiplier& f, const CertifyOptions& opt) {
  const DynamicalSystem& sys = f.system();
  const TracialState& tau = sys.trace();
  const Algebra& alg = sys.algebra();
  const CBMap& fe = f.at(sys.group().identity());
  Admissibility a;
  try {
    a.cp = certify_cp(f, opt).verdict;
  } catch (const Error& e) {
    a.cp = false;
    a.cp_error = e.what();
  }
  const AlgElement one = AlgElement::unit(alg);
  a.unital_residual = (fe.apply(one).embed() - one.embed()).norm();
  a.unital = a.unital_residual <= opt.tol;

  // The functional tau - tau o F(e) is a -> sum_k tr(D_k a_k) with
  // D_k(j, i) = value at e^k_ij; it is positive iff every D_k is PSD.
  a.tau_gap = std::numeric_limits<double>::infinity();
  bool hermitian = true;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_size(k);
    CMatrix dens(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const AlgElement e = AlgElement::basis(alg, alg.basis_index(k, i, j));
        dens(j, i) = tau(e) - tau(fe.apply(e));
      }
    }
    hermitian = hermitian && hermitian_residual(dens) <= opt.tol;
    a.tau_gap = std::min(a.tau_gap, eigvals_hermitian(0.5 * (dens + dens.adjoint())).front());
  }
  a.tau_dominated = hermitian && a.tau_gap >= -opt.tol;
  return a;
}

namespace {

void require_admissible(const HSMultiplier& f, const CertifyOptions& opt) {
  const Admissibility a = check_admissible(f, opt);
  if (!a.ok()) throw Error(ErrorCode::PreconditionFailed, a.failures());
}

}  // namespace

double check_block_diag(const HSMultiplier& f, const CertifyOptions& opt) {
  require_admissible(f, opt);
  const DynamicalSystem& sys = f.system();
  const L2Decomposition d = l2_decompose(sys);
  const CMatrix tsf = l2_matrix(CrossedMap::multiplier(f), d.crossed);
  CMatrix sum = CMatrix::Zero(tsf.rows(), tsf.cols());
  for (int t = 0; t < sys.order(); ++t) sum += d.v[t] * l2_matrix(f.at(t), d.base) * d.v[t].adjoint();
  return op_norm(tsf - sum);
}

ContractionResult contraction_check(const HSMultiplier& f, const CertifyOptions& opt) {
  require_admissible(f, opt);
  const L2Space base = L2Space::over_algebra(f.system().trace());
  ContractionResult r;
  r.contraction = true;
  for (const auto& m : f.values()) {
    r.norms.push_back(op_norm(l2_matrix(m, base)));
    r.contraction = r.contraction && r.norms.back() <= 1.0 + 1e-9;
  }
  return r;
}

ScalarPd scalar_pd_extract(const HSMultiplier& f, const CertifyOptions& opt) {
  const DynamicalSystem& sys = f.system();
  const Admissibility a = check_admissible(f, opt);
  if (!a.cp || !a.unital) throw Error(ErrorCode::PreconditionFailed, a.failures());
  const TracialState& tau = sys.trace();
  const FiniteGroup& g = sys.group();
  const AlgElement one = AlgElement::unit(sys.algebra());
  ScalarPd r;
  for (int s = 0; s < sys.order(); ++s) r.phi.push_back(tau(f.at(s).apply(one)));
  const int n = sys.order();
  r.matrix.resize(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) r.matrix(k, l) = r.phi[g.mul(g.inv(k), l)];
  }
  r.min_eig = eigvals_hermitian(0.5 * (r.matrix + r.matrix.adjoint())).front();
  r.verdict = hermitian_residual(r.matrix) <= opt.tol && is_psd(0.5 * (r.matrix + r.matrix.adjoint()), opt.tol);
  return r;
}

double compression_identity_check(const CrossedMap& phi) {
  const DynamicalSystem& sys = phi.system();
  const L2Decomposition d = l2_decompose(sys);
  const CMatrix tphi = l2_matrix(phi, d.crossed);
  const HSMultiplier h = h_from_map(phi);
  double worst = 0.0;
  for (int t = 0; t < sys.order(); ++t) {
    const CMatrix lhs = l2_matrix(h.at(t), d.base);
    const CMatrix rhs = d.v[t].adjoint() * d.p[t] * tphi * d.p[t] * d.v[t];
    worst = std::max(worst, op_norm(lhs - rhs));
  }
  return worst;
}

bool HaagerupReport::all_admissible() const {
  return std::all_of(rows.begin(), rows.end(), [](const HaagerupRow& r) { return r.included; });
}

HaagerupReport haagerup_report(const DynamicalSystem& sys, const std::vector<FamilyMember>& family,
                               const CertifyOptions& opt) {
  HaagerupReport rep;
  rep.compactness_note =
      "every operator on a finite-dimensional L2 space is compact, so L2-compactness holds for all members";
  rep.vanishing_note = "G is finite, so vanishing at infinity is vacuous";
  const L2Decomposition d = l2_decompose(sys);
  for (const auto& m : family) {
    if (!(m.f.system() == sys)) throw Error(ErrorCode::SystemMismatch, "member " + m.name + " is over another system");
    HaagerupRow row;
    row.name = m.name;
    row.admissibility = check_admissible(m.f, opt);
    row.included = row.admissibility.ok();
    if (row.included) {
      const Algebra& alg = sys.algebra();
      double dev_a = 0.0;
      for (int t = 0; t < sys.order(); ++t) {
        for (int j = 0; j < alg.dim(); ++j) {
          const CVector diff = m.f.at(t).action().col(j) - CVector::Unit(alg.dim(), j);
          dev_a = std::max(dev_a, d.base.norm(diff));
        }
        row.norms_T_Ft.push_back(op_norm(l2_matrix(m.f.at(t), d.base)));
      }
      const CrossedMap sf = CrossedMap::multiplier(m.f);
      double dev_c = 0.0;
      for (int i = 0; i < sys.crossed_dim(); ++i) {
        const CVector diff = sf.matrix().col(i) - CVector::Unit(sys.crossed_dim(), i);
        dev_c = std::max(dev_c, d.crossed.norm(diff));
      }
      row.dev_algebra = dev_a;
      row.dev_crossed = dev_c;
      row.norm_T_SF = op_norm(l2_matrix(sf, d.crossed));
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cpm
