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

#include "cpmult/hsmult.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "cpmult/error.hpp"
#include "cpmult/random.hpp"

namespace cpm {

namespace {

double max_column_residual(const CMatrix& a, const CMatrix& b) {
  if (a.cols() == 0) return 0.0;
  return (a - b).colwise().norm().maxCoeff();
}

CMatrix coords_of_image(const Algebra& alg, const CMatrix& m) {
  return AlgElement::from_matrix(alg, m, std::numeric_limits<double>::infinity()).coords();
}

}  // namespace

HSMultiplier::HSMultiplier(DynamicalSystem sys, std::vector<CBMap> values)
    : sys_(std::move(sys)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != sys_.order()) {
    throw Error(ErrorCode::ShapeMismatch, "multiplier needs one map per group element");
  }
  for (const auto& v : values_) {
    if (!(v.source() == sys_.algebra()) || !(v.target() == sys_.algebra())) {
      throw Error(ErrorCode::ShapeMismatch, "multiplier values must map A to A");
    }
  }
}

HSMultiplier HSMultiplier::identity(const DynamicalSystem& sys) {
  return HSMultiplier(sys, std::vector<CBMap>(static_cast<size_t>(sys.order()),
                                              CBMap::identity(sys.algebra())));
}

HSMultiplier HSMultiplier::zero(const DynamicalSystem& sys) {
  return HSMultiplier(sys, std::vector<CBMap>(static_cast<size_t>(sys.order()),
                                              CBMap::zero(sys.algebra(), sys.algebra())));
}

HSMultiplier HSMultiplier::scalar(const DynamicalSystem& sys, const std::vector<Complex>& c) {
  if (static_cast<int>(c.size()) != sys.order()) throw Error(ErrorCode::ShapeMismatch, "one scalar per element");
  std::vector<CBMap> v;
  for (Complex z : c) v.push_back(z * CBMap::identity(sys.algebra()));
  return HSMultiplier(sys, std::move(v));
}

HSMultiplier HSMultiplier::left_multiplier(const DynamicalSystem& sys, const std::vector<AlgElement>& phi) {
  if (static_cast<int>(phi.size()) != sys.order()) throw Error(ErrorCode::ShapeMismatch, "one value per element");
  std::vector<CBMap> v;
  for (const auto& p : phi) v.push_back(CBMap::left_multiplication(p));
  return HSMultiplier(sys, std::move(v));
}

std::vector<int> HSMultiplier::support(double tol) const {
  std::vector<int> s;
  for (int t = 0; t < sys_.order(); ++t) {
    if (values_[t].action().size() > 0 && values_[t].action().cwiseAbs().maxCoeff() > tol) s.push_back(t);
  }
  return s;
}

CrossedElement sF_apply(const HSMultiplier& f, const CrossedElement& x) {
  const DynamicalSystem& sys = f.system();
  if (static_cast<int>(x.coeffs.size()) != sys.order()) {
    throw Error(ErrorCode::SystemMismatch, "element has the wrong number of coefficients");
  }
  CrossedElement out;
  for (int t = 0; t < sys.order(); ++t) {
    if (!(x.coeffs[t].algebra() == sys.algebra())) {
      throw Error(ErrorCode::SystemMismatch, "element lives over a different algebra");
    }
    out.coeffs.push_back(f.at(t).apply(x.coeffs[t]));
  }
  return out;
}

SchurMultiplierFn transfer_N(const HSMultiplier& f) {
  const DynamicalSystem& sys = f.system();
  const FiniteGroup& g = sys.group();
  const CBMap emb = CBMap::embedding(sys.algebra());
  std::vector<CBMap> v;
  for (int s = 0; s < sys.order(); ++s) {
    for (int t = 0; t < sys.order(); ++t) {
      const CBMap inner = compose(f.at(g.mul(s, g.inv(t))), sys.alpha_map(s));
      v.push_back(compose(emb, compose(sys.alpha_map(g.inv(s)), inner)));
    }
  }
  return SchurMultiplierFn(sys.order(), sys.algebra(), std::move(v));
}

CrossedMap::CrossedMap(DynamicalSystem sys, CMatrix matrix) : sys_(std::move(sys)), matrix_(std::move(matrix)) {
  const int n = sys_.crossed_dim();
  if (matrix_.rows() != n || matrix_.cols() != n) throw Error(ErrorCode::ShapeMismatch, "crossed map size");
  if (!all_finite(matrix_)) throw Error(ErrorCode::ShapeMismatch, "crossed map has non-finite entries");
}

CrossedMap CrossedMap::identity(const DynamicalSystem& sys) {
  return CrossedMap(sys, CMatrix::Identity(sys.crossed_dim(), sys.crossed_dim()));
}

CrossedMap CrossedMap::from_function(const DynamicalSystem& sys,
                                     const std::function<CrossedElement(const CrossedElement&)>& fn) {
  const int n = sys.crossed_dim();
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = fn(CrossedElement::basis(sys, i)).coords();
  return CrossedMap(sys, std::move(m));
}

CrossedMap CrossedMap::from_matrix_function(const DynamicalSystem& sys,
                                            const std::function<CMatrix(const CMatrix&)>& fn, double tol) {
  return from_function(sys, [&](const CrossedElement& x) { return analyze(sys, fn(synth(sys, x)), tol); });
}

CrossedMap CrossedMap::multiplier(const HSMultiplier& f) {
  return from_function(f.system(), [&](const CrossedElement& x) { return sF_apply(f, x); });
}

CrossedMap CrossedMap::expectation(const DynamicalSystem& sys) {
  return from_function(sys, [&](const CrossedElement& x) {
    return CrossedElement::monomial(sys, cond_exp(sys, synth(sys, x)), sys.group().identity());
  });
}

CrossedMap CrossedMap::vector_state(const DynamicalSystem& sys, const CVector& xi) {
  if (xi.size() != sys.rep_dim()) throw Error(ErrorCode::ShapeMismatch, "state vector size");
  const AlgElement one = AlgElement::unit(sys.algebra());
  return from_function(sys, [&](const CrossedElement& x) {
    const Complex w = xi.dot(synth(sys, x) * xi);  // conjugates xi on the left
    return CrossedElement::monomial(sys, w * one, sys.group().identity());
  });
}

CrossedMap CrossedMap::conjugation(const DynamicalSystem& sys, const CrossedElement& u) {
  const CrossedElement us = crossed_adjoint(sys, u);
  return from_function(sys, [&](const CrossedElement& x) { return crossed_mul(sys, us, crossed_mul(sys, x, u)); });
}

CrossedElement CrossedMap::apply(const CrossedElement& x) const {
  return CrossedElement::from_coords(sys_, matrix_ * x.coords());
}

CMatrix CrossedMap::apply_matrix(const CMatrix& x, double tol) const {
  return synth(sys_, apply(analyze(sys_, x, tol)));
}

CrossedMap operator+(const CrossedMap& a, const CrossedMap& b) {
  if (!(a.sys_ == b.sys_)) throw Error(ErrorCode::SystemMismatch, "crossed maps over different systems");
  return CrossedMap(a.sys_, a.matrix_ + b.matrix_);
}

CrossedMap operator*(Complex c, const CrossedMap& a) { return CrossedMap(a.sys_, c * a.matrix_); }

namespace {

// Phi applied to products of basis elements: P[a * n + b] = synth(Phi(b_a^* b_b)).
class SearchState {
 public:
  explicit SearchState(const CrossedMap& phi) : sys_(phi.system()), n_(sys_.crossed_dim()), d_(sys_.rep_dim()) {
    std::vector<CrossedElement> basis, adj;
    for (int i = 0; i < n_; ++i) {
      basis.push_back(CrossedElement::basis(sys_, i));
      adj.push_back(crossed_adjoint(sys_, basis.back()));
    }
    prod_.reserve(static_cast<size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) prod_.push_back(synth(sys_, phi.apply(crossed_mul(sys_, adj[a], basis[b]))));
    }
  }

  int n() const { return n_; }

  // Phi^(r)(y^* y) for y = rows of c (r x n coefficient matrix).
  CMatrix evaluate(const CMatrix& c) const {
    const int r = static_cast<int>(c.rows());
    CMatrix out = CMatrix::Zero(r * d_, r * d_);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        auto blk = out.block(i * d_, j * d_, d_, d_);
        for (int a = 0; a < n_; ++a) {
          const Complex ca = std::conj(c(i, a));
          if (ca == Complex(0.0)) continue;
          for (int b = 0; b < n_; ++b) blk += (ca * c(j, b)) * prod_[a * n_ + b];
        }
      }
    }
    return out;
  }

  // Hermitian form c -> v^* Phi^(r)(y^* y) v on vec(c), index i * n + a.
  CMatrix form(const CVector& v, int r) const {
    CMatrix q(r * n_, r * n_);
    for (int i = 0; i < r; ++i) {
      const CVector vi = v.segment(i * d_, d_);
      for (int j = 0; j < r; ++j) {
        const CVector vj = v.segment(j * d_, d_);
        for (int a = 0; a < n_; ++a) {
          for (int b = 0; b < n_; ++b) q(i * n_ + a, j * n_ + b) = vi.dot(prod_[a * n_ + b] * vj);
        }
      }
    }
    return 0.5 * (q + q.adjoint());
  }

 private:
  const DynamicalSystem& sys_;
  int n_;
  int d_;
  std::vector<CMatrix> prod_;
};

struct Probe {
  bool violation = false;
  double ratio = 0.0;
  CVector min_vec;
};

Probe probe(const SearchState& st, const CMatrix& c, double tol) {
  const CMatrix out = st.evaluate(c);
  Probe p;
  const double fro = std::max(1.0, out.norm());
  if (hermitian_residual(out) > tol * fro) {
    p.violation = true;
    p.ratio = -1.0;
    return p;
  }
  const EigResult eg = eig_hermitian(0.5 * (out + out.adjoint()), 1.0);
  const double max_abs = std::max(std::abs(eg.eigenvalues.front()), std::abs(eg.eigenvalues.back()));
  p.ratio = eg.eigenvalues.front() / std::max(1.0, max_abs);
  p.violation = p.ratio < -tol;
  p.min_vec = eg.vectors.col(0);
  return p;
}

CMatrix unit_rows(Rng& rng, int r, int n) {
  CMatrix c = random_matrix(rng, r, n);
  return c / c.norm();
}

}  // namespace

PositivitySearch search_cp_violation(const CrossedMap& phi, const SearchOptions& opt) {
  if (opt.max_r < 1) throw Error(ErrorCode::PreconditionFailed, "max_r must be positive");
  const SearchState st(phi);
  Rng rng(opt.seed);
  PositivitySearch res;
  res.max_r = opt.max_r;
  auto record = [&](const Probe& p) {
    ++res.evaluations;
    res.worst_ratio = std::min(res.worst_ratio, p.ratio);
    res.violation_found = res.violation_found || p.violation;
  };
  for (int s = 0; s < opt.random_samples && !res.violation_found; ++s) {
    record(probe(st, unit_rows(rng, rng.uniform_int(1, opt.max_r), st.n()), opt.tol));
  }
  const int r = opt.max_r;
  for (int s = 0; s < opt.refined_starts && !res.violation_found; ++s) {
    CMatrix c = unit_rows(rng, r, st.n());
    Probe p = probe(st, c, opt.tol);
    record(p);
    for (int it = 0; it < opt.refine_iterations && !res.violation_found; ++it) {
      // Best rows for the current output vector, then the best vector for them.
      const EigResult q = eig_hermitian(st.form(p.min_vec, r), 1.0);
      const CVector w = q.vectors.col(0);
      for (int i = 0; i < r; ++i) c.row(i) = w.segment(i * st.n(), st.n()).transpose();
      const double before = p.ratio;
      p = probe(st, c, opt.tol);
      record(p);
      // Each half-step can only lower the objective; stop once it stalls.
      if (before - p.ratio <= 1e-3 * std::abs(before) + opt.tol * 1e-3) break;
    }
  }
  return res;
}

CPVerdict certify_cp(const HSMultiplier& f, const CertifyOptions& opt) {
  const DynamicalSystem& sys = f.system();
  const SchurMultiplierFn nf = transfer_N(f);
  CPVerdict v;
  v.seed = opt.seed;
  v.route_positive_type = is_positive_type(nf, opt.tol);

  SearchOptions so = opt.search;
  so.seed = opt.seed;
  so.tol = opt.tol;
  const PositivitySearch ps = search_cp_violation(CrossedMap::multiplier(f), so);
  v.route_sampling = !ps.violation_found;
  v.samples = ps.evaluations;

  double scale = 1.0;
  for (const auto& m : f.values()) scale = std::max(scale, m.action().norm());
  const StinespringData sd = stinespring_multi_positive_part(nf, opt.tol);
  v.factorization_residual = sd.residual;
  v.dilation_dim = sd.dilation_dim;
  v.route_factorization = sd.residual <= opt.tol * scale;

  if (v.route_positive_type != v.route_sampling || v.route_positive_type != v.route_factorization) {
    std::ostringstream os;
    os << "positive type " << v.route_positive_type << ", witness search " << v.route_sampling
       << " (worst ratio " << ps.worst_ratio << "), factorization " << v.route_factorization
       << " (residual " << sd.residual << ")";
    throw Error(ErrorCode::RoutesDisagree, os.str());
  }
  v.verdict = v.route_positive_type;
  if (v.verdict) {
    const AlgElement one = AlgElement::unit(sys.algebra());
    const CrossedElement unit = CrossedElement::monomial(sys, one, sys.group().identity());
    v.cb_SF = op_norm(synth(sys, sF_apply(f, unit)));
    v.cb_SNF = schur_norm_at_unit(nf);
    v.cb_Fe = cb_norm_cp(f.at(sys.group().identity()), opt.tol);
    const double band = opt.tol * std::max(1.0, v.cb_Fe);
    if (std::abs(v.cb_SF - v.cb_Fe) > band || std::abs(v.cb_SNF - v.cb_Fe) > band) {
      std::ostringstream os;
      os << "norms differ: cb_SF " << v.cb_SF << ", cb_SNF " << v.cb_SNF << ", cb_Fe " << v.cb_Fe;
      throw Error(ErrorCode::RoutesDisagree, os.str());
    }
  }
  return v;
}

namespace {

// Candidate F(s) from representative p (q = s^-1 p), as an action matrix, and
// the distance of phi(p, q)(basis) from A.
CMatrix representative(const DynamicalSystem& sys, const SchurMultiplierFn& phi, int s, int p,
                       double* leave) {
  const FiniteGroup& g = sys.group();
  const Algebra& alg = sys.algebra();
  const int q = g.mul(g.inv(s), p);
  CMatrix act(alg.dim(), alg.dim());
  for (int j = 0; j < alg.dim(); ++j) {
    const AlgElement a = sys.act(g.inv(p), AlgElement::basis(alg, j));
    const CMatrix img = phi.at(p, q).apply(a).embed();
    *leave = std::max(*leave, membership_residual(alg, img));
    act.col(j) = sys.act(p, AlgElement::from_coords(alg, coords_of_image(alg, img))).coords();
  }
  return act;
}

void check_schur_on_group(const DynamicalSystem& sys, const SchurMultiplierFn& phi) {
  if (phi.points() != sys.order() || !(phi.algebra() == sys.algebra())) {
    throw Error(ErrorCode::SystemMismatch, "Schur multiplier is not indexed by the group over A");
  }
}

}  // namespace

double invariance_residual(const DynamicalSystem& sys, const SchurMultiplierFn& phi) {
  check_schur_on_group(sys, phi);
  double worst = 0.0;
  // Spanning set: S_phi of every crossed-product basis element must stay inside.
  for (int i = 0; i < sys.crossed_dim(); ++i) {
    const CMatrix x = synth(sys, CrossedElement::basis(sys, i));
    const BlockOperator b = schur_apply(phi, make_block_operator(sys.order(), sys.algebra().rep_dim(), x));
    worst = std::max(worst, crossed_membership_residual(sys, b.mat));
  }
  for (int s = 0; s < sys.order(); ++s) {
    double leave = 0.0;
    const CMatrix ref = representative(sys, phi, s, sys.group().identity(), &leave);
    for (int p = 0; p < sys.order(); ++p) {
      worst = std::max(worst, max_column_residual(representative(sys, phi, s, p, &leave), ref));
    }
    worst = std::max(worst, leave);
  }
  return worst;
}

HSMultiplier invariance_extract(const DynamicalSystem& sys, const SchurMultiplierFn& phi, double tol) {
  const double r = invariance_residual(sys, phi);
  double scale = 1.0;
  for (const auto& m : phi.values()) scale = std::max(scale, m.action().norm());
  if (r > tol * scale) {
    std::ostringstream os;
    os << "multiplier does not leave the crossed product invariant (residual " << r << ")";
    throw Error(ErrorCode::NotInvariant, os.str());
  }
  std::vector<CBMap> values;
  for (int s = 0; s < sys.order(); ++s) {
    double leave = 0.0;
    values.emplace_back(sys.algebra(), sys.algebra(), representative(sys, phi, s, sys.group().identity(), &leave));
  }
  return HSMultiplier(sys, std::move(values));
}

HSMultiplier h_from_map(const CrossedMap& phi) {
  const DynamicalSystem& sys = phi.system();
  const Algebra& alg = sys.algebra();
  std::vector<CBMap> values;
  for (int s = 0; s < sys.order(); ++s) {
    const CMatrix lam_adj = rep_lambda(sys, s).adjoint();
    CMatrix act(alg.dim(), alg.dim());
    for (int j = 0; j < alg.dim(); ++j) {
      const CrossedElement x = CrossedElement::monomial(sys, AlgElement::basis(alg, j), s);
      const CMatrix y = synth(sys, phi.apply(x));
      act.col(j) = cond_exp(sys, y * lam_adj).coords();
    }
    values.emplace_back(alg, alg, std::move(act));
  }
  return HSMultiplier(sys, std::move(values));
}

HSMultiplier build_hF(const DynamicalSystem& sys, const std::vector<int>& fset, const CBMap& phi) {
  if (fset.empty()) throw Error(ErrorCode::EmptySet, "h_F needs a nonempty set");
  if (!(phi.source() == sys.algebra()) || !(phi.target() == sys.algebra())) {
    throw Error(ErrorCode::ShapeMismatch, "Phi must map A to A");
  }
  for (int p : fset) sys.group().check_element(p);
  const std::set<int> set(fset.begin(), fset.end());
  const FiniteGroup& g = sys.group();
  std::vector<CBMap> values;
  for (int s = 0; s < sys.order(); ++s) {
    CBMap sum = CBMap::zero(sys.algebra(), sys.algebra());
    for (int p : set) {
      if (set.count(g.mul(g.inv(s), p)) == 0) continue;
      sum += compose(sys.alpha_map(p), compose(phi, sys.alpha_map(g.inv(p))));
    }
    values.push_back(std::move(sum));
  }
  return HSMultiplier(sys, std::move(values));
}

SchurMultiplierFn bc_matrix_multiplier(const HSMultiplier& f) {
  const DynamicalSystem& sys = f.system();
  const FiniteGroup& g = sys.group();
  const CBMap emb = CBMap::embedding(sys.algebra());
  std::vector<CBMap> v;
  for (int s = 0; s < sys.order(); ++s) {
    for (int t = 0; t < sys.order(); ++t) {
      const CBMap inner = compose(f.at(g.mul(g.inv(s), t)), sys.alpha_map(g.inv(s)));
      v.push_back(compose(emb, compose(sys.alpha_map(s), inner)));
    }
  }
  return SchurMultiplierFn(sys.order(), sys.algebra(), std::move(v));
}

bool is_bc_pd(const HSMultiplier& f, double tol) { return is_positive_type(bc_matrix_multiplier(f), tol); }

bool is_alpha_pd(const DynamicalSystem& sys, const std::vector<AlgElement>& phi, double tol) {
  if (static_cast<int>(phi.size()) != sys.order()) throw Error(ErrorCode::ShapeMismatch, "one value per element");
  const FiniteGroup& g = sys.group();
  return is_positive_matrix(
      sys.algebra(), sys.order(), [&](int i, int j) { return sys.act(i, phi[g.mul(g.inv(i), j)]); }, tol);
}

bool is_dr_pd(const DynamicalSystem& sys, const std::vector<AlgElement>& h, double tol) {
  if (static_cast<int>(h.size()) != sys.order()) throw Error(ErrorCode::ShapeMismatch, "one value per element");
  for (size_t t = 0; t < h.size(); ++t) {
    if (!is_central(h[t])) throw Error(ErrorCode::NotCentral, "value at " + std::to_string(t) + " is not central");
  }
  const FiniteGroup& g = sys.group();
  return is_positive_matrix(
      sys.algebra(), sys.order(), [&](int i, int j) { return sys.act(j, h[g.mul(g.inv(i), j)]); }, tol);
}

double hermitian_symmetry_residual(const HSMultiplier& f) {
  const DynamicalSystem& sys = f.system();
  const FiniteGroup& g = sys.group();
  double worst = 0.0;
  for (int r = 0; r < sys.order(); ++r) {
    const int ri = g.inv(r);
    for (int j = 0; j < sys.algebra().dim(); ++j) {
      const AlgElement a = AlgElement::basis(sys.algebra(), j);
      const AlgElement lhs = f.at(r).apply(a).adjoint();
      const AlgElement rhs = sys.act(r, f.at(ri).apply(sys.act(ri, a).adjoint()));
      worst = std::max(worst, (lhs.embed() - rhs.embed()).norm());
    }
  }
  return worst;
}

}  // namespace cpm
