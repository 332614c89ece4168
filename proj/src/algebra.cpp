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

#include "cpmult/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpmult/error.hpp"

namespace cpm {

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
  if (sizes_.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "algebra needs at least one block");
  }
  for (int n : sizes_) {
    if (n < 1) throw Error(ErrorCode::ShapeMismatch, "block sizes must be >= 1");
    rep_offsets_.push_back(rep_dim_);
    basis_offsets_.push_back(dim_);
    rep_dim_ += n;
    dim_ += n * n;
  }
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(Algebra alg, std::vector<CMatrix> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != alg_.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "wrong number of blocks");
  }
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int n = alg_.block_size(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "block " + std::to_string(k) + " must be " + std::to_string(n) +
                      "x" + std::to_string(n));
    }
  }
}

AlgElement AlgElement::zero(const Algebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_sizes()) b.push_back(CMatrix::Zero(n, n));
  return AlgElement(alg, std::move(b));
}

AlgElement AlgElement::unit(const Algebra& alg) {
  std::vector<CMatrix> b;
  for (int n : alg.block_sizes()) b.push_back(CMatrix::Identity(n, n));
  return AlgElement(alg, std::move(b));
}

AlgElement AlgElement::basis(const Algebra& alg, int index) {
  if (index < 0 || index >= alg.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "basis index out of range");
  }
  AlgElement e = zero(alg);
  int k = alg.num_blocks() - 1;
  while (alg.basis_offset(k) > index) --k;
  const int local = index - alg.basis_offset(k);
  const int n = alg.block_size(k);
  e.blocks_[k](local / n, local % n) = 1.0;
  return e;
}

AlgElement AlgElement::from_coords(const Algebra& alg, const CVector& coords) {
  if (coords.size() != alg.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "coordinate vector has wrong length");
  }
  AlgElement e = zero(alg);
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_size(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) e.blocks_[k](i, j) = coords(alg.basis_index(k, i, j));
    }
  }
  return e;
}

AlgElement AlgElement::from_matrix(const Algebra& alg, const CMatrix& m, double tol) {
  if (m.rows() != alg.rep_dim() || m.cols() != alg.rep_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix does not match rep_dim");
  }
  const double off = membership_residual(alg, m);
  if (off > tol * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::NotInAlgebra,
                "off-block residual " + std::to_string(off));
  }
  std::vector<CMatrix> b;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int o = alg.rep_offset(k);
    const int n = alg.block_size(k);
    b.push_back(m.block(o, o, n, n));
  }
  return AlgElement(alg, std::move(b));
}

AlgElement AlgElement::central(const Algebra& alg, const std::vector<Complex>& c) {
  if (static_cast<int>(c.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "one scalar per block expected");
  }
  AlgElement e = unit(alg);
  for (int k = 0; k < alg.num_blocks(); ++k) e.blocks_[k] *= c[k];
  return e;
}

CVector AlgElement::coords() const {
  CVector v(alg_.dim());
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int n = alg_.block_size(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) v(alg_.basis_index(k, i, j)) = blocks_[k](i, j);
    }
  }
  return v;
}

CMatrix AlgElement::embed() const { return block_diag(blocks_); }

AlgElement AlgElement::adjoint() const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return AlgElement(alg_, std::move(b));
}

double AlgElement::norm() const {
  double n = 0.0;
  for (const auto& m : blocks_) n = std::max(n, op_norm(m));
  return n;
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  if (!(alg_ == o.alg_)) throw Error(ErrorCode::AlgebraMismatch, "sum");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  if (!(alg_ == o.alg_)) throw Error(ErrorCode::AlgebraMismatch, "difference");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator*=(Complex c) {
  for (auto& m : blocks_) m *= c;
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  if (!(a.alg_ == b.alg_)) throw Error(ErrorCode::AlgebraMismatch, "product");
  std::vector<CMatrix> out;
  for (size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(a.blocks_[k] * b.blocks_[k]);
  return AlgElement(a.alg_, std::move(out));
}

double membership_residual(const Algebra& alg, const CMatrix& m) {
  CMatrix off = m;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int o = alg.rep_offset(k);
    const int n = alg.block_size(k);
    off.block(o, o, n, n).setZero();
  }
  return off.norm();
}

bool is_positive_element(const AlgElement& a, double tol) {
  for (const auto& b : a.blocks()) {
    if (!is_psd(b, tol)) return false;
  }
  return true;
}

bool is_central(const AlgElement& a, double tol) {
  for (const auto& b : a.blocks()) {
    const Eigen::Index n = b.rows();
    const Complex c = b.trace() / static_cast<double>(n);
    if ((b - c * CMatrix::Identity(n, n)).norm() > tol * std::max(1.0, b.norm())) {
      return false;
    }
  }
  return true;
}

bool is_positive_matrix(const Algebra& alg, int n,
                        const std::function<AlgElement(int, int)>& entry,
                        double tol) {
  std::vector<CMatrix> per_block;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int nb = alg.block_size(b);
    per_block.push_back(CMatrix::Zero(n * nb, n * nb));
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const AlgElement e = entry(p, q);
      for (int b = 0; b < alg.num_blocks(); ++b) {
        const int nb = alg.block_size(b);
        per_block[b].block(p * nb, q * nb, nb, nb) = e.block(b);
      }
    }
  }
  double min_eig = 0.0;
  double max_abs = 0.0;
  for (const auto& m : per_block) {
    const double scale = std::max(1.0, m.norm());
    if (hermitian_residual(m) > tol * scale) return false;
    const Spectrum s = hermitian_spectrum(m, tol);
    min_eig = std::min(min_eig, s.min_eig);
    max_abs = std::max(max_abs, s.max_abs);
  }
  return min_eig >= -tol * std::max(1.0, max_abs);
}

// ---------------------------------------------------------------------------
// CBMap

CBMap::CBMap(Algebra source, Algebra target, CMatrix action)
    : source_(std::move(source)), target_(std::move(target)), action_(std::move(action)) {
  if (action_.rows() != target_.dim() || action_.cols() != source_.dim()) {
    throw Error(ErrorCode::ShapeMismatch,
                "action must be " + std::to_string(target_.dim()) + "x" +
                    std::to_string(source_.dim()) + ", got " +
                    std::to_string(action_.rows()) + "x" + std::to_string(action_.cols()));
  }
  if (!action_.allFinite()) {
    throw Error(ErrorCode::ShapeMismatch, "action has non-finite entries");
  }
}

CBMap CBMap::identity(const Algebra& alg) {
  return CBMap(alg, alg, CMatrix::Identity(alg.dim(), alg.dim()));
}

CBMap CBMap::zero(const Algebra& source, const Algebra& target) {
  return CBMap(source, target, CMatrix::Zero(target.dim(), source.dim()));
}

CBMap CBMap::from_function(const Algebra& source, const Algebra& target,
                           const std::function<AlgElement(const AlgElement&)>& fn) {
  CMatrix act(target.dim(), source.dim());
  for (int j = 0; j < source.dim(); ++j) {
    const AlgElement img = fn(AlgElement::basis(source, j));
    if (!(img.algebra() == target)) {
      throw Error(ErrorCode::AlgebraMismatch, "function image outside target");
    }
    act.col(j) = img.coords();
  }
  return CBMap(source, target, std::move(act));
}

CBMap CBMap::from_kraus(const Algebra& source, const Algebra& target,
                        const std::vector<CMatrix>& ops) {
  for (const auto& k : ops) {
    if (k.rows() != target.rep_dim() || k.cols() != source.rep_dim()) {
      throw Error(ErrorCode::ShapeMismatch, "Kraus operator shape");
    }
  }
  return from_function(source, target, [&](const AlgElement& a) {
    const CMatrix ea = a.embed();
    CMatrix out = CMatrix::Zero(target.rep_dim(), target.rep_dim());
    for (const auto& k : ops) out += k * ea * k.adjoint();
    return AlgElement::from_matrix(target, out);
  });
}

CBMap CBMap::left_multiplication(const AlgElement& c) {
  return from_function(c.algebra(), c.algebra(),
                       [&](const AlgElement& a) { return c * a; });
}

CBMap CBMap::right_multiplication(const AlgElement& c) {
  return from_function(c.algebra(), c.algebra(),
                       [&](const AlgElement& a) { return a * c; });
}

CBMap CBMap::transpose(int n) {
  const Algebra alg = Algebra::full(n);
  return from_function(alg, alg, [&](const AlgElement& a) {
    return AlgElement(alg, {a.block(0).transpose()});
  });
}

CBMap CBMap::embedding(const Algebra& alg) {
  const Algebra full = Algebra::full(alg.rep_dim());
  return from_function(alg, full, [&](const AlgElement& a) {
    return AlgElement(full, {a.embed()});
  });
}

AlgElement CBMap::apply(const AlgElement& a) const {
  if (!(a.algebra() == source_)) {
    throw Error(ErrorCode::AlgebraMismatch, "map applied outside its source");
  }
  return AlgElement::from_coords(target_, action_ * a.coords());
}

CBMap& CBMap::operator+=(const CBMap& o) {
  if (!(source_ == o.source_) || !(target_ == o.target_)) {
    throw Error(ErrorCode::AlgebraMismatch, "sum of maps");
  }
  action_ += o.action_;
  return *this;
}

CBMap& CBMap::operator*=(Complex c) {
  action_ *= c;
  return *this;
}

CBMap compose(const CBMap& outer, const CBMap& inner) {
  if (!(outer.source() == inner.target())) {
    throw Error(ErrorCode::AlgebraMismatch, "composition");
  }
  return CBMap(inner.source(), outer.target(), outer.action() * inner.action());
}

// ---------------------------------------------------------------------------
// Choi, Kraus, Stinespring

ChoiBlocks choi(const CBMap& phi) {
  const Algebra& src = phi.source();
  const int t = phi.target().rep_dim();
  ChoiBlocks out;
  for (int k = 0; k < src.num_blocks(); ++k) {
    const int n = src.block_size(k);
    CMatrix c = CMatrix::Zero(n * t, n * t);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const AlgElement img =
            phi.apply(AlgElement::basis(src, src.basis_index(k, i, j)));
        c.block(i * t, j * t, t, t) = img.embed();
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool is_cp(const CBMap& phi, double tol) {
  for (const auto& c : choi(phi)) {
    if (hermitian_residual(c) > tol * std::max(1.0, c.norm())) return false;
    if (!is_psd(c, tol)) return false;
  }
  return true;
}

double cb_norm_cp(const CBMap& phi, double tol) {
  if (!is_cp(phi, tol)) throw Error(ErrorCode::NotCP, "cb_norm_cp needs a CP map");
  return op_norm(phi.apply(AlgElement::unit(phi.source())).embed());
}

namespace {

struct KrausTerm {
  int block;
  CMatrix op;  // t x d
};

std::vector<KrausTerm> kraus_terms(const CBMap& phi, double tol) {
  const Algebra& src = phi.source();
  const int t = phi.target().rep_dim();
  const int d = src.rep_dim();
  std::vector<KrausTerm> out;
  const ChoiBlocks blocks = choi(phi);
  for (int k = 0; k < src.num_blocks(); ++k) {
    const int n = src.block_size(k);
    const CMatrix& c = blocks[k];
    const CMatrix herm = 0.5 * (c + c.adjoint());
    const EigResult eig = eig_hermitian(herm, 1e-6);
    double scale = 1.0;
    for (double w : eig.eigenvalues) scale = std::max(scale, std::abs(w));
    const double cutoff = tol * scale;
    // Largest eigenvalues first so the dominant Kraus operator leads.
    for (int idx = static_cast<int>(eig.eigenvalues.size()) - 1; idx >= 0; --idx) {
      const double w = eig.eigenvalues[idx];
      if (w <= cutoff) continue;
      CMatrix op = CMatrix::Zero(t, d);
      const double sw = std::sqrt(w);
      for (int i = 0; i < n; ++i) {
        op.col(src.rep_offset(k) + i) = sw * eig.vectors.col(idx).segment(i * t, t);
      }
      out.push_back({k, std::move(op)});
    }
  }
  return out;
}

StinespringData dilate(const CBMap& phi, const std::vector<KrausTerm>& terms) {
  const Algebra& src = phi.source();
  const int t = phi.target().rep_dim();
  StinespringData s;
  s.multiplicities.assign(src.num_blocks(), 0);
  for (const auto& term : terms) {
    s.multiplicities[term.block] += 1;
    s.dilation_dim += src.block_size(term.block);
  }
  CMatrix v = CMatrix::Zero(s.dilation_dim, t);
  int row = 0;
  for (int k = 0; k < src.num_blocks(); ++k) {
    const int n = src.block_size(k);
    for (const auto& term : terms) {
      if (term.block != k) continue;
      v.block(row, 0, n, t) = term.op.middleCols(src.rep_offset(k), n).adjoint();
      row += n;
    }
  }
  s.v_ops.push_back(std::move(v));
  for (int j = 0; j < src.dim(); ++j) {
    const AlgElement e = AlgElement::basis(src, j);
    const CMatrix lhs = phi.apply(e).embed();
    const CMatrix rhs = s.v_ops[0].adjoint() * s.rho(e) * s.v_ops[0];
    s.residual = std::max(s.residual, (lhs - rhs).norm());
  }
  return s;
}

}  // namespace

std::vector<CMatrix> kraus(const CBMap& phi, double tol) {
  if (!is_cp(phi, tol)) throw Error(ErrorCode::NotCP, "kraus needs a CP map");
  std::vector<CMatrix> out;
  for (auto& term : kraus_terms(phi, tol)) out.push_back(std::move(term.op));
  return out;
}

CMatrix StinespringData::rho(const AlgElement& a) const {
  std::vector<CMatrix> blocks;
  for (int k = 0; k < static_cast<int>(multiplicities.size()); ++k) {
    for (int c = 0; c < multiplicities[k]; ++c) blocks.push_back(a.block(k));
  }
  return block_diag(blocks);
}

StinespringData stinespring(const CBMap& phi, double tol) {
  if (!is_cp(phi, tol)) throw Error(ErrorCode::NotCP, "stinespring needs a CP map");
  return dilate(phi, kraus_terms(phi, tol));
}

StinespringData stinespring_positive_part(const CBMap& phi, double tol) {
  return dilate(phi, kraus_terms(phi, tol));
}

// ---------------------------------------------------------------------------
// Traces

TracialState::TracialState(Algebra alg, std::vector<double> weights)
    : alg_(std::move(alg)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != alg_.num_blocks()) {
    throw Error(ErrorCode::InvalidSystem, "one trace weight per block expected");
  }
  double total = 0.0;
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    if (!(weights_[k] > 0.0)) {
      throw Error(ErrorCode::InvalidSystem, "trace weights must be positive (faithful)");
    }
    total += weights_[k] * alg_.block_size(k);
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidSystem,
                "trace weights give tau(1) = " + std::to_string(total));
  }
}

TracialState TracialState::normalized(const Algebra& alg) {
  return TracialState(alg, std::vector<double>(alg.num_blocks(), 1.0 / alg.rep_dim()));
}

Complex TracialState::operator()(const AlgElement& a) const { return trace_eval(*this, a); }

Complex trace_eval(const TracialState& tau, const AlgElement& a) {
  if (!(a.algebra() == tau.algebra())) {
    throw Error(ErrorCode::AlgebraMismatch, "trace of foreign element");
  }
  Complex s = 0.0;
  for (int k = 0; k < a.algebra().num_blocks(); ++k) {
    s += tau.weights()[k] * a.block(k).trace();
  }
  return s;
}

}  // namespace cpm
