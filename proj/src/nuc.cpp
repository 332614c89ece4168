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

#include "cpmult/nuc.hpp"

#include <algorithm>
#include <cmath>

#include "cpmult/error.hpp"

namespace cpm {

AmenableData AmenableData::uniform(const DynamicalSystem& sys) {
  const AlgElement v = AlgElement::unit(sys.algebra()) * Complex(1.0 / std::sqrt(double(sys.order())));
  return {sys, std::vector<AlgElement>(static_cast<size_t>(sys.order()), v)};
}

AmenableData AmenableData::delta_e(const DynamicalSystem& sys) {
  std::vector<AlgElement> t(static_cast<size_t>(sys.order()), AlgElement::zero(sys.algebra()));
  t[static_cast<size_t>(sys.group().identity())] = AlgElement::unit(sys.algebra());
  return {sys, t};
}

AmenableData AmenableData::from_scalars(const DynamicalSystem& sys, const std::vector<std::vector<Complex>>& c) {
  if (static_cast<int>(c.size()) != sys.order()) {
    throw Error(ErrorCode::ShapeMismatch, "need one scalar list per group element");
  }
  AmenableData d{sys, {}};
  for (const auto& row : c) {
    if (static_cast<int>(row.size()) != sys.algebra().num_blocks()) {
      throw Error(ErrorCode::ShapeMismatch, "need one scalar per algebra block");
    }
    d.T.push_back(AlgElement::central(sys.algebra(), row));
  }
  return d;
}

std::vector<int> AmenableData::support(double tol) const {
  std::vector<int> s;
  for (int t = 0; t < static_cast<int>(T.size()); ++t) {
    if (T[t].coords().cwiseAbs().maxCoeff() > tol) s.push_back(t);
  }
  return s;
}

namespace {

void validate(const AmenableData& d, double tol) {
  if (static_cast<int>(d.T.size()) != d.system.order()) {
    throw Error(ErrorCode::ShapeMismatch, "T needs one value per group element");
  }
  for (int t = 0; t < d.system.order(); ++t) {
    if (!(d.T[t].algebra() == d.system.algebra())) throw Error(ErrorCode::AlgebraMismatch, "T value over another algebra");
    if (!is_central(d.T[t], tol)) throw Error(ErrorCode::NotCentral, "T(" + std::to_string(t) + ") is not central");
    if (!is_positive_element(d.T[t], tol)) {
      throw Error(ErrorCode::NotPositive, "T(" + std::to_string(t) + ") is not positive");
    }
  }
}

}  // namespace

AmenableCheck check_amenable(const AmenableData& data, double tol) {
  validate(data, tol);
  const DynamicalSystem& sys = data.system;
  const FiniteGroup& g = sys.group();
  const Algebra& alg = sys.algebra();
  AmenableCheck r;
  AlgElement sum = AlgElement::zero(alg);
  for (const auto& t : data.T) sum += t * t;
  r.sum_residual = op_norm((sum - AlgElement::unit(alg)).embed());
  for (int t = 0; t < sys.order(); ++t) {
    AlgElement acc = AlgElement::zero(alg);
    for (int s = 0; s < sys.order(); ++s) {
      const AlgElement diff = data.T[s] - sys.act(t, data.T[g.mul(g.inv(t), s)]);
      acc += diff.adjoint() * diff;
    }
    r.shift_defects.push_back(op_norm(acc.embed()));
  }
  return r;
}

HSMultiplier build_amenable_multiplier(const AmenableData& data, const CBMap& phi, double tol) {
  validate(data, 1e-10);
  const DynamicalSystem& sys = data.system;
  const Algebra& alg = sys.algebra();
  if (!(phi.source() == alg) || !(phi.target() == alg)) {
    throw Error(ErrorCode::AlgebraMismatch, "Phi must map A to A");
  }
  if (!is_cp(phi, tol)) throw Error(ErrorCode::NotCP, "Phi is not completely positive");
  const AlgElement one = AlgElement::unit(alg);
  if ((phi.apply(one).embed() - one.embed()).norm() > tol) throw Error(ErrorCode::NotUnital, "Phi(1) != 1");

  const FiniteGroup& g = sys.group();
  const std::vector<int> supp = data.support();
  std::vector<bool> in_supp(static_cast<size_t>(sys.order()), false);
  for (int p : supp) in_supp[static_cast<size_t>(p)] = true;

  // alpha_p o Phi o alpha_{p^-1} once per p in the support.
  std::vector<CBMap> conj(static_cast<size_t>(sys.order()), CBMap::zero(alg, alg));
  for (int p : supp) conj[p] = compose(sys.alpha_map(p), compose(phi, sys.alpha_map(g.inv(p))));

  std::vector<CBMap> values;
  for (int s = 0; s < sys.order(); ++s) {
    CBMap fs = CBMap::zero(alg, alg);
    for (int p : supp) {
      const int q = g.mul(g.inv(s), p);
      if (!in_supp[static_cast<size_t>(q)]) continue;
      fs = fs + compose(CBMap::right_multiplication(sys.act(s, data.T[q])),
                        compose(CBMap::left_multiplication(data.T[p]), conj[p]));
    }
    values.push_back(std::move(fs));
  }
  return HSMultiplier(sys, std::move(values));
}

NuclearityReport nuclearity_report(const DynamicalSystem& sys, const std::vector<NuclearityMember>& family,
                                   const CertifyOptions& opt) {
  NuclearityReport rep;
  rep.rank_note = "finite rank is automatic in finite dimensions; ranks are numerical with cutoff 1e-9";
  rep.summation_note =
      "amenable-action data are normalized by summing T(t)^2 over t in G; the literal definition sums over the "
      "net index, read here as a typo";
  rep.test_set_note =
      "crossed deviation is taken over pi(a) lambda_t and sum_t pi(a) lambda_t for matrix units a; coupling "
      "factor is the largest group support of a test element";

  const Algebra& alg = sys.algebra();
  const FiniteGroup& g = sys.group();
  const int n = sys.order();
  const int da = alg.dim();
  for (const auto& m : family) {
    if (!(m.f.system() == sys)) throw Error(ErrorCode::SystemMismatch, "member " + m.name + " is over another system");
    NuclearityRow row;
    row.name = m.name;
    row.support_size = static_cast<int>(m.f.support(opt.tol).size());
    try {
      row.cp = certify_cp(m.f, opt).verdict;
    } catch (const Error& e) {
      row.cp = false;
      row.cp_error = e.what();
    }
    row.fe_norm = op_norm(m.f.at(g.identity()).apply(AlgElement::unit(alg)).embed());
    row.norm_ok = row.fe_norm <= 1.0 + opt.tol;
    for (int s = 0; s < n; ++s) row.ranks.push_back(numerical_rank(m.f.at(s).action(), 1e-9));
    if (m.rank_bound) {
      row.rank_within_bound =
          std::all_of(row.ranks.begin(), row.ranks.end(), [&](int r) { return r <= *m.rank_bound; });
    }

    std::vector<CMatrix> diffs;  // F(s)(a) - a per (s, matrix unit a), s-major
    for (int s = 0; s < n; ++s) {
      for (int j = 0; j < da; ++j) {
        const AlgElement a = AlgElement::basis(alg, j);
        const CMatrix d = (m.f.at(s).apply(a) - a).embed();
        row.dev_algebra = std::max(row.dev_algebra, op_norm(d));
        diffs.push_back(d);
      }
    }
    for (int s = 0; s < n; ++s) {
      for (int j = 0; j < da; ++j) {
        const CrossedElement x = CrossedElement::basis(sys, s * da + j);
        const CMatrix d = synth(sys, sF_apply(m.f, x)) - synth(sys, x);
        row.dev_crossed = std::max(row.dev_crossed, op_norm(d));
      }
    }
    for (int j = 0; j < da; ++j) {
      CrossedElement x = CrossedElement::zero(sys);
      for (int s = 0; s < n; ++s) x = crossed_add(x, CrossedElement::basis(sys, s * da + j));
      const CMatrix d = synth(sys, sF_apply(m.f, x)) - synth(sys, x);
      row.dev_crossed = std::max(row.dev_crossed, op_norm(d));
    }
    row.coupling_factor = n;
    row.coupling_ok = row.dev_crossed <= row.coupling_factor * row.dev_algebra + 1e-9;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ExtractedMultiplier extract_from_cp_approx(const CrossedMap& phi, const CertifyOptions& opt) {
  const DynamicalSystem& sys = phi.system();
  ExtractedMultiplier out{h_from_map(phi), {}, false, std::nullopt, std::nullopt, std::nullopt};
  out.support = out.h.support(opt.tol);
  SearchOptions so = opt.search;
  so.seed = opt.seed;
  so.tol = opt.tol;
  out.map_cp_evidence = !search_cp_violation(phi, so).violation_found;
  if (out.map_cp_evidence) {
    out.certificate = certify_cp(out.h, opt);
    if (out.certificate->verdict) {
      out.he_cb_norm = cb_norm_cp(out.h.at(sys.group().identity()), opt.tol);
      const CMatrix one = CMatrix::Identity(sys.rep_dim(), sys.rep_dim());
      out.map_norm = op_norm(phi.apply_matrix(one, opt.tol));
    }
  }
  return out;
}

}  // namespace cpm
