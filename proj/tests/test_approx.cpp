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

#include <cmath>

#include "cpmult/approx.hpp"
#include "cpmult/error.hpp"
#include "cpmult/fixtures.hpp"
#include "cpmult/generators.hpp"

using namespace cpm;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Parse;
}

std::vector<DynamicalSystem> all_fixtures() {
  return {fixtures::sys_t(), fixtures::sys_a(), fixtures::sys_b(), fixtures::sys_s3(), fixtures::sys_mixed()};
}

DynamicalSystem untraced(const Algebra& alg, int n) {
  return DynamicalSystem(FiniteGroup::cyclic(n), alg,
                         std::vector<Automorphism>(static_cast<size_t>(n), Automorphism::identity(alg)));
}

HSMultiplier c_family(const DynamicalSystem& sys_a, double c) { return HSMultiplier::scalar(sys_a, {1.0, c}); }

// CP and tau-dominated, but F(e)(1) = 1/2.
HSMultiplier non_unital(const DynamicalSystem& sys) {
  std::vector<Complex> c(static_cast<size_t>(sys.order()), 0.0);
  c[static_cast<size_t>(sys.group().identity())] = 0.5;
  return HSMultiplier::scalar(sys, c);
}

double identity_residual(const CMatrix& m) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

}  // namespace

TEST_CASE("induced trace", "[approx]") {
  Rng rng(11);
  for (const auto& sys : all_fixtures()) {
    CHECK(std::abs(induced_trace(sys, CMatrix::Identity(sys.rep_dim(), sys.rep_dim())) - 1.0) < 1e-12);
    for (int t = 0; t < sys.order(); ++t) {
      if (t == sys.group().identity()) continue;
      CHECK(std::abs(induced_trace(sys, rep_lambda(sys, t))) < 1e-12);
    }
    for (int i = 0; i < 10; ++i) {
      const CMatrix x = synth(sys, random_crossed_element(rng, sys));
      const CMatrix y = synth(sys, random_crossed_element(rng, sys));
      CHECK(std::abs(induced_trace(sys, x * y) - induced_trace(sys, y * x)) <= 1e-11);
      // Faithfulness: tau'(x*x) > 0 for x != 0.
      CHECK(induced_trace(sys, x.adjoint() * x).real() > 1e-6);
    }
  }
  const auto sys = fixtures::sys_a();
  CMatrix bad = CMatrix::Zero(sys.rep_dim(), sys.rep_dim());
  bad(0, 1) = 1.0;
  CHECK(code_of([&] { induced_trace(sys, bad); }) == ErrorCode::NotInCrossedProduct);
}

TEST_CASE("L2 spaces have orthonormal bases", "[approx]") {
  for (const auto& sys : all_fixtures()) {
    for (const L2Space& s : {L2Space::over_algebra(sys.trace()), L2Space::over_crossed(sys)}) {
      CHECK(identity_residual(s.onb().adjoint() * s.gram() * s.onb()) <= 1e-10);
      CHECK(identity_residual(s.to_onb() * s.onb()) <= 1e-10);
    }
    CHECK(L2Space::over_algebra(sys.trace()).dim() == sys.algebra().dim());
    CHECK(L2Space::over_crossed(sys).dim() == sys.crossed_dim());
  }
  // The norm is the trace norm: ||1||_{2,tau} = 1 for a state.
  const auto sys = fixtures::sys_mixed();
  const L2Space b = L2Space::over_algebra(sys.trace());
  CHECK(std::abs(b.norm(AlgElement::unit(sys.algebra()).coords()) - 1.0) < 1e-12);
  CHECK(code_of([] { L2Space::over_crossed(untraced(Algebra::full(2), 2)); }) == ErrorCode::NoTrace);
}

TEST_CASE("l2_matrix examples", "[approx]") {
  const Algebra m2 = Algebra::full(2);
  const TracialState tau = TracialState::normalized(m2);
  const L2Space s = L2Space::over_algebra(tau);
  CHECK(identity_residual(l2_matrix(CBMap::identity(m2), s)) < 1e-12);

  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const AlgElement u = random_unitary_element(rng, m2);
    const CBMap ad = CBMap::from_kraus(m2, m2, {u.embed()});
    const CMatrix t = l2_matrix(ad, s);
    CHECK(identity_residual(t.adjoint() * t) <= 1e-10);
  }
  const Complex c(0.3, -0.4);
  CHECK(std::abs(op_norm(l2_matrix(c * CBMap::identity(m2), s)) - std::abs(c)) < 1e-12);

  // Weighted trace on M_2 + C + C: the identity map still has T = I and the
  // L2 inner product is tau(b^* a).
  const auto mixed = fixtures::sys_mixed();
  const L2Space sm = L2Space::over_algebra(mixed.trace());
  for (int k = 0; k < 5; ++k) {
    const AlgElement a = random_element(rng, mixed.algebra());
    const AlgElement b = random_element(rng, mixed.algebra());
    CHECK(std::abs(sm.inner(a.coords(), b.coords()) - mixed.trace()(b.adjoint() * a)) < 1e-12);
  }

  const Algebra m3 = Algebra::full(3);
  CHECK(code_of([&] { l2_matrix(CBMap::identity(m3), s); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { l2_matrix(CBMap::zero(m2, m3), s); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("orthogonal decomposition of L2 of the crossed product", "[approx]") {
  {
    const auto sys = fixtures::sys_t();
    const L2Decomposition d = l2_decompose(sys);
    REQUIRE(d.v.size() == 1);
    CHECK(identity_residual(d.v[0]) < 1e-12);
  }
  Rng rng(23);
  for (const auto& sys : all_fixtures()) {
    const L2Decomposition d = l2_decompose(sys);
    const int n = sys.order();
    CMatrix sum = CMatrix::Zero(sys.crossed_dim(), sys.crossed_dim());
    for (int s = 0; s < n; ++s) {
      CHECK(identity_residual(d.v[s].adjoint() * d.v[s]) <= 1e-10);
      sum += d.p[s];
      for (int t = 0; t < n; ++t) {
        const CMatrix expect = s == t ? d.p[s] : CMatrix::Zero(sum.rows(), sum.cols());
        CHECK((d.p[s] * d.p[t] - expect).norm() <= 1e-10);
      }
    }
    CHECK(identity_residual(sum) <= 1e-10);

    // V_t^* P_t agrees with the Fourier coefficient at t.
    for (int i = 0; i < 5; ++i) {
      const CrossedElement x = random_crossed_element(rng, sys);
      const CVector xc = d.crossed.to_onb() * x.coords();
      for (int t = 0; t < n; ++t) {
        const CVector lhs = d.v[t].adjoint() * d.p[t] * xc;
        const CVector rhs = d.base.to_onb() * fourier_coeff(sys, synth(sys, x), t).coords();
        CHECK((lhs - rhs).norm() <= 1e-10);
      }
    }

    // <pi(a) lambda_s, pi(b) lambda_t> = 0 for s != t, computed from the trace itself.
    for (int i = 0; i < 5; ++i) {
      const AlgElement a = random_element(rng, sys.algebra());
      const AlgElement b = random_element(rng, sys.algebra());
      for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
          if (s == t) continue;
          const CMatrix x = rep_pi(sys, a) * rep_lambda(sys, s);
          const CMatrix y = rep_pi(sys, b) * rep_lambda(sys, t);
          CHECK(std::abs(induced_trace(sys, y.adjoint() * x)) <= 1e-12);
        }
      }
    }
  }
  const auto a = fixtures::sys_a();
  const L2Decomposition d = l2_decompose(a);
  CHECK(identity_residual(d.p[0] + d.p[1]) <= 1e-12);
  CHECK((d.p[0] * d.p[1]).norm() <= 1e-12);
  CHECK(code_of([] { l2_decompose(untraced(Algebra::full(2), 3)); }) == ErrorCode::NoTrace);
}

TEST_CASE("admissibility gate", "[approx]") {
  const auto sys = fixtures::sys_a();
  const Admissibility id = check_admissible(HSMultiplier::identity(sys));
  CHECK(id.ok());
  CHECK(id.failures().empty());

  const Admissibility half = check_admissible(non_unital(sys));
  CHECK(half.cp);
  CHECK_FALSE(half.unital);
  CHECK(half.tau_dominated);
  CHECK(half.failures().find("F(e)(1) != 1") != std::string::npos);

  const Admissibility big = check_admissible(c_family(sys, 2.0));
  CHECK_FALSE(big.cp);
  CHECK(big.unital);

  // Evaluation at the first C block, times 1: unital and CP, but tau o F(e) puts
  // weight 1 on a block where tau has weight 0.2.
  const auto mixed = fixtures::sys_mixed();
  const Algebra& alg = mixed.algebra();
  const CBMap collapse = CBMap::from_function(alg, alg, [&](const AlgElement& a) {
    const int idx = alg.basis_index(1, 0, 0);
    return a.coords()(idx) * AlgElement::unit(alg);
  });
  std::vector<CBMap> vals(static_cast<size_t>(mixed.order()), CBMap::zero(alg, alg));
  vals[static_cast<size_t>(mixed.group().identity())] = collapse;
  const Admissibility skew = check_admissible(HSMultiplier(mixed, vals));
  CHECK(skew.unital);
  CHECK_FALSE(skew.tau_dominated);
  CHECK(skew.tau_gap < -0.1);
}

TEST_CASE("block diagonality of T_{S_F}", "[approx]") {
  const auto sa = fixtures::sys_a();
  {
    const auto id = HSMultiplier::identity(sa);
    CHECK(check_block_diag(id) <= 1e-12);
    CHECK(identity_residual(l2_matrix(CrossedMap::multiplier(id), L2Space::over_crossed(sa))) <= 1e-12);
  }
  // F(g) = c id: T_{S_F} = P_e + c P_g, an explicit oracle built from the projections.
  const L2Decomposition d = l2_decompose(sa);
  for (double c : {-1.0, -0.5, 0.0, 0.25, 0.9, 1.0}) {
    const auto f = c_family(sa, c);
    CHECK(check_block_diag(f) <= 1e-11);
    const CMatrix t = l2_matrix(CrossedMap::multiplier(f), d.crossed);
    CHECK((t - (d.p[0] + c * d.p[1])).norm() <= 1e-11);
  }
  CHECK(code_of([&] { check_block_diag(non_unital(sa)); }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([&] { check_block_diag(c_family(sa, 2.0)); }) == ErrorCode::PreconditionFailed);

  Rng rng(77);
  for (const auto& sys : {fixtures::sys_a(), fixtures::sys_b(), fixtures::sys_mixed()}) {
    const L2Space cs = L2Space::over_crossed(sys);
    for (int i = 0; i < 50; ++i) {
      const auto f = random_admissible_multiplier(rng, sys);
      CHECK(check_block_diag(f) <= 1e-10);
      CHECK(op_norm(l2_matrix(CrossedMap::multiplier(f), cs)) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("contraction_check", "[approx]") {
  const auto sa = fixtures::sys_a();
  const auto id = contraction_check(HSMultiplier::identity(sa));
  CHECK(id.contraction);
  for (double n : id.norms) CHECK(std::abs(n - 1.0) < 1e-12);
  for (double c : {-0.7, 0.0, 0.4, 1.0}) {
    const auto r = contraction_check(c_family(sa, c));
    CHECK(r.contraction);
    CHECK(std::abs(r.norms[1] - std::abs(c)) < 1e-12);
  }
  CHECK(code_of([&] { contraction_check(non_unital(sa)); }) == ErrorCode::PreconditionFailed);

  Rng rng(3);
  for (const auto& sys : all_fixtures()) {
    for (int i = 0; i < 10; ++i) CHECK(contraction_check(random_admissible_multiplier(rng, sys)).contraction);
  }
}

TEST_CASE("scalar positive definite extraction", "[approx]") {
  const auto sa = fixtures::sys_a();
  {
    const auto r = scalar_pd_extract(HSMultiplier::identity(sa));
    CHECK(r.verdict);
    for (const auto& v : r.phi) CHECK(std::abs(v - 1.0) < 1e-12);
  }
  for (double c : {0.0, 0.3, 1.0}) {
    const auto r = scalar_pd_extract(c_family(sa, c));
    CHECK(r.verdict);
    CHECK(std::abs(r.phi[0] - 1.0) < 1e-12);
    CHECK(std::abs(r.phi[1] - c) < 1e-12);
    // 2x2 oracle [[1, c], [c, 1]] has eigenvalues 1 +- c.
    CHECK(std::abs(r.min_eig - (1.0 - c)) < 1e-12);
  }
  CHECK(code_of([&] { scalar_pd_extract(c_family(sa, 2.0)); }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([&] { scalar_pd_extract(non_unital(sa)); }) == ErrorCode::PreconditionFailed);

  // Any certified CP multiplier with unital F(e); tau domination is not required here.
  Rng rng(19);
  for (const auto& sys : all_fixtures()) {
    const L2Space base = L2Space::over_algebra(sys.trace());
    for (int i = 0; i < 10; ++i) {
      const auto f = random_admissible_multiplier(rng, sys);
      const auto r = scalar_pd_extract(f);
      CHECK(r.verdict);
      CHECK(r.min_eig >= -1e-10);
      CHECK(std::abs(r.phi[static_cast<size_t>(sys.group().identity())] - 1.0) < 1e-10);
      for (int s = 0; s < sys.order(); ++s) {
        CHECK(std::abs(r.phi[static_cast<size_t>(s)]) <= op_norm(l2_matrix(f.at(s), base)) + 1e-10);
      }
    }
  }
}

TEST_CASE("compression identity", "[approx]") {
  Rng rng(41);
  for (const auto& sys : all_fixtures()) {
    CHECK(compression_identity_check(CrossedMap::identity(sys)) <= 1e-10);
    const CrossedMap pe = CrossedMap::expectation(sys);
    CHECK(compression_identity_check(pe) <= 1e-10);
    const HSMultiplier h = h_from_map(pe);
    for (int t = 0; t < sys.order(); ++t) {
      const CBMap expect = t == sys.group().identity() ? CBMap::identity(sys.algebra())
                                                       : CBMap::zero(sys.algebra(), sys.algebra());
      CHECK((h.at(t).action() - expect.action()).norm() < 1e-12);
    }
    for (int i = 0; i < 3; ++i) {
      CHECK(compression_identity_check(CrossedMap::multiplier(random_cp_multiplier(rng, sys))) <= 1e-10);
      // Not a multiplier: compressing a general map still recovers h_Phi.
      CHECK(compression_identity_check(random_cp_crossed_map(rng, sys, 2)) <= 1e-10);
    }
  }
  CHECK(code_of([] { compression_identity_check(CrossedMap::identity(untraced(Algebra::full(1), 2))); }) ==
        ErrorCode::NoTrace);
}

TEST_CASE("Cauchy-Schwarz bound on coefficient maps", "[approx]") {
  Rng rng(8);
  for (const auto& sys : all_fixtures()) {
    const L2Space base = L2Space::over_algebra(sys.trace());
    const L2Space cs = L2Space::over_crossed(sys);
    for (int i = 0; i < 5; ++i) {
      const auto f = random_admissible_multiplier(rng, sys);
      const double bound = op_norm(l2_matrix(CrossedMap::multiplier(f), cs));
      for (int k = 0; k < 5; ++k) {
        const AlgElement a = random_element(rng, sys.algebra());
        for (int t = 0; t < sys.order(); ++t) {
          CHECK(base.norm(f.at(t).apply(a).coords()) <= bound * base.norm(a.coords()) + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("haagerup_report", "[approx]") {
  const auto sa = fixtures::sys_a();
  {
    const auto rep = haagerup_report(sa, {{"id", HSMultiplier::identity(sa)}});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].included);
    CHECK(*rep.rows[0].dev_algebra < 1e-12);
    CHECK(*rep.rows[0].dev_crossed < 1e-12);
    CHECK(std::abs(*rep.rows[0].norm_T_SF - 1.0) < 1e-12);
    CHECK_FALSE(rep.compactness_note.empty());
    CHECK_FALSE(rep.vanishing_note.empty());
    CHECK(rep.all_admissible());
  }
  std::vector<FamilyMember> fam;
  for (double c : {0.0, 0.5, 0.9, 0.99, 1.0}) fam.push_back({"c=" + std::to_string(c), c_family(sa, c)});
  const auto rep = haagerup_report(sa, fam);
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    CHECK(*rep.rows[i + 1].dev_algebra < *rep.rows[i].dev_algebra);
    CHECK(*rep.rows[i + 1].dev_crossed < *rep.rows[i].dev_crossed);
  }
  CHECK(*rep.rows.back().dev_algebra < 1e-12);
  CHECK(*rep.rows.back().dev_crossed < 1e-12);
  // Explicit values: F(g)(a) - a = (c - 1) a and ||e_ij||_{2,tau} = 1/sqrt(2).
  CHECK(std::abs(*rep.rows[1].dev_algebra - 0.5 / std::sqrt(2.0)) < 1e-12);

  fam.push_back({"bad", c_family(sa, 2.0)});
  const auto gated = haagerup_report(sa, fam);
  CHECK_FALSE(gated.rows.back().included);
  CHECK_FALSE(gated.rows.back().admissibility.cp);
  CHECK_FALSE(gated.rows.back().dev_algebra.has_value());
  CHECK_FALSE(gated.rows.back().dev_crossed.has_value());
  CHECK_FALSE(gated.all_admissible());

  const auto sb = fixtures::sys_b();
  CHECK(code_of([&] { haagerup_report(sa, {{"x", HSMultiplier::identity(sb)}}); }) == ErrorCode::SystemMismatch);
  const auto nt = untraced(Algebra::full(2), 2);
  CHECK(code_of([&] { haagerup_report(nt, {{"id", HSMultiplier::identity(nt)}}); }) == ErrorCode::NoTrace);
}
