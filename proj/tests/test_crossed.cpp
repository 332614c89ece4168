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

#include "cpmult/crossed.hpp"
#include "cpmult/error.hpp"
#include "cpmult/fixtures.hpp"
#include "cpmult/random.hpp"

using namespace cpm;

namespace {

std::vector<DynamicalSystem> all_fixtures() {
  return {fixtures::sys_t(), fixtures::sys_a(), fixtures::sys_b(), fixtures::sys_s3(),
          fixtures::sys_mixed()};
}

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

bool item_failed(const std::vector<ValidationItem>& items, const std::string& name) {
  for (const auto& i : items) {
    if (i.name == name) return !i.passed;
  }
  return false;
}

SystemSpec spec_z2_m2(const CMatrix& u) {
  SystemSpec s;
  s.mul = {{0, 1}, {1, 0}};
  s.blocks = {2};
  s.action = {{{0}, {CMatrix::Identity(2, 2)}}, {{0}, {u}}};
  s.trace_weights = std::vector<double>{0.5};
  return s;
}

}  // namespace

TEST_CASE("finite groups") {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.identity() == 0);
  CHECK(z4.inv(1) == 3);
  CHECK(code_of([&] { z4.check_element(4); }) == ErrorCode::BadElement);

  const DynamicalSystem s3 = fixtures::sys_s3();
  const FiniteGroup& g = s3.group();
  bool abelian = true;
  for (int s = 0; s < 6; ++s) {
    CHECK(g.mul(s, g.inv(s)) == g.identity());
    for (int t = 0; t < 6; ++t) abelian = abelian && g.mul(s, t) == g.mul(t, s);
  }
  CHECK_FALSE(abelian);

  CHECK(code_of([] { FiniteGroup(std::vector<std::vector<int>>{{0, 1}, {1, 1}}); }) ==
        ErrorCode::InvalidSystem);
  CHECK(code_of([] { FiniteGroup(std::vector<std::vector<int>>{}); }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] { FiniteGroup(std::vector<std::vector<int>>{{0, 2}, {1, 0}}); }) ==
        ErrorCode::InvalidSystem);
}

TEST_CASE("validation names the violated invariant") {
  SECTION("associativity") {
    // A Latin square with identity 0 that is not associative (order 5 loop).
    SystemSpec s;
    s.mul = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    s.blocks = {1};
    s.action.assign(5, {{0}, {CMatrix::Identity(1, 1)}});
    const auto items = validate_system(s);
    CHECK(item_failed(items, "group.associativity"));
    for (const auto& i : items) {
      if (i.name == "group.associativity") CHECK(i.detail.find(")*") != std::string::npos);
    }
    CHECK_THROWS_AS(build_system(s), Error);
  }
  SECTION("homomorphism") {
    CMatrix u = CMatrix::Identity(2, 2);
    u(1, 1) = Complex(0, 1);  // Ad u squared is Ad diag(1, -1), not the identity
    const auto items = validate_system(spec_z2_m2(u));
    CHECK(item_failed(items, "action.homomorphism"));
    CHECK_FALSE(item_failed(items, "action.identity"));
    CHECK(code_of([&] { build_system(spec_z2_m2(u)); }) == ErrorCode::InvalidSystem);
  }
  SECTION("non-unitary") {
    CMatrix u = 2.0 * fixtures::sigma_x();
    CHECK(item_failed(validate_system(spec_z2_m2(u)), "action.automorphism[1]"));
  }
  SECTION("trace invariance") {
    SystemSpec s = to_spec(fixtures::sys_b());
    s.trace_weights = std::vector<double>{0.5, 0.25, 0.25};
    CHECK(item_failed(validate_system(s), "trace.invariance"));
    CHECK_THROWS_AS(build_system(s), Error);
  }
  SECTION("block permutations must preserve sizes") {
    const Algebra a({2, 1});
    CHECK(code_of([&] {
            Automorphism(a, {1, 0}, {CMatrix::Identity(2, 2), CMatrix::Identity(1, 1)});
          }) == ErrorCode::InvalidSystem);
    CHECK_THROWS_AS(Automorphism(a, {0, 0}, {CMatrix::Identity(2, 2), CMatrix::Identity(1, 1)}), Error);
  }
  SECTION("fixtures round-trip through their spec") {
    for (const auto& sys : all_fixtures()) {
      for (const auto& i : validate_system(to_spec(sys))) CHECK(i.passed);
      CHECK(build_system(to_spec(sys)) == sys);
    }
  }
  SECTION("missing trace") {
    SystemSpec s = to_spec(fixtures::sys_a());
    s.trace_weights.reset();
    const DynamicalSystem sys = build_system(s);
    CHECK_FALSE(sys.has_trace());
    CHECK(code_of([&] { sys.trace(); }) == ErrorCode::NoTrace);
  }
}

TEST_CASE("rep_pi") {
  Rng rng(21);
  for (const auto& sys : all_fixtures()) {
    const int nd = sys.rep_dim();
    CHECK((rep_pi(sys, AlgElement::unit(sys.algebra())) - CMatrix::Identity(nd, nd)).norm() == 0.0);
    for (int trial = 0; trial < 10; ++trial) {
      const AlgElement a = random_element(rng, sys.algebra()), b = random_element(rng, sys.algebra());
      CHECK((rep_pi(sys, a * b) - rep_pi(sys, a) * rep_pi(sys, b)).norm() <= 1e-12 * (1 + a.norm() * b.norm()));
      CHECK((rep_pi(sys, a.adjoint()) - rep_pi(sys, a).adjoint()).norm() <= 1e-12);
    }
  }
  // Trivial action: I_n (x) embed(a).
  const Algebra alg({2, 1});
  std::vector<Automorphism> triv(3, Automorphism::identity(alg));
  const DynamicalSystem sys(FiniteGroup::cyclic(3), alg, triv);
  const AlgElement a = random_element(rng, alg);
  CHECK((rep_pi(sys, a) - kron(CMatrix::Identity(3, 3), a.embed())).norm() == 0.0);
}

TEST_CASE("rep_lambda and covariance") {
  for (const auto& sys : all_fixtures()) {
    const FiniteGroup& g = sys.group();
    const int nd = sys.rep_dim();
    CHECK((rep_lambda(sys, g.identity()) - CMatrix::Identity(nd, nd)).norm() == 0.0);
    for (int s = 0; s < sys.order(); ++s) {
      for (int t = 0; t < sys.order(); ++t) {
        CHECK((rep_lambda(sys, s) * rep_lambda(sys, t) - rep_lambda(sys, g.mul(s, t))).norm() == 0.0);
      }
    }
    CHECK(covariance_residual(sys) <= 1e-12);
    CHECK(code_of([&] { rep_lambda(sys, sys.order()); }) == ErrorCode::BadElement);
  }
  // lambda_t (delta_s (x) xi) = delta_{ts} (x) xi, checked on S_3.
  const DynamicalSystem s3 = fixtures::sys_s3();
  const int d = s3.algebra().rep_dim();
  for (int t = 0; t < 6; ++t) {
    for (int s = 0; s < 6; ++s) {
      CVector v = CVector::Zero(s3.rep_dim());
      v(s * d + 1) = 1.0;
      const CVector w = rep_lambda(s3, t) * v;
      CHECK(std::abs(w(s3.group().mul(t, s) * d + 1) - 1.0) == 0.0);
    }
  }
}

TEST_CASE("synth") {
  Rng rng(22);
  for (const auto& sys : all_fixtures()) {
    const int e = sys.group().identity();
    const AlgElement a = random_element(rng, sys.algebra());
    CHECK((synth(sys, CrossedElement::monomial(sys, a, e)) - rep_pi(sys, a)).norm() == 0.0);
    for (int g = 0; g < sys.order(); ++g) {
      const CrossedElement x = CrossedElement::monomial(sys, AlgElement::unit(sys.algebra()), g);
      CHECK((synth(sys, x) - rep_lambda(sys, g)).norm() == 0.0);
    }
    for (int trial = 0; trial < 10; ++trial) {
      const CrossedElement x = random_crossed_element(rng, sys), y = random_crossed_element(rng, sys);
      // Oracle: the literal sum of pi(a_t) lambda_t.
      CMatrix literal = CMatrix::Zero(sys.rep_dim(), sys.rep_dim());
      for (int t = 0; t < sys.order(); ++t) literal += rep_pi(sys, x.coeffs[t]) * rep_lambda(sys, t);
      CHECK((synth(sys, x) - literal).norm() <= 1e-12 * literal.norm());

      const CMatrix prod = synth(sys, x) * synth(sys, y);
      CHECK((synth(sys, crossed_mul(sys, x, y)) - prod).norm() <= 1e-11 * std::max(1.0, prod.norm()));
      CHECK((synth(sys, crossed_adjoint(sys, x)) - synth(sys, x).adjoint()).norm() <= 1e-12 * literal.norm());
    }
    CHECK(synth_rank(sys) == sys.crossed_dim());
  }
  CHECK_THROWS_AS(synth(fixtures::sys_a(), CrossedElement{}), Error);
}

TEST_CASE("conditional expectation") {
  Rng rng(23);
  for (const auto& sys : all_fixtures()) {
    const int e = sys.group().identity();
    const AlgElement a = random_element(rng, sys.algebra());
    CHECK((cond_exp(sys, synth(sys, CrossedElement::monomial(sys, a, e))).embed() - a.embed()).norm() <= 1e-12);
    for (int g = 0; g < sys.order(); ++g) {
      if (g != e) CHECK(cond_exp(sys, rep_lambda(sys, g)).norm() == 0.0);
    }
    const int nd = sys.rep_dim();
    CHECK((cond_exp(sys, CMatrix::Identity(nd, nd)).embed() - AlgElement::unit(sys.algebra()).embed()).norm() == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
      const CrossedElement x = random_crossed_element(rng, sys);
      const CMatrix xm = synth(sys, x);
      const AlgElement ex = cond_exp(sys, xm);
      // E(x) is the identity coefficient.
      CHECK((ex.embed() - x.coeffs[e].embed()).norm() <= 1e-12 * xm.norm());
      // Idempotent.
      CHECK((cond_exp(sys, rep_pi(sys, ex)).embed() - ex.embed()).norm() <= 1e-12 * xm.norm());
      for (int t = 0; t < sys.order(); ++t) {
        const CMatrix lam = rep_lambda(sys, t);
        const AlgElement lhs = cond_exp(sys, lam * xm * lam.adjoint());
        CHECK((lhs.embed() - sys.act(t, ex).embed()).norm() <= 1e-11 * std::max(1.0, xm.norm()));
      }
    }
  }
}

TEST_CASE("conditional expectation is positive") {
  Rng rng(24);
  int count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto fx = all_fixtures();
    const DynamicalSystem& sys = fx[trial % fx.size()];
    const CMatrix y = synth(sys, random_crossed_element(rng, sys));
    const CMatrix gram = y.adjoint() * y;
    CHECK(is_positive_element(cond_exp(sys, gram)));
    ++count;
  }
  CHECK(count == 50);
}

TEST_CASE("fourier coefficients") {
  Rng rng(25);
  for (const auto& sys : all_fixtures()) {
    for (int trial = 0; trial < 10; ++trial) {
      const CrossedElement x = random_crossed_element(rng, sys);
      const CMatrix xm = synth(sys, x);
      CHECK(crossed_membership_residual(sys, xm) <= 1e-12 * std::max(1.0, xm.norm()));
      const CrossedElement back = analyze(sys, xm);
      for (int t = 0; t < sys.order(); ++t) {
        CHECK((back.coeffs[t].embed() - x.coeffs[t].embed()).norm() <= 1e-12 * std::max(1.0, xm.norm()));
      }
    }
    for (int g = 0; g < sys.order(); ++g) {
      for (int t = 0; t < sys.order(); ++t) {
        const AlgElement c = fourier_coeff(sys, rep_lambda(sys, g), t);
        const AlgElement expect = t == g ? AlgElement::unit(sys.algebra()) : AlgElement::zero(sys.algebra());
        CHECK((c.embed() - expect.embed()).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("matrices outside the crossed product are rejected") {
  Rng rng(26);
  const DynamicalSystem sys = fixtures::sys_a();
  const CMatrix junk = random_matrix(rng, sys.rep_dim(), sys.rep_dim());
  CHECK(crossed_membership_residual(sys, junk) > 1e-3);
  CHECK(code_of([&] { analyze(sys, junk); }) == ErrorCode::NotInCrossedProduct);
  CHECK(code_of([&] { cond_exp(sys, junk); }) == ErrorCode::NotInCrossedProduct);

  // Diagonal blocks in A but not an alpha-orbit.
  const DynamicalSystem b = fixtures::sys_b();
  CMatrix diag = CMatrix::Zero(9, 9);
  diag(0, 0) = 1.0;
  CHECK(code_of([&] { cond_exp(b, diag); }) == ErrorCode::NotInCrossedProduct);
  // Diagonal blocks leaving embed(A).
  const DynamicalSystem m = fixtures::sys_mixed();
  CMatrix off = CMatrix::Identity(m.rep_dim(), m.rep_dim());
  off(0, 2) = 1.0;
  CHECK(code_of([&] { cond_exp(m, off); }) == ErrorCode::NotInCrossedProduct);
  CHECK(code_of([&] { cond_exp(m, CMatrix::Identity(3, 3)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("crossed coordinates") {
  Rng rng(27);
  const DynamicalSystem sys = fixtures::sys_mixed();
  const CrossedElement x = random_crossed_element(rng, sys);
  const CrossedElement y = CrossedElement::from_coords(sys, x.coords());
  for (int t = 0; t < sys.order(); ++t) CHECK((x.coeffs[t].embed() - y.coeffs[t].embed()).norm() == 0.0);
  const CrossedElement b = CrossedElement::basis(sys, sys.algebra().dim() + 2);
  CHECK(b.coeffs[1].coords()(2) == Complex(1.0));
  CHECK(b.coeffs[0].norm() == 0.0);
}
