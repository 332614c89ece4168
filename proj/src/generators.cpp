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

#include "cpmult/generators.hpp"

#include <cmath>
#include <set>

#include "cpmult/error.hpp"

namespace cpm {

namespace {

std::vector<double> random_weights(Rng& rng, int k) {
  std::vector<double> w(static_cast<size_t>(k));
  double sum = 0.0;
  for (auto& x : w) {
    x = 0.1 + rng.uniform();
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

std::vector<int> random_subset(Rng& rng, int n) {
  std::set<int> s;
  const int size = rng.uniform_int(1, n);
  while (static_cast<int>(s.size()) < size) s.insert(rng.uniform_int(0, n - 1));
  return {s.begin(), s.end()};
}

HSMultiplier scaled(const HSMultiplier& f, double c) {
  std::vector<CBMap> v;
  for (const auto& m : f.values()) v.push_back(Complex(c) * m);
  return HSMultiplier(f.system(), std::move(v));
}

HSMultiplier combine(const HSMultiplier& f, double a, const HSMultiplier& g, double b) {
  std::vector<CBMap> v;
  for (int t = 0; t < f.system().order(); ++t) v.push_back(Complex(a) * f.at(t) + Complex(b) * g.at(t));
  return HSMultiplier(f.system(), std::move(v));
}

HSMultiplier normalize_at_unit(const HSMultiplier& f) {
  const DynamicalSystem& sys = f.system();
  const double n = f.at(sys.group().identity()).apply(AlgElement::unit(sys.algebra())).norm();
  return n > 0.0 ? scaled(f, 1.0 / n) : f;
}

// K(G)(b) = alpha_{r^-1}(G(alpha_r(b^*))^*), the partner value at r^-1 that keeps
// Psi Hermitian.
CBMap hermitian_partner(const DynamicalSystem& sys, int r, const CBMap& g) {
  const int ri = sys.group().inv(r);
  return CBMap::from_function(sys.algebra(), sys.algebra(), [&](const AlgElement& b) {
    return sys.act(ri, g.apply(sys.act(r, b.adjoint())).adjoint());
  });
}

}  // namespace

AlgElement random_unitary_element(Rng& rng, const Algebra& alg) {
  std::vector<CMatrix> blocks;
  for (int k = 0; k < alg.num_blocks(); ++k) blocks.push_back(random_unitary(rng, alg.block_size(k)));
  return AlgElement(alg, std::move(blocks));
}

CBMap random_unital_tracial_cp(Rng& rng, const TracialState& tau, int terms) {
  const Algebra& alg = tau.algebra();
  const bool depol = rng.uniform() < 0.3;
  const auto w = random_weights(rng, terms + (depol ? 1 : 0));
  CBMap sum = CBMap::zero(alg, alg);
  for (int i = 0; i < terms; ++i) {
    const AlgElement u = random_unitary_element(rng, alg);
    sum += Complex(w[i]) * CBMap::from_function(alg, alg, [&](const AlgElement& a) { return u * a * u.adjoint(); });
  }
  if (depol) {
    const AlgElement one = AlgElement::unit(alg);
    sum += Complex(w.back()) * CBMap::from_function(alg, alg, [&](const AlgElement& a) { return tau(a) * one; });
  }
  return sum;
}

CrossedMap random_cp_crossed_map(Rng& rng, const DynamicalSystem& sys, int terms) {
  CrossedMap sum(sys, CMatrix::Zero(sys.crossed_dim(), sys.crossed_dim()));
  for (int i = 0; i < terms; ++i) {
    const double w = 0.2 + rng.uniform();
    if (rng.uniform() < 0.75) {
      CrossedElement u = random_crossed_element(rng, sys);
      const double nu = op_norm(synth(sys, u));
      for (auto& c : u.coeffs) c *= Complex(1.0 / nu);
      sum = sum + Complex(w) * CrossedMap::conjugation(sys, u);
    } else {
      CVector xi = random_matrix(rng, sys.rep_dim(), 1).col(0);
      xi /= xi.norm();
      sum = sum + Complex(w) * CrossedMap::vector_state(sys, xi);
    }
  }
  return sum;
}

HSMultiplier random_cp_multiplier(Rng& rng, const DynamicalSystem& sys) {
  const Algebra& alg = sys.algebra();
  auto draw_hf = [&] {
    return build_hF(sys, random_subset(rng, sys.order()), random_cp_map(rng, alg, alg, rng.uniform_int(1, 3)));
  };
  auto draw_hphi = [&] { return h_from_map(random_cp_crossed_map(rng, sys, rng.uniform_int(1, 3))); };
  const int kind = rng.uniform_int(0, 2);
  HSMultiplier f = kind == 0 ? draw_hf() : kind == 1 ? draw_hphi() : combine(draw_hf(), rng.uniform(), draw_hphi(), rng.uniform());
  return normalize_at_unit(f);
}

HSMultiplier random_perturbed_multiplier(Rng& rng, const DynamicalSystem& sys, double eps) {
  const HSMultiplier f = random_cp_multiplier(rng, sys);
  const Algebra& alg = sys.algebra();
  const int t = rng.uniform_int(0, sys.order() - 1);
  const int ti = sys.group().inv(t);
  CMatrix act = random_matrix(rng, alg.dim(), alg.dim());
  act *= eps / act.norm();
  const CBMap g(alg, alg, act);
  std::vector<CBMap> v = f.values();
  if (t == ti) {
    v[t] += Complex(0.5) * (g + hermitian_partner(sys, t, g));
  } else {
    v[t] += g;
    v[ti] += hermitian_partner(sys, t, g);
  }
  return HSMultiplier(sys, std::move(v));
}

HSMultiplier random_admissible_multiplier(Rng& rng, const DynamicalSystem& sys) {
  const TracialState& tau = sys.trace();
  const FiniteGroup& g = sys.group();
  const int n = sys.order();
  auto draw_weighted = [&] {
    // F(s) = sum_p c_p c_{s^-1 p} alpha_p o Phi o alpha_{p^-1} with sum c_p^2 = 1.
    const CBMap phi = random_unital_tracial_cp(rng, tau, rng.uniform_int(1, 3));
    std::vector<double> c(static_cast<size_t>(n));
    double norm2 = 0.0;
    for (auto& x : c) {
      x = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
      norm2 += x * x;
    }
    if (norm2 == 0.0) {
      c[g.identity()] = 1.0;
      norm2 = 1.0;
    }
    for (auto& x : c) x /= std::sqrt(norm2);
    std::vector<CBMap> v;
    for (int s = 0; s < n; ++s) {
      CBMap sum = CBMap::zero(sys.algebra(), sys.algebra());
      for (int p = 0; p < n; ++p) {
        const double w = c[p] * c[g.mul(g.inv(s), p)];
        if (w != 0.0) sum += Complex(w) * compose(sys.alpha_map(p), compose(phi, sys.alpha_map(g.inv(p))));
      }
      v.push_back(std::move(sum));
    }
    return HSMultiplier(sys, std::move(v));
  };
  auto draw_hf = [&] {
    const auto set = random_subset(rng, n);
    const CBMap phi = random_unital_tracial_cp(rng, tau, rng.uniform_int(1, 3));
    return scaled(build_hF(sys, set, phi), 1.0 / static_cast<double>(set.size()));
  };
  const int kind = rng.uniform_int(0, 2);
  if (kind == 0) return draw_weighted();
  if (kind == 1) return draw_hf();
  const double a = rng.uniform();
  return combine(draw_weighted(), a, draw_hf(), 1.0 - a);
}

}  // namespace cpm
