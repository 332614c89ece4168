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

#include "cpmult/fixtures.hpp"

#include <algorithm>
#include <array>

namespace cpm::fixtures {

CMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix sigma_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

namespace {

std::vector<CMatrix> ones(int k) { return std::vector<CMatrix>(static_cast<size_t>(k), CMatrix::Identity(1, 1)); }

}  // namespace

DynamicalSystem sys_t() {
  const Algebra alg({2});
  return DynamicalSystem(FiniteGroup::trivial(), alg, {Automorphism::identity(alg)},
                         TracialState::normalized(alg));
}

DynamicalSystem sys_a() {
  const Algebra alg({2});
  return DynamicalSystem(FiniteGroup::cyclic(2), alg,
                         {Automorphism::identity(alg), Automorphism(alg, {0}, {sigma_x()})},
                         TracialState::normalized(alg));
}

DynamicalSystem sys_b() {
  const Algebra alg({1, 1, 1});
  std::vector<Automorphism> action;
  for (int g = 0; g < 3; ++g) action.emplace_back(alg, std::vector<int>{g % 3, (1 + g) % 3, (2 + g) % 3}, ones(3));
  return DynamicalSystem(FiniteGroup::cyclic(3), alg, std::move(action), TracialState::normalized(alg));
}

DynamicalSystem sys_s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      std::array<int, 3> st{};
      for (int k = 0; k < 3; ++k) st[k] = perms[s][perms[t][k]];
      mul[s][t] = static_cast<int>(std::find(perms.begin(), perms.end(), st) - perms.begin());
    }
  }
  const Algebra alg({1, 1, 1});
  std::vector<Automorphism> action;
  for (const auto& q : perms) action.emplace_back(alg, std::vector<int>(q.begin(), q.end()), ones(3));
  return DynamicalSystem(FiniteGroup(mul), alg, std::move(action), TracialState::normalized(alg));
}

DynamicalSystem sys_mixed() {
  const Algebra alg({2, 1, 1});
  const std::vector<CMatrix> us{sigma_z(), CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)};
  return DynamicalSystem(FiniteGroup::cyclic(2), alg,
                         {Automorphism::identity(alg), Automorphism(alg, {0, 2, 1}, us)},
                         TracialState(alg, {0.3, 0.2, 0.2}));
}

}  // namespace cpm::fixtures
