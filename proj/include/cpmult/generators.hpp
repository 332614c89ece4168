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

#pragma once

// Random instances for property tests and the acceptance suite.

#include "cpmult/hsmult.hpp"
#include "cpmult/random.hpp"

namespace cpm {

/// Unitary element of A with Haar-ish blocks.
AlgElement random_unitary_element(Rng& rng, const Algebra& alg);

/// Unital, tau-preserving CP map: a convex combination of `terms` inner
/// automorphisms Ad u, optionally mixed with the depolarizing map a -> tau(a) 1.
CBMap random_unital_tracial_cp(Rng& rng, const TracialState& tau, int terms);

/// Completely positive crossed-product map: a positive combination of
/// conjugations X -> u^* X u and vector states.
CrossedMap random_cp_crossed_map(Rng& rng, const DynamicalSystem& sys, int terms);

/// Completely positive Herz-Schur multiplier, drawn from h_F, h_Phi of CP
/// crossed maps and positive combinations of these; scaled to ||F(e)(1)|| = 1.
HSMultiplier random_cp_multiplier(Rng& rng, const DynamicalSystem& sys);

/// A random CP multiplier with one value F(t) moved by eps times a Hermitian
/// map (difference of CP maps), keeping F(r)(a)^* = alpha_r(F(r^-1)(alpha_{r^-1}(a)^*))
/// so that Psi stays Hermitian. Usually, but not always, not CP.
HSMultiplier random_perturbed_multiplier(Rng& rng, const DynamicalSystem& sys, double eps);

/// CP multiplier with F(e) unital and tau o F(e) = tau: built from uniform or
/// scalar amenable-type weights and unital tau-preserving maps. Needs a trace.
HSMultiplier random_admissible_multiplier(Rng& rng, const DynamicalSystem& sys);

}  // namespace cpm
