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

// Reference dynamical systems used by tests, the acceptance binary and the
// sample data files.

#include "cpmult/crossed.hpp"

namespace cpm::fixtures {

/// G = {e}, A = M_2, normalized trace.
DynamicalSystem sys_t();
/// G = Z/2, A = M_2, alpha_g = Ad sigma_x, tau = tr/2.
DynamicalSystem sys_a();
/// G = Z/3, A = C^3, alpha_g cycles the blocks, tau uniform.
DynamicalSystem sys_b();
/// G = S_3 (non-abelian), A = C^3, alpha_s permutes the blocks, tau uniform.
DynamicalSystem sys_s3();
/// G = Z/2, A = M_2 (+) C (+) C, alpha_g = Ad sigma_z on M_2 and swaps the two
/// C blocks, tau with weights (0.3, 0.2, 0.2).
DynamicalSystem sys_mixed();

CMatrix sigma_x();
CMatrix sigma_z();

}  // namespace cpm::fixtures
