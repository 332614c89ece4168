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

// JSON encodings. Complex numbers are a plain number or [re, im]; matrices are
// arrays of rows. Every reader throws Error(Parse) on malformed input and the
// library's own codes (ShapeMismatch, BadElement, ...) on well-formed but
// inconsistent input.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpmult/approx.hpp"
#include "cpmult/nuc.hpp"

namespace cpm::io {

using Json = nlohmann::ordered_json;

/// Parses text; Parse error carries the parser message.
Json parse(const std::string& text);

Complex complex_from(const Json& j);
Json to_json(Complex z);
CMatrix matrix_from(const Json& j);
Json to_json(const CMatrix& m);

/// {"blocks": [n_1, ...]}
Algebra algebra_from(const Json& j);
/// {"blocks": [matrix per block]}
AlgElement element_from(const Json& j, const Algebra& alg);
Json to_json(const AlgElement& a);

/// {"action": M} with M of shape target.dim x source.dim, or {"kraus": [K...]}
/// with each K of shape target.rep_dim x source.rep_dim.
CBMap map_from(const Json& j, const Algebra& source, const Algebra& target);
Json to_json(const CBMap& m);

/// {"group": {"order", "mul_table"}, "algebra": {"blocks"},
///  "action": [{"perm", "unitaries"}], "trace": {"weights"}}. A missing
/// "action" means the trivial action; missing perm is the identity and missing
/// unitaries are identities.
SystemSpec system_spec_from(const Json& j);
Json to_json(const SystemSpec& s);

/// {"points": m, "fill": "zero"|"identity", "values": [{"x", "y", "action"|"kraus"}]}.
/// Each value maps A into M_d; an action of shape dim A x dim A is read as a
/// map into A followed by the embedding.
SchurMultiplierFn schur_multiplier_from(const Json& j, const Algebra& alg);

/// {"fill": "zero"|"identity", "values": [{"element", "action"|"kraus"}]};
/// omitted elements take the fill value.
HSMultiplier hs_multiplier_from(const Json& j, const DynamicalSystem& sys);
Json to_json(const HSMultiplier& f);

/// {"members": [{"name", "multiplier", "rank_bound"?}]}
std::vector<NuclearityMember> family_from(const Json& j, const DynamicalSystem& sys);

/// {"T": [entry per group element]}, each entry a list of per-block scalars
/// (the central case) or an element {"blocks": [...]}.
AmenableData amenable_from(const Json& j, const DynamicalSystem& sys);

/// {"coefficients": [{"element", "value": AlgElement}]}; omitted are zero.
CrossedElement crossed_element_from(const Json& j, const DynamicalSystem& sys);

}  // namespace cpm::io
