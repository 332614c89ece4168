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

#include "cpmult/error.hpp"

namespace cpm {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotPositiveType: return "NotPositiveType";
    case ErrorCode::BadElement: return "BadElement";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::NotInCrossedProduct: return "NotInCrossedProduct";
    case ErrorCode::SystemMismatch: return "SystemMismatch";
    case ErrorCode::RoutesDisagree: return "RoutesDisagree";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NoTrace: return "NoTrace";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace cpm
