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

// Command layer behind the C API: JSON text in, report plus exit code out.
// Exit codes: 0 pass, 1 mathematical failure, 2 input error, 3 internal
// inconsistency (disagreeing certification routes).

#include <cstdint>
#include <optional>
#include <string>

#include "cpmult/io.hpp"

namespace cpm::cmd {

struct RunConfig {
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

struct Output {
  int exit_code = 0;
  io::Json report;
};

Output validate(const RunConfig& cfg, const std::string& system);
Output check_schur(const RunConfig& cfg, const std::string& system, const std::string& phi);
Output check_hs(const RunConfig& cfg, const std::string& system, const std::string& f);
Output crossed(const RunConfig& cfg, const std::string& system, const std::optional<std::string>& element);
Output approx(const RunConfig& cfg, const std::string& system, const std::string& family, const std::string& mode);
Output amenable(const RunConfig& cfg, const std::string& system, const std::string& t, const std::string& phi);

/// Plain-text rendering: objects as indented key/value lines, arrays of flat
/// objects as tables.
std::string render_text(const io::Json& report);
/// Two-space indented JSON with a trailing newline.
std::string render_json(const io::Json& report);

}  // namespace cpm::cmd
