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

// Exercises the shared library through its C header only.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpmult/cpmult.h"

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(CPMULT_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Report {
  cpm_report* r = nullptr;
  ~Report() { cpm_report_free(r); }
};

}  // namespace

TEST_CASE("status names and defaults", "[capi]") {
  CHECK(std::string(cpm_status_name(CPM_OK)) == "OK");
  CHECK(std::string(cpm_status_name(CPM_ERR_ROUTES_DISAGREE)) == "RoutesDisagree");
  const cpm_config c = cpm_default_config();
  CHECK(c.tol == 1e-9);
  CHECK(c.seed == 0);
  CHECK(std::string(cpm_version()).size() > 0);
}

TEST_CASE("system and multiplier handles", "[capi]") {
  cpm_system* sys = nullptr;
  REQUIRE(cpm_system_from_json(data("sys_a.json").c_str(), 1e-10, &sys) == CPM_OK);
  CHECK(cpm_system_order(sys) == 2);
  CHECK(cpm_system_algebra_dim(sys) == 4);
  CHECK(cpm_system_has_trace(sys) == 1);

  cpm_multiplier* f = nullptr;
  REQUIRE(cpm_multiplier_from_json(sys, data("hs_a_half.json").c_str(), &f) == CPM_OK);
  std::vector<double> buf(32);
  REQUIRE(cpm_multiplier_action(f, 1, buf.data(), buf.size()) == CPM_OK);
  CHECK(buf[0] == 0.5);
  CHECK(buf[1] == 0.0);
  CHECK(cpm_multiplier_action(f, 1, buf.data(), 3) == CPM_ERR_SHAPE);
  CHECK(cpm_multiplier_action(f, 7, buf.data(), buf.size()) == CPM_ERR_BAD_ELEMENT);

  cpm_verdict v{};
  const cpm_config cfg = cpm_default_config();
  REQUIRE(cpm_multiplier_certify(f, &cfg, &v) == CPM_OK);
  CHECK(v.verdict == 1);
  CHECK(v.route_positive_type == 1);
  CHECK(v.route_sampling == 1);
  CHECK(v.route_factorization == 1);
  CHECK(std::abs(v.cb_Fe - 1.0) < 1e-12);

  double res = -1.0;
  REQUIRE(cpm_multiplier_block_diag_residual(f, &cfg, &res) == CPM_OK);
  CHECK(res <= 1e-11);
  cpm_multiplier_free(f);

  cpm_multiplier* bad = nullptr;
  CHECK(cpm_multiplier_from_json(sys, data("hs_corrupt_shape.json").c_str(), &bad) == CPM_ERR_SHAPE);
  CHECK(std::string(cpm_last_error()).find("ShapeMismatch") != std::string::npos);
  CHECK(cpm_multiplier_from_json(sys, "{\"values\": ", &bad) == CPM_ERR_PARSE);
  CHECK(bad == nullptr);

  cpm_multiplier* id = nullptr;
  REQUIRE(cpm_multiplier_identity(sys, &id) == CPM_OK);
  REQUIRE(cpm_multiplier_certify(id, nullptr, &v) == CPM_OK);
  CHECK(v.verdict == 1);
  cpm_multiplier_free(id);
  cpm_system_free(sys);

  cpm_system* nt = nullptr;
  REQUIRE(cpm_system_from_json(data("sys_a_notrace.json").c_str(), 1e-10, &nt) == CPM_OK);
  REQUIRE(cpm_multiplier_identity(nt, &id) == CPM_OK);
  CHECK(cpm_multiplier_block_diag_residual(id, nullptr, &res) == CPM_ERR_NO_TRACE);
  cpm_multiplier_free(id);
  cpm_system_free(nt);

  CHECK(cpm_system_from_json(data("sys_bad_assoc.json").c_str(), 1e-10, &sys) == CPM_ERR_INVALID_SYSTEM);
  CHECK(cpm_system_from_json(nullptr, 1e-10, &sys) == CPM_ERR_ARGUMENT);
}

TEST_CASE("command entry points", "[capi]") {
  const cpm_config cfg = cpm_default_config();
  {
    Report r;
    REQUIRE(cpm_cmd_validate(&cfg, data("sys_b.json").c_str(), &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 0);
    CHECK(std::string(cpm_report_json(r.r)).find("\"valid\": true") != std::string::npos);
    CHECK(std::string(cpm_report_text(r.r)).find("valid: true") != std::string::npos);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_check_hs(&cfg, data("sys_t.json").c_str(), data("hs_transpose_t.json").c_str(), &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 1);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_check_schur(nullptr, data("sys_a.json").c_str(), data("schur_identity.json").c_str(), &r.r) ==
            CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 0);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_crossed(&cfg, data("sys_mixed.json").c_str(), nullptr, &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 0);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_approx(&cfg, data("sys_a.json").c_str(), data("family_a_scalar.json").c_str(), "haagerup",
                           &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 0);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_approx(&cfg, data("sys_a.json").c_str(), data("family_a_scalar.json").c_str(), "bogus", &r.r) ==
            CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 2);
  }
  {
    Report r;
    REQUIRE(cpm_cmd_amenable(&cfg, data("sys_b.json").c_str(), data("t_uniform_b.json").c_str(),
                             data("phi_identity_b.json").c_str(), &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 0);
  }
  {
    // Non-positive tolerance is an input error.
    Report r;
    const cpm_config zero{0.0, 0};
    REQUIRE(cpm_cmd_validate(&zero, data("sys_a.json").c_str(), &r.r) == CPM_OK);
    CHECK(cpm_report_exit_code(r.r) == 2);
  }
  CHECK(cpm_cmd_validate(&cfg, nullptr, nullptr) == CPM_ERR_ARGUMENT);
}
