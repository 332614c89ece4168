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

#include "cpmult/cpmult.h"

#include <cstring>
#include <memory>
#include <string>

#include "commands.hpp"
#include "cpmult/approx.hpp"
#include "cpmult/error.hpp"
#include "cpmult/io.hpp"

struct cpm_system {
  cpm::DynamicalSystem sys;
};
struct cpm_multiplier {
  cpm::HSMultiplier f;
};
struct cpm_report {
  int exit_code;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

cpm_status status_for(cpm::ErrorCode c) {
  using cpm::ErrorCode;
  switch (c) {
    case ErrorCode::Parse:
      return CPM_ERR_PARSE;
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NonSquare:
    case ErrorCode::AlgebraMismatch:
    case ErrorCode::SystemMismatch:
      return CPM_ERR_SHAPE;
    case ErrorCode::InvalidSystem:
      return CPM_ERR_INVALID_SYSTEM;
    case ErrorCode::BadElement:
      return CPM_ERR_BAD_ELEMENT;
    case ErrorCode::NotCP:
      return CPM_ERR_NOT_CP;
    case ErrorCode::NotUnital:
      return CPM_ERR_NOT_UNITAL;
    case ErrorCode::NotCentral:
      return CPM_ERR_NOT_CENTRAL;
    case ErrorCode::NotPositive:
      return CPM_ERR_NOT_POSITIVE;
    case ErrorCode::NoTrace:
      return CPM_ERR_NO_TRACE;
    case ErrorCode::PreconditionFailed:
      return CPM_ERR_PRECONDITION;
    case ErrorCode::RoutesDisagree:
      return CPM_ERR_ROUTES_DISAGREE;
    default:
      return CPM_ERR_MATH;
  }
}

template <class F>
cpm_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return CPM_OK;
  } catch (const cpm::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const cpm::io::Json::exception& e) {
    g_last_error = std::string("Parse: ") + e.what();
    return CPM_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CPM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CPM_ERR_INTERNAL;
  }
}

cpm_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return CPM_ERR_ARGUMENT;
}

cpm::cmd::RunConfig run_config(const cpm_config* cfg) {
  cpm::cmd::RunConfig rc;
  if (cfg) {
    rc.tol = cfg->tol;
    rc.seed = cfg->seed;
  }
  return rc;
}

cpm::CertifyOptions certify_options(const cpm_config* cfg) {
  cpm::CertifyOptions o;
  if (cfg) {
    o.tol = cfg->tol;
    o.seed = cfg->seed;
  }
  return o;
}

cpm_status emit(const cpm::cmd::Output& o, cpm_report** out) {
  *out = new cpm_report{o.exit_code, cpm::cmd::render_json(o.report), cpm::cmd::render_text(o.report)};
  return CPM_OK;
}

}  // namespace

extern "C" {

const char* cpm_version(void) { return "1.0.0"; }

const char* cpm_last_error(void) { return g_last_error.c_str(); }

const char* cpm_status_name(cpm_status status) {
  switch (status) {
    case CPM_OK:
      return "OK";
    case CPM_ERR_PARSE:
      return "Parse";
    case CPM_ERR_SHAPE:
      return "ShapeMismatch";
    case CPM_ERR_INVALID_SYSTEM:
      return "InvalidSystem";
    case CPM_ERR_BAD_ELEMENT:
      return "BadElement";
    case CPM_ERR_NOT_CP:
      return "NotCP";
    case CPM_ERR_NOT_UNITAL:
      return "NotUnital";
    case CPM_ERR_NOT_CENTRAL:
      return "NotCentral";
    case CPM_ERR_NOT_POSITIVE:
      return "NotPositive";
    case CPM_ERR_NO_TRACE:
      return "NoTrace";
    case CPM_ERR_PRECONDITION:
      return "PreconditionFailed";
    case CPM_ERR_ROUTES_DISAGREE:
      return "RoutesDisagree";
    case CPM_ERR_MATH:
      return "MathematicalFailure";
    case CPM_ERR_ARGUMENT:
      return "InvalidArgument";
    case CPM_ERR_INTERNAL:
      return "Internal";
  }
  return "Unknown";
}

cpm_config cpm_default_config(void) { return cpm_config{1e-9, 0}; }

cpm_status cpm_system_from_json(const char* json, double tol, cpm_system** out) {
  if (!json || !out) return null_argument("json/out");
  return guard([&] {
    auto sys = cpm::build_system(cpm::io::system_spec_from(cpm::io::parse(json)), tol);
    *out = new cpm_system{std::move(sys)};
  });
}

void cpm_system_free(cpm_system* sys) { delete sys; }

int cpm_system_order(const cpm_system* sys) { return sys ? sys->sys.order() : -1; }

int cpm_system_algebra_dim(const cpm_system* sys) { return sys ? sys->sys.algebra().dim() : -1; }

int cpm_system_has_trace(const cpm_system* sys) { return sys && sys->sys.has_trace() ? 1 : 0; }

cpm_status cpm_multiplier_from_json(const cpm_system* sys, const char* json, cpm_multiplier** out) {
  if (!sys || !json || !out) return null_argument("sys/json/out");
  return guard([&] { *out = new cpm_multiplier{cpm::io::hs_multiplier_from(cpm::io::parse(json), sys->sys)}; });
}

cpm_status cpm_multiplier_identity(const cpm_system* sys, cpm_multiplier** out) {
  if (!sys || !out) return null_argument("sys/out");
  return guard([&] { *out = new cpm_multiplier{cpm::HSMultiplier::identity(sys->sys)}; });
}

void cpm_multiplier_free(cpm_multiplier* f) { delete f; }

cpm_status cpm_multiplier_action(const cpm_multiplier* f, int t, double* out, size_t out_len) {
  if (!f || !out) return null_argument("f/out");
  return guard([&] {
    f->f.system().group().check_element(t);
    const cpm::CMatrix& m = f->f.at(t).action();
    const size_t need = 2 * static_cast<size_t>(m.rows() * m.cols());
    if (out_len < need) throw cpm::Error(cpm::ErrorCode::ShapeMismatch, "output buffer too small");
    size_t k = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out[k++] = m(r, c).real();
        out[k++] = m(r, c).imag();
      }
    }
  });
}

cpm_status cpm_multiplier_certify(const cpm_multiplier* f, const cpm_config* cfg, cpm_verdict* out) {
  if (!f || !out) return null_argument("f/out");
  return guard([&] {
    const cpm::CPVerdict v = cpm::certify_cp(f->f, certify_options(cfg));
    *out = cpm_verdict{v.verdict, v.route_positive_type, v.route_sampling, v.route_factorization,
                       v.dilation_dim, v.factorization_residual, v.cb_SF, v.cb_SNF, v.cb_Fe};
  });
}

cpm_status cpm_multiplier_block_diag_residual(const cpm_multiplier* f, const cpm_config* cfg, double* out) {
  if (!f || !out) return null_argument("f/out");
  return guard([&] { *out = cpm::check_block_diag(f->f, certify_options(cfg)); });
}

cpm_status cpm_cmd_validate(const cpm_config* cfg, const char* system, cpm_report** out) {
  if (!system || !out) return null_argument("system/out");
  return guard([&] { emit(cpm::cmd::validate(run_config(cfg), system), out); });
}

cpm_status cpm_cmd_check_schur(const cpm_config* cfg, const char* system, const char* phi, cpm_report** out) {
  if (!system || !phi || !out) return null_argument("system/phi/out");
  return guard([&] { emit(cpm::cmd::check_schur(run_config(cfg), system, phi), out); });
}

cpm_status cpm_cmd_check_hs(const cpm_config* cfg, const char* system, const char* f, cpm_report** out) {
  if (!system || !f || !out) return null_argument("system/f/out");
  return guard([&] { emit(cpm::cmd::check_hs(run_config(cfg), system, f), out); });
}

cpm_status cpm_cmd_crossed(const cpm_config* cfg, const char* system, const char* element, cpm_report** out) {
  if (!system || !out) return null_argument("system/out");
  return guard([&] {
    std::optional<std::string> el;
    if (element) el = element;
    emit(cpm::cmd::crossed(run_config(cfg), system, el), out);
  });
}

cpm_status cpm_cmd_approx(const cpm_config* cfg, const char* system, const char* family, const char* mode,
                          cpm_report** out) {
  if (!system || !family || !mode || !out) return null_argument("system/family/mode/out");
  return guard([&] { emit(cpm::cmd::approx(run_config(cfg), system, family, mode), out); });
}

cpm_status cpm_cmd_amenable(const cpm_config* cfg, const char* system, const char* t, const char* phi,
                            cpm_report** out) {
  if (!system || !t || !phi || !out) return null_argument("system/t/phi/out");
  return guard([&] { emit(cpm::cmd::amenable(run_config(cfg), system, t, phi), out); });
}

int cpm_report_exit_code(const cpm_report* r) { return r ? r->exit_code : 2; }

const char* cpm_report_json(const cpm_report* r) { return r ? r->json.c_str() : ""; }

const char* cpm_report_text(const cpm_report* r) { return r ? r->text.c_str() : ""; }

void cpm_report_free(cpm_report* r) { delete r; }

}  // extern "C"
