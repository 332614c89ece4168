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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cpmult/error.hpp"
#include "cpmult/random.hpp"

namespace cpm::cmd {

using io::Json;

namespace {

constexpr const char* kVersion = "1.0.0";

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NonSquare:
    case ErrorCode::BadElement:
    case ErrorCode::AlgebraMismatch:
    case ErrorCode::SystemMismatch:
    case ErrorCode::NotInAlgebra:
      return 2;
    case ErrorCode::RoutesDisagree:
      return 3;
    default:
      return 1;
  }
}

const char* status_for(int exit_code) {
  switch (exit_code) {
    case 0:
      return "pass";
    case 1:
      return "fail";
    case 2:
      return "input-error";
    default:
      return "inconsistent";
  }
}

Output run(const char* name, const RunConfig& cfg, const std::function<int(Json&)>& body) {
  Output out;
  out.report = Json{{"command", name}, {"version", kVersion}, {"tol", cfg.tol}, {"seed", cfg.seed}};
  Json result = Json::object();
  try {
    if (!(cfg.tol > 0.0)) throw Error(ErrorCode::Parse, "tolerance must be positive");
    out.exit_code = body(result);
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    result["error"] = Json{{"code", error_name(e.code())}, {"message", e.what()}};
  } catch (const Json::exception& e) {
    out.exit_code = 2;
    result["error"] = Json{{"code", "Parse"}, {"message", e.what()}};
  }
  out.report["status"] = status_for(out.exit_code);
  for (auto& [k, v] : result.items()) out.report[k] = std::move(v);
  return out;
}

DynamicalSystem load_system(const std::string& text, double tol) {
  return build_system(io::system_spec_from(io::parse(text)), tol);
}

double frob_scale(const std::vector<CBMap>& maps) {
  double s = 1.0;
  for (const auto& m : maps) s = std::max(s, m.action().norm());
  return s;
}

Json system_summary(const DynamicalSystem& sys) {
  return Json{{"order", sys.order()},
              {"blocks", sys.algebra().block_sizes()},
              {"dim_A", sys.algebra().dim()},
              {"crossed_dim", sys.crossed_dim()},
              {"rep_dim", sys.rep_dim()},
              {"has_trace", sys.has_trace()}};
}

Json opt_num(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json admissibility_json(const Admissibility& a) {
  return Json{{"cp", a.cp},
              {"unital", a.unital},
              {"tau_dominated", a.tau_dominated},
              {"unital_residual", a.unital_residual},
              {"tau_gap", a.tau_gap},
              {"failures", a.failures()}};
}

}  // namespace

Output validate(const RunConfig& cfg, const std::string& system) {
  return run("validate", cfg, [&](Json& r) {
    const SystemSpec spec = io::system_spec_from(io::parse(system));
    const auto items = validate_system(spec, cfg.tol);
    Json arr = Json::array();
    bool ok = true;
    for (const auto& it : items) {
      arr.push_back(Json{{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
      ok = ok && it.passed;
    }
    r["valid"] = ok;
    r["items"] = std::move(arr);
    return ok ? 0 : 1;
  });
}

Output check_schur(const RunConfig& cfg, const std::string& system, const std::string& phi_text) {
  return run("check-schur", cfg, [&](Json& r) {
    const DynamicalSystem sys = load_system(system, cfg.tol);
    const SchurMultiplierFn phi = io::schur_multiplier_from(io::parse(phi_text), sys.algebra());
    const bool r1 = is_positive_type(phi, cfg.tol);
    const SamplingResult samp = sample_positive_type(phi, 64, cfg.seed, cfg.tol);
    const StinespringData fact = stinespring_multi_positive_part(phi, cfg.tol);
    const bool r3 = fact.residual <= cfg.tol * frob_scale(phi.values());
    const bool agree = r1 == r3 && !(r1 && samp.violation_found);

    const AlgElement one = AlgElement::unit(sys.algebra());
    double diag = 0.0;
    double vsq = 0.0;
    for (int x = 0; x < phi.points(); ++x) {
      diag = std::max(diag, op_norm(phi.at(x, x).apply(one).embed()));
      if (x < static_cast<int>(fact.v_ops.size())) vsq = std::max(vsq, std::pow(op_norm(fact.v_ops[x]), 2));
    }
    const double s_norm = schur_norm_at_unit(phi);
    const bool norms_agree = !r1 || (std::abs(s_norm - diag) <= cfg.tol * std::max(1.0, diag) &&
                                     std::abs(vsq - diag) <= cfg.tol * std::max(1.0, diag) * 10);

    r["verdict"] = r1;
    r["routes"] = Json{{"positive_type", r1},
                       {"sampling_violation", samp.violation_found},
                       {"factorization", r3}};
    r["routes_agree"] = agree && norms_agree;
    r["samples"] = samp.samples;
    r["dilation_dim"] = fact.dilation_dim;
    r["factorization_residual"] = fact.residual;
    r["norms"] = r1 ? Json{{"S_phi_at_unit", s_norm}, {"max_phi_xx_unit", diag}, {"max_V_sq", vsq}}
                    : Json(nullptr);
    if (!agree || !norms_agree) return 3;
    return r1 ? 0 : 1;
  });
}

Output check_hs(const RunConfig& cfg, const std::string& system, const std::string& f_text) {
  return run("check-hs", cfg, [&](Json& r) {
    const DynamicalSystem sys = load_system(system, cfg.tol);
    const HSMultiplier f = io::hs_multiplier_from(io::parse(f_text), sys);
    CertifyOptions opt;
    opt.tol = cfg.tol;
    opt.seed = cfg.seed;
    const CPVerdict v = certify_cp(f, opt);
    r["verdict"] = v.verdict;
    r["routes"] = Json{{"positive_type", v.route_positive_type},
                       {"sampling", v.route_sampling},
                       {"factorization", v.route_factorization}};
    r["routes_agree"] = true;
    r["samples"] = v.samples;
    r["dilation_dim"] = v.dilation_dim;
    r["factorization_residual"] = v.factorization_residual;
    r["support"] = f.support(cfg.tol);
    r["norms"] = v.verdict ? Json{{"cb_SF", v.cb_SF}, {"cb_SNF", v.cb_SNF}, {"cb_Fe", v.cb_Fe}} : Json(nullptr);
    return v.verdict ? 0 : 1;
  });
}

Output crossed(const RunConfig& cfg, const std::string& system, const std::optional<std::string>& element) {
  return run("crossed", cfg, [&](Json& r) {
    const DynamicalSystem sys = load_system(system, cfg.tol);
    r["system"] = system_summary(sys);
    Json checks = Json::array();
    bool ok = true;
    auto add = [&](const char* name, double value, bool passed) {
      checks.push_back(Json{{"name", name}, {"value", value}, {"passed", passed}});
      ok = ok && passed;
    };
    add("covariance", covariance_residual(sys), covariance_residual(sys) <= cfg.tol);
    const int rank = synth_rank(sys);
    add("injectivity_rank", rank, rank == sys.crossed_dim());

    Rng rng(cfg.seed);
    double prod = 0.0, adj = 0.0, round = 0.0, fourier = 0.0, trace_prop = 0.0;
    for (int i = 0; i < 8; ++i) {
      const CrossedElement x = random_crossed_element(rng, sys);
      const CrossedElement y = random_crossed_element(rng, sys);
      const CMatrix sx = synth(sys, x);
      const CMatrix sy = synth(sys, y);
      const double scale = std::max(1.0, op_norm(sx) * op_norm(sy));
      prod = std::max(prod, op_norm(synth(sys, crossed_mul(sys, x, y)) - sx * sy) / scale);
      adj = std::max(adj, op_norm(synth(sys, crossed_adjoint(sys, x)) - sx.adjoint()) / scale);
      round = std::max(round, (analyze(sys, sx, cfg.tol).coords() - x.coords()).norm() / scale);
      CMatrix rebuilt = CMatrix::Zero(sys.rep_dim(), sys.rep_dim());
      for (int t = 0; t < sys.order(); ++t) {
        rebuilt += rep_pi(sys, fourier_coeff(sys, sx, t, cfg.tol)) * rep_lambda(sys, t);
      }
      fourier = std::max(fourier, op_norm(rebuilt - sx) / scale);
      if (sys.has_trace()) {
        trace_prop = std::max(trace_prop, std::abs(induced_trace(sys, sx * sy) - induced_trace(sys, sy * sx)) / scale);
      }
    }
    add("product_homomorphism", prod, prod <= cfg.tol);
    add("adjoint", adj, adj <= cfg.tol);
    add("coefficient_round_trip", round, round <= cfg.tol);
    add("fourier_reconstruction", fourier, fourier <= cfg.tol);
    const CMatrix id = CMatrix::Identity(sys.rep_dim(), sys.rep_dim());
    const double e1 = op_norm((cond_exp(sys, id) - AlgElement::unit(sys.algebra())).embed());
    add("expectation_unit", e1, e1 <= cfg.tol);
    if (sys.has_trace()) add("induced_trace_property", trace_prop, trace_prop <= cfg.tol);
    r["samples"] = 8;
    r["checks"] = std::move(checks);

    if (element) {
      const CrossedElement x = io::crossed_element_from(io::parse(*element), sys);
      const CMatrix m = synth(sys, x);
      Json coeffs = Json::array();
      for (int t = 0; t < sys.order(); ++t) {
        coeffs.push_back(Json{{"element", t}, {"value", io::to_json(fourier_coeff(sys, m, t, cfg.tol))}});
      }
      r["element"] = Json{{"matrix", io::to_json(m)},
                          {"membership_residual", crossed_membership_residual(sys, m)},
                          {"fourier_coefficients", std::move(coeffs)}};
    }
    return ok ? 0 : 1;
  });
}

Output approx(const RunConfig& cfg, const std::string& system, const std::string& family, const std::string& mode) {
  const std::string name = "approx " + mode;
  return run(name.c_str(), cfg, [&](Json& r) {
    if (mode != "haagerup" && mode != "nuclearity") {
      throw Error(ErrorCode::Parse, "mode must be haagerup or nuclearity");
    }
    const DynamicalSystem sys = load_system(system, cfg.tol);
    const auto members = io::family_from(io::parse(family), sys);
    CertifyOptions opt;
    opt.tol = cfg.tol;
    opt.seed = cfg.seed;
    r["mode"] = mode;
    r["system"] = system_summary(sys);
    if (mode == "haagerup") {
      std::vector<FamilyMember> fam;
      for (const auto& m : members) fam.push_back({m.name, m.f});
      const HaagerupReport rep = haagerup_report(sys, fam, opt);
      Json rows = Json::array();
      for (size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        Json j{{"name", row.name}, {"included", row.included}};
        j.update(admissibility_json(row.admissibility));
        j.update(Json{{"dev_algebra", opt_num(row.dev_algebra)},
               {"dev_crossed", opt_num(row.dev_crossed)},
               {"norm_T_SF", opt_num(row.norm_T_SF)},
               {"norms_T_Ft", row.norms_T_Ft}});
        if (row.included) {
          const ScalarPd pd = scalar_pd_extract(fam[i].f, opt);
          Json phi = Json::array();
          for (const auto& v : pd.phi) phi.push_back(io::to_json(v));
          j["block_diag_residual"] = check_block_diag(fam[i].f, opt);
          j["scalar_phi"] = std::move(phi);
          j["scalar_pd_min_eig"] = pd.min_eig;
          j["scalar_pd"] = pd.verdict;
        }
        rows.push_back(std::move(j));
      }
      r["notes"] = Json{{"compactness", rep.compactness_note}, {"vanishing", rep.vanishing_note}};
      r["rows"] = std::move(rows);
      r["all_admissible"] = rep.all_admissible();
      return rep.all_admissible() ? 0 : 1;
    }
    const NuclearityReport rep = nuclearity_report(sys, members, opt);
    Json rows = Json::array();
    bool ok = true;
    for (const auto& row : rep.rows) {
      const bool pass = row.cp && row.norm_ok && row.coupling_ok && row.rank_within_bound.value_or(true);
      ok = ok && pass;
      rows.push_back(Json{{"name", row.name},
                          {"passed", pass},
                          {"cp", row.cp},
                          {"cp_error", row.cp_error},
                          {"support_size", row.support_size},
                          {"fe_norm", row.fe_norm},
                          {"norm_ok", row.norm_ok},
                          {"ranks", row.ranks},
                          {"rank_within_bound", row.rank_within_bound ? Json(*row.rank_within_bound) : Json(nullptr)},
                          {"dev_algebra", row.dev_algebra},
                          {"dev_crossed", row.dev_crossed},
                          {"coupling_factor", row.coupling_factor},
                          {"coupling_ok", row.coupling_ok}});
    }
    r["notes"] = Json{{"rank", rep.rank_note}, {"summation", rep.summation_note}, {"test_set", rep.test_set_note}};
    r["rows"] = std::move(rows);
    return ok ? 0 : 1;
  });
}

Output amenable(const RunConfig& cfg, const std::string& system, const std::string& t, const std::string& phi_text) {
  return run("amenable", cfg, [&](Json& r) {
    const DynamicalSystem sys = load_system(system, cfg.tol);
    const AmenableData data = io::amenable_from(io::parse(t), sys);
    const CBMap phi = io::map_from(io::parse(phi_text), sys.algebra(), sys.algebra());
    const AmenableCheck chk = check_amenable(data, std::max(cfg.tol, 1e-10));
    r["sum_residual"] = chk.sum_residual;
    r["shift_defects"] = chk.shift_defects;
    r["summation_note"] = "T is normalized by summing T(t)^2 over t in G";
    if (chk.sum_residual > cfg.tol) {
      r["error"] = Json{{"code", "PreconditionFailed"}, {"message", "sum_t T(t)^2 differs from 1_A"}};
      return 1;
    }
    const HSMultiplier f = build_amenable_multiplier(data, phi, cfg.tol);
    CertifyOptions opt;
    opt.tol = cfg.tol;
    opt.seed = cfg.seed;
    const CPVerdict v = certify_cp(f, opt);
    r["cp_verdict"] = v.verdict;
    r["fe_unit_norm"] = op_norm(f.at(sys.group().identity()).apply(AlgElement::unit(sys.algebra())).embed());
    r["multiplier"] = io::to_json(f);
    return v.verdict ? 0 : 1;
  });
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

// Scalars and arrays nesting only scalars.
bool is_leaf(const Json& j) { return is_scalar(j) || (j.is_array() && std::all_of(j.begin(), j.end(), is_leaf)); }

bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  for (const auto& [k, v] : j.items()) {
    if (!is_leaf(v)) return false;
  }
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
    return buf;
  }
  if (j.is_array()) {
    // [re, im] complex pairs and short scalar lists.
    std::string s = "[";
    for (size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  if (j.is_object()) return j.dump();
  return j.dump();
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  for (const auto& [k, v] : j.items()) {
    if (is_leaf(v)) {
      os << pad << k << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), is_flat_object)) {
      std::vector<std::string> cols;
      for (const auto& row : v) {
        for (const auto& [c, cv] : row.items()) {
          if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        }
      }
      std::vector<std::vector<std::string>> cells;
      std::vector<size_t> width;
      for (const auto& c : cols) width.push_back(c.size());
      for (const auto& row : v) {
        std::vector<std::string> line;
        for (size_t c = 0; c < cols.size(); ++c) {
          line.push_back(row.contains(cols[c]) ? scalar_text(row[cols[c]]) : "-");
          width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
      }
      os << pad << k << ":\n";
      auto emit = [&](const std::vector<std::string>& line) {
        os << pad << "  ";
        for (size_t c = 0; c < line.size(); ++c) {
          os << line[c];
          if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
        }
        os << "\n";
      };
      emit(cols);
      for (const auto& line : cells) emit(line);
    } else if (v.is_object()) {
      os << pad << k << ":\n";
      render(v, indent + 2, os);
    } else {
      // Nested arrays (matrices, rows with structure): compact JSON.
      os << pad << k << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace cpm::cmd
