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

#include "cpmult/io.hpp"

#include <cmath>

#include "cpmult/error.hpp"

namespace cpm::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

double real_from(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(int_from(v, what));
  return out;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) parse_error(std::string("\"") + key + "\" must be an array");
  return a;
}

int element_index(const Json& j, const DynamicalSystem& sys) {
  const int t = int_from(j, "group element");
  sys.group().check_element(t);
  return t;
}

enum class Fill { Zero, Identity };

Fill fill_from(const Json& j) {
  if (!j.contains("fill")) return Fill::Zero;
  const Json& f = j["fill"];
  if (f == "zero") return Fill::Zero;
  if (f == "identity") return Fill::Identity;
  parse_error("\"fill\" must be \"zero\" or \"identity\"");
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(e.what());
  }
}

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  parse_error("complex value must be a number or [re, im]");
}

Json to_json(Complex z) {
  // -0.0 prints as "-0.0"; normalize so equal values serialize identically.
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  return Json::array({re, im});
}

CMatrix matrix_from(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) parse_error("matrix rows must be non-empty arrays");
  CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) parse_error("matrix rows have unequal lengths");
    for (size_t c = 0; c < cols; ++c) {
      const Complex z = complex_from(j[r][c]);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) parse_error("matrix entry is not finite");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
    }
  }
  return m;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Algebra algebra_from(const Json& j) {
  const std::vector<int> blocks = int_list(field(j, "blocks"), "block size");
  if (blocks.empty()) parse_error("algebra needs at least one block");
  for (int b : blocks) {
    if (b < 1) throw Error(ErrorCode::InvalidSystem, "block sizes must be positive");
  }
  return Algebra(blocks);
}

AlgElement element_from(const Json& j, const Algebra& alg) {
  const Json& blocks = array_field(j, "blocks");
  if (static_cast<int>(blocks.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "element has the wrong number of blocks");
  }
  std::vector<CMatrix> b;
  for (const auto& m : blocks) b.push_back(matrix_from(m));
  return AlgElement(alg, std::move(b));
}

Json to_json(const AlgElement& a) {
  Json blocks = Json::array();
  for (const auto& b : a.blocks()) blocks.push_back(to_json(b));
  return Json{{"blocks", std::move(blocks)}};
}

CBMap map_from(const Json& j, const Algebra& source, const Algebra& target) {
  if (j.is_object() && j.contains("kraus")) {
    std::vector<CMatrix> ks;
    for (const auto& k : array_field(j, "kraus")) ks.push_back(matrix_from(k));
    return CBMap::from_kraus(source, target, ks);
  }
  return CBMap(source, target, matrix_from(field(j, "action")));
}

Json to_json(const CBMap& m) { return Json{{"action", to_json(m.action())}}; }

SystemSpec system_spec_from(const Json& j) {
  SystemSpec s;
  const Json& g = field(j, "group");
  const int order = int_from(field(g, "order"), "group order");
  const Json& table = array_field(g, "mul_table");
  for (const auto& row : table) s.mul.push_back(int_list(row, "multiplication table entry"));
  if (static_cast<int>(s.mul.size()) != order) {
    throw Error(ErrorCode::InvalidSystem, "mul_table has " + std::to_string(s.mul.size()) + " rows, order is " +
                                              std::to_string(order));
  }
  const Algebra alg = algebra_from(field(j, "algebra"));
  s.blocks = alg.block_sizes();
  std::vector<int> id_perm;
  for (int k = 0; k < alg.num_blocks(); ++k) id_perm.push_back(k);
  auto identities = [&] {
    std::vector<CMatrix> u;
    for (int n : s.blocks) u.push_back(CMatrix::Identity(n, n));
    return u;
  };
  if (j.contains("action")) {
    for (const auto& a : array_field(j, "action")) {
      SystemSpec::Action act;
      act.perm = a.contains("perm") ? int_list(a["perm"], "perm entry") : id_perm;
      if (a.contains("unitaries")) {
        const Json& us = array_field(a, "unitaries");
        for (const auto& u : us) act.unitaries.push_back(matrix_from(u));
      } else {
        act.unitaries = identities();
      }
      s.action.push_back(std::move(act));
    }
  } else {
    for (int t = 0; t < order; ++t) s.action.push_back({id_perm, identities()});
  }
  if (j.contains("trace")) {
    const Json& w = array_field(field(j, "trace"), "weights");
    std::vector<double> weights;
    for (const auto& v : w) weights.push_back(real_from(v, "trace weight"));
    s.trace_weights = weights;
  }
  return s;
}

Json to_json(const SystemSpec& s) {
  Json actions = Json::array();
  for (const auto& a : s.action) {
    Json us = Json::array();
    for (const auto& u : a.unitaries) us.push_back(to_json(u));
    actions.push_back(Json{{"perm", a.perm}, {"unitaries", std::move(us)}});
  }
  Json out{{"group", {{"order", s.mul.size()}, {"mul_table", s.mul}}},
           {"algebra", {{"blocks", s.blocks}}},
           {"action", std::move(actions)}};
  if (s.trace_weights) out["trace"] = Json{{"weights", *s.trace_weights}};
  return out;
}

SchurMultiplierFn schur_multiplier_from(const Json& j, const Algebra& alg) {
  const int m = int_from(field(j, "points"), "points");
  if (m < 1) throw Error(ErrorCode::ShapeMismatch, "points must be positive");
  const Algebra md = Algebra::full(alg.rep_dim());
  const CBMap base = fill_from(j) == Fill::Identity ? CBMap::embedding(alg) : CBMap::zero(alg, md);
  std::vector<CBMap> values(static_cast<size_t>(m) * m, base);
  if (j.contains("values")) {
    for (const auto& v : array_field(j, "values")) {
      const int x = int_from(field(v, "x"), "x");
      const int y = int_from(field(v, "y"), "y");
      if (x < 0 || x >= m || y < 0 || y >= m) throw Error(ErrorCode::BadElement, "point index out of range");
      CBMap map;
      const bool into_a = v.contains("action") && matrix_from(v["action"]).rows() == alg.dim() && !(md == alg);
      if (into_a) {
        map = compose(CBMap::embedding(alg), map_from(v, alg, alg));
      } else {
        map = map_from(v, alg, md);
      }
      values[static_cast<size_t>(x) * m + y] = std::move(map);
    }
  }
  return SchurMultiplierFn(m, alg, std::move(values));
}

HSMultiplier hs_multiplier_from(const Json& j, const DynamicalSystem& sys) {
  const Algebra& alg = sys.algebra();
  const CBMap base = fill_from(j) == Fill::Identity ? CBMap::identity(alg) : CBMap::zero(alg, alg);
  std::vector<CBMap> values(static_cast<size_t>(sys.order()), base);
  if (j.contains("values")) {
    for (const auto& v : array_field(j, "values")) {
      const int t = element_index(field(v, "element"), sys);
      values[static_cast<size_t>(t)] = map_from(v, alg, alg);
    }
  }
  return HSMultiplier(sys, std::move(values));
}

Json to_json(const HSMultiplier& f) {
  Json values = Json::array();
  for (int t = 0; t < f.system().order(); ++t) {
    values.push_back(Json{{"element", t}, {"action", to_json(f.at(t).action())}});
  }
  return Json{{"fill", "zero"}, {"values", std::move(values)}};
}

std::vector<NuclearityMember> family_from(const Json& j, const DynamicalSystem& sys) {
  std::vector<NuclearityMember> out;
  int index = 0;
  for (const auto& m : array_field(j, "members")) {
    NuclearityMember mem{m.contains("name") ? m["name"].get<std::string>() : "member" + std::to_string(index),
                         hs_multiplier_from(field(m, "multiplier"), sys), std::nullopt};
    if (m.contains("rank_bound")) mem.rank_bound = int_from(m["rank_bound"], "rank_bound");
    out.push_back(std::move(mem));
    ++index;
  }
  return out;
}

AmenableData amenable_from(const Json& j, const DynamicalSystem& sys) {
  const Json& rows = array_field(j, "T");
  if (static_cast<int>(rows.size()) != sys.order()) {
    throw Error(ErrorCode::ShapeMismatch, "T needs one entry per group element");
  }
  AmenableData d{sys, {}};
  for (const auto& row : rows) {
    if (row.is_object()) {
      d.T.push_back(element_from(row, sys.algebra()));
      continue;
    }
    if (!row.is_array()) parse_error("T entries are per-block scalar lists or elements");
    std::vector<Complex> r;
    for (const auto& v : row) r.push_back(complex_from(v));
    if (static_cast<int>(r.size()) != sys.algebra().num_blocks()) {
      throw Error(ErrorCode::ShapeMismatch, "need one scalar per algebra block");
    }
    d.T.push_back(AlgElement::central(sys.algebra(), r));
  }
  return d;
}

CrossedElement crossed_element_from(const Json& j, const DynamicalSystem& sys) {
  CrossedElement x = CrossedElement::zero(sys);
  for (const auto& c : array_field(j, "coefficients")) {
    const int t = element_index(field(c, "element"), sys);
    x.coeffs[static_cast<size_t>(t)] = element_from(field(c, "value"), sys.algebra());
  }
  return x;
}

}  // namespace cpm::io
