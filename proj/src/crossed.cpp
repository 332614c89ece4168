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

#include "cpmult/crossed.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cpmult/error.hpp"
#include "cpmult/random.hpp"

namespace cpm {

namespace {

// Largest image residual over basis elements, i.e. max column norm.
double map_residual(const CMatrix& a, const CMatrix& b) {
  if (a.cols() == 0) return 0.0;
  return (a - b).colwise().norm().maxCoeff();
}

std::vector<ValidationItem> group_items(const std::vector<std::vector<int>>& mul,
                                        int* identity_out, std::vector<int>* inv_out) {
  std::vector<ValidationItem> items;
  const int n = static_cast<int>(mul.size());
  ValidationItem shape{"group.table", true, ""};
  if (n < 1) {
    shape = {"group.table", false, "group must have at least one element"};
  } else {
    for (int s = 0; s < n && shape.passed; ++s) {
      if (static_cast<int>(mul[s].size()) != n) {
        shape = {"group.table", false, "row " + std::to_string(s) + " has wrong length"};
        break;
      }
      for (int t = 0; t < n; ++t) {
        if (mul[s][t] < 0 || mul[s][t] >= n) {
          shape = {"group.table", false,
                   "entry (" + std::to_string(s) + "," + std::to_string(t) + ") out of range"};
          break;
        }
      }
    }
  }
  items.push_back(shape);
  if (!shape.passed) return items;

  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = mul[c][x] == x && mul[x][c] == x;
    if (ok) e = c;
  }
  items.push_back({"group.identity", e >= 0, e >= 0 ? "e = " + std::to_string(e) : "no two-sided identity"});
  if (e < 0) return items;

  std::vector<int> inv(static_cast<size_t>(n), -1);
  ValidationItem inverses{"group.inverses", true, ""};
  for (int x = 0; x < n; ++x) {
    int count = 0;
    for (int y = 0; y < n; ++y) {
      if (mul[x][y] == e && mul[y][x] == e) {
        inv[x] = y;
        ++count;
      }
    }
    if (count != 1) {
      inverses = {"group.inverses", false,
                  "element " + std::to_string(x) + " has " + std::to_string(count) + " inverses"};
      break;
    }
  }
  items.push_back(inverses);

  ValidationItem assoc{"group.associativity", true, ""};
  for (int a = 0; a < n && assoc.passed; ++a) {
    for (int b = 0; b < n && assoc.passed; ++b) {
      for (int c = 0; c < n; ++c) {
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          std::ostringstream os;
          os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
          assoc = {"group.associativity", false, os.str()};
          break;
        }
      }
    }
  }
  items.push_back(assoc);
  if (identity_out) *identity_out = e;
  if (inv_out) *inv_out = inv;
  return items;
}

bool all_passed(const std::vector<ValidationItem>& items) {
  return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.passed; });
}

std::string failures(const std::vector<ValidationItem>& items) {
  std::string out;
  for (const auto& i : items) {
    if (i.passed) continue;
    if (!out.empty()) out += "; ";
    out += i.name + ": " + i.detail;
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Homomorphism and trace items for an already well-formed group and action.
std::vector<ValidationItem> action_items(const FiniteGroup& g, const std::vector<CBMap>& maps,
                                         const TracialState* trace, double tol) {
  std::vector<ValidationItem> items;
  const int n = g.order();
  const CMatrix id = CMatrix::Identity(maps[0].source().dim(), maps[0].source().dim());
  const double r_e = map_residual(maps[g.identity()].action(), id);
  items.push_back({"action.identity", r_e <= tol, "residual " + fmt(r_e)});

  double worst = 0.0;
  int ws = 0, wt = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const double r = map_residual(maps[s].action() * maps[t].action(), maps[g.mul(s, t)].action());
      if (r > worst) {
        worst = r;
        ws = s;
        wt = t;
      }
    }
  }
  std::string detail = "max residual " + fmt(worst);
  if (worst > tol) detail += " at (s,t) = (" + std::to_string(ws) + "," + std::to_string(wt) + ")";
  items.push_back({"action.homomorphism", worst <= tol, detail});

  if (trace != nullptr) {
    const Algebra& alg = maps[0].source();
    double tw = 0.0;
    int wt_el = 0;
    for (int t = 0; t < n; ++t) {
      for (int j = 0; j < alg.dim(); ++j) {
        const AlgElement b = AlgElement::basis(alg, j);
        const double r = std::abs((*trace)(maps[t].apply(b)) - (*trace)(b));
        if (r > tw) {
          tw = r;
          wt_el = t;
        }
      }
    }
    std::string d = "max residual " + fmt(tw);
    if (tw > tol) d += " at t = " + std::to_string(wt_el);
    items.push_back({"trace.invariance", tw <= tol, d});
  }
  return items;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mul) : mul_(std::move(mul)) {
  const auto items = group_items(mul_, &identity_, &inv_);
  if (!all_passed(items)) throw Error(ErrorCode::InvalidSystem, failures(items));
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(std::vector<std::vector<int>>{{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidSystem, "cyclic group order must be positive");
  std::vector<std::vector<int>> mul(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) mul[s][t] = (s + t) % n;
  }
  return FiniteGroup(std::move(mul));
}

void FiniteGroup::check_element(int t) const {
  if (t < 0 || t >= order()) {
    throw Error(ErrorCode::BadElement, "group element " + std::to_string(t) + " out of range");
  }
}

Automorphism::Automorphism(Algebra alg, std::vector<int> perm, std::vector<CMatrix> unitaries)
    : alg_(std::move(alg)), perm_(std::move(perm)), unitaries_(std::move(unitaries)) {
  const int k = alg_.num_blocks();
  if (static_cast<int>(perm_.size()) != k || static_cast<int>(unitaries_.size()) != k) {
    throw Error(ErrorCode::InvalidSystem, "automorphism needs one perm entry and unitary per block");
  }
  std::vector<bool> seen(static_cast<size_t>(k), false);
  for (int b = 0; b < k; ++b) {
    const int p = perm_[b];
    if (p < 0 || p >= k || seen[p]) throw Error(ErrorCode::InvalidSystem, "block map is not a permutation");
    seen[p] = true;
    const int n = alg_.block_size(b);
    if (alg_.block_size(p) != n) {
      throw Error(ErrorCode::InvalidSystem, "block " + std::to_string(b) + " sent to a block of different size");
    }
    const CMatrix& u = unitaries_[b];
    if (u.rows() != n || u.cols() != n || !all_finite(u)) {
      throw Error(ErrorCode::InvalidSystem, "unitary for block " + std::to_string(b) + " has wrong shape");
    }
    const double r = (u.adjoint() * u - CMatrix::Identity(n, n)).norm();
    if (r > 1e-10) {
      throw Error(ErrorCode::InvalidSystem,
                  "matrix for block " + std::to_string(b) + " is not unitary (residual " + fmt(r) + ")");
    }
  }
}

Automorphism Automorphism::identity(const Algebra& alg) {
  std::vector<int> perm;
  std::vector<CMatrix> us;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    perm.push_back(k);
    us.push_back(CMatrix::Identity(alg.block_size(k), alg.block_size(k)));
  }
  return Automorphism(alg, perm, us);
}

AlgElement Automorphism::apply(const AlgElement& a) const {
  if (!(a.algebra() == alg_)) throw Error(ErrorCode::AlgebraMismatch, "automorphism argument");
  std::vector<CMatrix> out(static_cast<size_t>(alg_.num_blocks()));
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    out[perm_[k]] = unitaries_[k] * a.block(k) * unitaries_[k].adjoint();
  }
  return AlgElement(alg_, std::move(out));
}

CBMap Automorphism::as_map() const {
  return CBMap::from_function(alg_, alg_, [this](const AlgElement& a) { return apply(a); });
}

std::vector<ValidationItem> validate_system(const SystemSpec& spec, double tol) {
  int e = 0;
  std::vector<int> inv;
  std::vector<ValidationItem> items = group_items(spec.mul, &e, &inv);
  const bool group_ok = all_passed(items);

  std::optional<Algebra> alg;
  try {
    alg = Algebra(spec.blocks);
    items.push_back({"algebra.blocks", true, ""});
  } catch (const Error& err) {
    items.push_back({"algebra.blocks", false, err.what()});
  }

  const int n = static_cast<int>(spec.mul.size());
  const bool count_ok = static_cast<int>(spec.action.size()) == n;
  items.push_back({"action.count", count_ok,
                   std::to_string(spec.action.size()) + " automorphisms for " + std::to_string(n) +
                       " group elements"});

  std::vector<CBMap> maps;
  bool autos_ok = alg.has_value();
  if (alg) {
    for (size_t t = 0; t < spec.action.size(); ++t) {
      const std::string name = "action.automorphism[" + std::to_string(t) + "]";
      try {
        maps.push_back(Automorphism(*alg, spec.action[t].perm, spec.action[t].unitaries).as_map());
        items.push_back({name, true, ""});
      } catch (const Error& err) {
        items.push_back({name, false, err.what()});
        autos_ok = false;
      }
    }
  }

  std::optional<TracialState> trace;
  if (spec.trace_weights && alg) {
    try {
      trace = TracialState(*alg, *spec.trace_weights);
      items.push_back({"trace.state", true, ""});
    } catch (const Error& err) {
      items.push_back({"trace.state", false, err.what()});
    }
  }

  if (group_ok && count_ok && autos_ok) {
    const auto more = action_items(FiniteGroup(spec.mul), maps, trace ? &*trace : nullptr, tol);
    items.insert(items.end(), more.begin(), more.end());
  }
  return items;
}

DynamicalSystem::DynamicalSystem(FiniteGroup group, Algebra alg, std::vector<Automorphism> action,
                                 std::optional<TracialState> trace, double tol)
    : group_(std::move(group)), alg_(std::move(alg)), action_(std::move(action)), trace_(std::move(trace)) {
  if (static_cast<int>(action_.size()) != group_.order()) {
    throw Error(ErrorCode::InvalidSystem, "need one automorphism per group element");
  }
  for (const auto& a : action_) {
    if (!(a.algebra() == alg_)) throw Error(ErrorCode::InvalidSystem, "automorphism on a different algebra");
    maps_.push_back(a.as_map());
  }
  if (trace_ && !(trace_->algebra() == alg_)) {
    throw Error(ErrorCode::InvalidSystem, "trace on a different algebra");
  }
  const auto items = action_items(group_, maps_, trace_ ? &*trace_ : nullptr, tol);
  if (!all_passed(items)) throw Error(ErrorCode::InvalidSystem, failures(items));
}

AlgElement DynamicalSystem::act(int t, const AlgElement& a) const {
  group_.check_element(t);
  return action_[t].apply(a);
}

const TracialState& DynamicalSystem::trace() const {
  if (!trace_) throw Error(ErrorCode::NoTrace, "system has no tracial state");
  return *trace_;
}

bool operator==(const DynamicalSystem& a, const DynamicalSystem& b) {
  if (a.group_.table() != b.group_.table() || !(a.alg_ == b.alg_)) return false;
  for (int t = 0; t < a.order(); ++t) {
    if (a.action_[t].perm() != b.action_[t].perm()) return false;
    for (int k = 0; k < a.alg_.num_blocks(); ++k) {
      if (a.action_[t].unitaries()[k] != b.action_[t].unitaries()[k]) return false;
    }
  }
  if (a.trace_.has_value() != b.trace_.has_value()) return false;
  return !a.trace_ || a.trace_->weights() == b.trace_->weights();
}

DynamicalSystem build_system(const SystemSpec& spec, double tol) {
  const auto items = validate_system(spec, tol);
  if (!all_passed(items)) throw Error(ErrorCode::InvalidSystem, failures(items));
  const Algebra alg(spec.blocks);
  std::vector<Automorphism> action;
  for (const auto& a : spec.action) action.emplace_back(alg, a.perm, a.unitaries);
  std::optional<TracialState> trace;
  if (spec.trace_weights) trace = TracialState(alg, *spec.trace_weights);
  return DynamicalSystem(FiniteGroup(spec.mul), alg, std::move(action), std::move(trace), tol);
}

SystemSpec to_spec(const DynamicalSystem& sys) {
  SystemSpec s;
  s.mul = sys.group().table();
  s.blocks = sys.algebra().block_sizes();
  for (int t = 0; t < sys.order(); ++t) s.action.push_back({sys.alpha(t).perm(), sys.alpha(t).unitaries()});
  if (sys.has_trace()) s.trace_weights = sys.trace().weights();
  return s;
}

CrossedElement CrossedElement::zero(const DynamicalSystem& sys) {
  return CrossedElement{std::vector<AlgElement>(static_cast<size_t>(sys.order()),
                                                AlgElement::zero(sys.algebra()))};
}

CrossedElement CrossedElement::monomial(const DynamicalSystem& sys, const AlgElement& a, int t) {
  sys.group().check_element(t);
  CrossedElement x = zero(sys);
  x.coeffs[t] = a;
  return x;
}

CrossedElement CrossedElement::basis(const DynamicalSystem& sys, int index) {
  const int da = sys.algebra().dim();
  if (index < 0 || index >= sys.crossed_dim()) throw Error(ErrorCode::ShapeMismatch, "crossed basis index");
  return monomial(sys, AlgElement::basis(sys.algebra(), index % da), index / da);
}

CVector CrossedElement::coords() const {
  if (coeffs.empty()) return CVector();
  const int da = coeffs[0].algebra().dim();
  CVector c(static_cast<Eigen::Index>(coeffs.size()) * da);
  for (size_t t = 0; t < coeffs.size(); ++t) c.segment(static_cast<Eigen::Index>(t) * da, da) = coeffs[t].coords();
  return c;
}

CrossedElement CrossedElement::from_coords(const DynamicalSystem& sys, const CVector& c) {
  const int da = sys.algebra().dim();
  if (c.size() != sys.crossed_dim()) throw Error(ErrorCode::ShapeMismatch, "crossed coordinates");
  CrossedElement x;
  for (int t = 0; t < sys.order(); ++t) {
    x.coeffs.push_back(AlgElement::from_coords(sys.algebra(), c.segment(t * da, da)));
  }
  return x;
}

namespace {

void check_element_shape(const DynamicalSystem& sys, const CrossedElement& x) {
  if (static_cast<int>(x.coeffs.size()) != sys.order()) {
    throw Error(ErrorCode::ShapeMismatch, "crossed element needs one coefficient per group element");
  }
  for (const auto& a : x.coeffs) {
    if (!(a.algebra() == sys.algebra())) throw Error(ErrorCode::AlgebraMismatch, "crossed coefficient");
  }
}

void check_matrix_shape(const DynamicalSystem& sys, const CMatrix& x) {
  if (x.rows() != sys.rep_dim() || x.cols() != sys.rep_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix does not act on l2(G) (x) C^d");
  }
}

}  // namespace

CMatrix rep_pi(const DynamicalSystem& sys, const AlgElement& a) {
  const int n = sys.order(), d = sys.algebra().rep_dim();
  CMatrix m = CMatrix::Zero(n * d, n * d);
  for (int s = 0; s < n; ++s) m.block(s * d, s * d, d, d) = sys.act(sys.group().inv(s), a).embed();
  return m;
}

CMatrix rep_lambda(const DynamicalSystem& sys, int t) {
  sys.group().check_element(t);
  const int n = sys.order(), d = sys.algebra().rep_dim();
  CMatrix m = CMatrix::Zero(n * d, n * d);
  for (int s = 0; s < n; ++s) m.block(sys.group().mul(t, s) * d, s * d, d, d).setIdentity();
  return m;
}

CMatrix synth(const DynamicalSystem& sys, const CrossedElement& x) {
  check_element_shape(sys, x);
  const FiniteGroup& g = sys.group();
  const int n = sys.order(), d = sys.algebra().rep_dim();
  CMatrix m = CMatrix::Zero(n * d, n * d);
  // pi(a) lambda_t has the single block embed(alpha_{(ts)^-1}(a)) at (ts, s).
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      const int ts = g.mul(t, s);
      m.block(ts * d, s * d, d, d) += sys.act(g.inv(ts), x.coeffs[t]).embed();
    }
  }
  return m;
}

CrossedElement crossed_mul(const DynamicalSystem& sys, const CrossedElement& x,
                           const CrossedElement& y) {
  check_element_shape(sys, x);
  check_element_shape(sys, y);
  const FiniteGroup& g = sys.group();
  CrossedElement out = CrossedElement::zero(sys);
  for (int r = 0; r < sys.order(); ++r) {
    for (int s = 0; s < sys.order(); ++s) {
      out.coeffs[r] += x.coeffs[s] * sys.act(s, y.coeffs[g.mul(g.inv(s), r)]);
    }
  }
  return out;
}

CrossedElement crossed_adjoint(const DynamicalSystem& sys, const CrossedElement& x) {
  check_element_shape(sys, x);
  CrossedElement out;
  for (int t = 0; t < sys.order(); ++t) {
    out.coeffs.push_back(sys.act(t, x.coeffs[sys.group().inv(t)].adjoint()));
  }
  return out;
}

CrossedElement crossed_add(const CrossedElement& x, const CrossedElement& y, Complex c) {
  if (x.coeffs.size() != y.coeffs.size()) throw Error(ErrorCode::ShapeMismatch, "crossed_add");
  CrossedElement out = x;
  for (size_t t = 0; t < x.coeffs.size(); ++t) out.coeffs[t] += c * y.coeffs[t];
  return out;
}

AlgElement cond_exp(const DynamicalSystem& sys, const CMatrix& x, double tol) {
  check_matrix_shape(sys, x);
  const int d = sys.algebra().rep_dim();
  const double scale = tol * std::max(1.0, x.norm());
  std::optional<AlgElement> first;
  for (int t = 0; t < sys.order(); ++t) {
    AlgElement diag;
    try {
      diag = AlgElement::from_matrix(sys.algebra(), x.block(t * d, t * d, d, d), tol);
    } catch (const Error&) {
      throw Error(ErrorCode::NotInCrossedProduct,
                  "diagonal block " + std::to_string(t) + " is not in the algebra");
    }
    AlgElement a = sys.act(t, diag);
    if (!first) {
      first = std::move(a);
    } else if ((a.embed() - first->embed()).norm() > scale) {
      throw Error(ErrorCode::NotInCrossedProduct,
                  "diagonal blocks are not an alpha-orbit (block " + std::to_string(t) + ")");
    }
  }
  return *first;
}

AlgElement fourier_coeff(const DynamicalSystem& sys, const CMatrix& x, int t, double tol) {
  check_matrix_shape(sys, x);
  return cond_exp(sys, x * rep_lambda(sys, t).adjoint(), tol);
}

double crossed_membership_residual(const DynamicalSystem& sys, const CMatrix& x) {
  check_matrix_shape(sys, x);
  const FiniteGroup& g = sys.group();
  const int n = sys.order(), d = sys.algebra().rep_dim();
  const int e = g.identity();
  const double inf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<AlgElement> row_e;
  for (int r = 0; r < n; ++r) {
    const CMatrix blk = x.block(e * d, r * d, d, d);
    worst = std::max(worst, membership_residual(sys.algebra(), blk));
    row_e.push_back(AlgElement::from_matrix(sys.algebra(), blk, inf));
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int r = g.mul(q, g.inv(p));
      const CMatrix expect = sys.act(g.inv(p), row_e[r]).embed();
      worst = std::max(worst, (x.block(p * d, q * d, d, d) - expect).norm());
    }
  }
  return worst;
}

CrossedElement analyze(const DynamicalSystem& sys, const CMatrix& x, double tol) {
  const double r = crossed_membership_residual(sys, x);
  if (r > tol * std::max(1.0, x.norm())) {
    throw Error(ErrorCode::NotInCrossedProduct, "membership residual " + fmt(r));
  }
  CrossedElement out;
  for (int t = 0; t < sys.order(); ++t) out.coeffs.push_back(fourier_coeff(sys, x, t, tol));
  return out;
}

double covariance_residual(const DynamicalSystem& sys) {
  double worst = 0.0;
  for (int t = 0; t < sys.order(); ++t) {
    const CMatrix lam = rep_lambda(sys, t);
    for (int j = 0; j < sys.algebra().dim(); ++j) {
      const AlgElement a = AlgElement::basis(sys.algebra(), j);
      const CMatrix lhs = rep_pi(sys, sys.act(t, a));
      const CMatrix rhs = lam * rep_pi(sys, a) * lam.adjoint();
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

int synth_rank(const DynamicalSystem& sys) {
  const int big = sys.rep_dim();
  CMatrix cols(static_cast<Eigen::Index>(big) * big, sys.crossed_dim());
  for (int i = 0; i < sys.crossed_dim(); ++i) {
    const CMatrix m = synth(sys, CrossedElement::basis(sys, i));
    cols.col(i) = Eigen::Map<const CVector>(m.data(), m.size());
  }
  return numerical_rank(cols.adjoint() * cols, 1e-9);
}

CrossedElement random_crossed_element(Rng& rng, const DynamicalSystem& sys) {
  CrossedElement x;
  for (int t = 0; t < sys.order(); ++t) x.coeffs.push_back(random_element(rng, sys.algebra()));
  return x;
}

}  // namespace cpm
