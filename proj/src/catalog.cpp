#include "leibniz/catalog.hpp"

#include <functional>
#include <sstream>

#include "leibniz/brackets.hpp"
#include "leibniz/structure_io.hpp"

namespace leibniz {

const char* to_string(EntryKind k) {
  switch (k) {
  case EntryKind::leibniz_bracket: return "leibniz_bracket";
  case EntryKind::metriplectic_pair: return "metriplectic_pair";
  case EntryKind::almost_leibniz: return "almost_leibniz";
  case EntryKind::algebroid: return "algebroid";
  case EntryKind::metriplectic_algebroid: return "metriplectic_algebroid";
  }
  return "?";
}

EntryKind entry_kind_from_string(const std::string& s) {
  for (EntryKind k : {EntryKind::leibniz_bracket, EntryKind::metriplectic_pair, EntryKind::almost_leibniz,
                      EntryKind::algebroid, EntryKind::metriplectic_algebroid})
    if (s == to_string(k)) return k;
  throw ParseError("unknown entry kind '" + s + "'");
}

OdeSystem CatalogEntry::derive() const {
  switch (kind) {
  case EntryKind::leibniz_bracket: return rhs_from_bracket(*tensor, hamiltonians.at(0));
  case EntryKind::metriplectic_pair: return rhs_from_bracket(pair->sum(), hamiltonians.at(0));
  case EntryKind::almost_leibniz: return rhs_from_pair(*pair, hamiltonians.at(0), hamiltonians.at(1));
  case EntryKind::algebroid: return rhs_from_algebroid(algebroids.at(0), hamiltonians.at(0));
  case EntryKind::metriplectic_algebroid:
    return rhs_metriplectic_algebroid(algebroids.at(0), algebroids.at(1), hamiltonians.at(0), hamiltonians.at(1));
  }
  throw Error("unreachable");
}

namespace {

using Rows = std::vector<std::vector<std::string>>;

const std::vector<std::string> kX = {"x1", "x2", "x3"};
const std::vector<std::string> kXi = {"xi1", "xi2", "xi3"};

std::vector<Poly> parse_all(const Chart& c, const std::vector<std::string>& texts) {
  std::vector<Poly> out;
  for (const auto& t : texts) out.push_back(parse_poly(c, t));
  return out;
}

// Algebroid from its Lambda blocks: xi-xi block as printed, left/right anchors as n x m rows.
AlgebroidStructure algebroid_from_blocks(const Chart& base, const Rows& xixi, const Rows& rho1, const Rows& rho2) {
  AlgebroidStructure proto(base, 3);
  const Chart& dual = proto.dual_chart();
  TensorField2 t = TensorField2::zero(dual);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) t.set(3 + a, 3 + b, parse_poly(dual, xixi[a][b]));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a) {
      t.set(3 + a, i, parse_poly(dual, rho1[i][a]));
      t.set(i, 3 + a, -parse_poly(dual, rho2[i][a]));
    }
  return structure_from_lambda(make_dual_chart_tensor(t, 3, 3));
}

const std::string kHalfNorm = "1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2";

const Rows kRigidP = {{"0", "x3", "-x2"}, {"-x3", "0", "x1"}, {"x2", "-x1", "0"}};
const Rows kRigidC1 = {{"0", "xi3*x3", "-xi2*x2"}, {"-xi3*x3", "0", "xi1*x1"}, {"xi2*x2", "-xi1*x1", "0"}};
const std::string kRigidH1 = "a1*x1*xi1 + a2*x2*xi2 + a3*x3*xi3";

const std::vector<std::string> kRevisedRhs = {
    "(a3 - a2)*x2*x3 + a2*(a1 - a2)*x1*x2^2 + a3*(a1 - a3)*x1*x3^2",
    "(a1 - a3)*x1*x3 + a3*(a2 - a3)*x2*x3^2 + a1*(a2 - a1)*x2*x1^2",
    "(a2 - a1)*x1*x2 + a1*(a3 - a1)*x3*x1^2 + a2*(a3 - a2)*x3*x2^2",
};

struct Recipe {
  EntrySummary summary;
  std::function<CatalogEntry()> build; // symbolic build: every parameter a symbol
  std::function<void(const ParamValues&)> check;
};

std::vector<std::string> param_names(const std::vector<ParamSpec>& specs) {
  std::vector<std::string> out;
  for (const auto& s : specs) out.push_back(s.name);
  return out;
}

std::vector<ParamSpec> beltrami_params() {
  return {{"s1", 1, "s_i in {-1, 1}"},
          {"s2", 1, "s_i in {-1, 1}"},
          {"s3", 1, "s_i in {-1, 1}"},
          {"gamma1", 1, "gamma1 + gamma2 + gamma3 = 0"},
          {"gamma2", 1, "gamma1 + gamma2 + gamma3 = 0"},
          {"gamma3", -2, "gamma1 + gamma2 + gamma3 = 0"}};
}

std::vector<ParamSpec> rigid_params() {
  return {{"a1", Rational(3, 5), "a1 > a2 > a3 > 0"},
          {"a2", Rational(2, 5), "a1 > a2 > a3 > 0"},
          {"a3", Rational(1, 5), "a1 > a2 > a3 > 0"}};
}

void check_beltrami(const ParamValues& v) {
  for (const char* s : {"s1", "s2", "s3"}) {
    auto it = v.find(s);
    if (it != v.end() && it->second != 1 && it->second != -1)
      throw ParameterError(std::string(s) + " must be 1 or -1, got " + to_string(it->second));
  }
  if (v.count("gamma1") && v.count("gamma2") && v.count("gamma3")) {
    Rational sum = v.at("gamma1") + v.at("gamma2") + v.at("gamma3");
    if (sum != 0) throw ParameterError("gamma1 + gamma2 + gamma3 must be 0, got " + to_string(sum));
  }
}

void check_rigid(const ParamValues& v) {
  const std::vector<std::string> names = {"a1", "a2", "a3"};
  std::vector<std::pair<std::string, Rational>> bound;
  for (const auto& n : names)
    if (auto it = v.find(n); it != v.end()) {
      if (it->second <= 0) throw ParameterError(n + " must be positive (a1 > a2 > a3 > 0), got " + to_string(it->second));
      bound.emplace_back(n, it->second);
    }
  for (std::size_t k = 1; k < bound.size(); ++k)
    if (!(bound[k - 1].second > bound[k].second))
      throw ParameterError("parameters must satisfy a1 > a2 > a3 > 0, but " + bound[k - 1].first + " = " +
                           to_string(bound[k - 1].second) + " and " + bound[k].first + " = " +
                           to_string(bound[k].second));
}

void no_check(const ParamValues&) {}

CatalogEntry gradient_beltrami() {
  Chart c(kX, {}, param_names(beltrami_params()));
  CatalogEntry e{.name = "gradient-beltrami", .kind = EntryKind::leibniz_bracket, .chart = c};
  e.tensor = TensorField2::parse(c, {{"s1*gamma1", "0", "0"}, {"0", "s2*gamma2", "0"}, {"0", "0", "s3*gamma3"}});
  e.hamiltonians = {parse_poly(c, "x1*x2*x3")};
  e.printed_rhs = parse_all(c, {"s1*gamma1*x2*x3", "s2*gamma2*x1*x3", "s3*gamma3*x1*x2"});
  e.x0 = {1, 1, 1};
  e.observables = {{"h", e.hamiltonians[0]}};
  return e;
}

CatalogEntry revised_rigid_body() {
  Chart c(kX, {}, param_names(rigid_params()));
  CatalogEntry e{.name = "revised-rigid-body", .kind = EntryKind::metriplectic_pair, .chart = c};
  // Antisymmetric part oriented so that [x^i, h] = P^{ij} d_j h is x' = x cross grad h
  // with the sign of the printed revised system.
  TensorField2 p = TensorField2::parse(c, kRigidP).transpose();
  TensorField2 g = TensorField2::parse(c, {{"-a2^2*x2^2 - a3^2*x3^2", "a1*a2*x1*x2", "a1*a3*x1*x3"},
                                           {"a1*a2*x1*x2", "-a1^2*x1^2 - a3^2*x3^2", "a2*a3*x2*x3"},
                                           {"a1*a3*x1*x3", "a2*a3*x2*x3", "-a1^2*x1^2 - a2^2*x2^2"}});
  e.pair = MetriplecticPair(p, g);
  e.hamiltonians = {parse_poly(c, "1/2*(a1 + 1)*x1^2 + 1/2*(a2 + 1)*x2^2 + 1/2*(a3 + 1)*x3^2")};
  e.printed_rhs = parse_all(c, kRevisedRhs);
  e.x0 = {1, 0.5, 0.2};
  e.observables = {{"|x|^2/2", parse_poly(c, kHalfNorm)}, {"h", e.hamiltonians[0]}};
  e.notes.push_back("antisymmetric part is the transpose of the printed matrix; the printed orientation "
                    "negates the conservative part of the reference system");
  return e;
}

CatalogEntry almost_leibniz_ex2() {
  Chart c(kX);
  CatalogEntry e{.name = "almost-leibniz-ex2", .kind = EntryKind::almost_leibniz, .chart = c};
  e.pair = MetriplecticPair(TensorField2::parse(c, {{"0", "1", "0"}, {"-1", "0", "x1"}, {"0", "-x1", "0"}}),
                            TensorField2::parse(c, {{"0", "0", "0"}, {"0", "-x3^2", "0"}, {"0", "0", "-x2^2"}}));
  e.hamiltonians = parse_all(c, {"1/2*x2^2 + 1/2*x3^2", "1/2*x1^2 + x3"});
  e.printed_rhs = parse_all(c, {"x2", "x1*x3", "-x1*x2 - x2^2"});
  e.x0 = {0.5, 0.5, 0.5};
  e.observables = {{"h1", e.hamiltonians[0]}, {"h2", e.hamiltonians[1]}};
  return e;
}

CatalogEntry almost_leibniz_ex3() {
  Chart c(kX);
  CatalogEntry e{.name = "almost-leibniz-ex3", .kind = EntryKind::almost_leibniz, .chart = c};
  e.pair = MetriplecticPair(TensorField2::parse(c, {{"0", "-x3", "x2"}, {"x3", "0", "0"}, {"-x2", "0", "0"}}),
                            TensorField2::parse(c, {{"-x3", "0", "0"}, {"0", "0", "0"}, {"0", "0", "-x1"}}));
  e.hamiltonians = parse_all(c, {"1/2*x1^2 + x3", "1/2*x2^2 + 1/2*x3^2"});
  e.printed_rhs = parse_all(c, {"x2", "x1*x3", "-x1*x2 - x1*x3"});
  e.x0 = {0.5, 0.5, 0.5};
  e.observables = {{"h1", e.hamiltonians[0]}, {"h2", e.hamiltonians[1]}};
  return e;
}

CatalogEntry maxwell_bloch() {
  Chart base(kX);
  AlgebroidStructure a = algebroid_from_blocks(
      base, {{"0", "-xi3*x3", "xi2*x2"}, {"xi3*x3", "0", "-xi1*x1"}, {"-xi2*x2", "xi1*x1", "0"}},
      {{"0", "-x3", "x2"}, {"x3", "0", "0"}, {"-x2", "0", "0"}},
      {{"0", "-1", "0"}, {"1", "0", "-x1"}, {"0", "x1", "0"}});
  const Chart& c = a.dual_chart();
  CatalogEntry e{.name = "maxwell-bloch-algebroid", .kind = EntryKind::algebroid, .chart = c};
  e.algebroids = {a};
  e.hamiltonians = {parse_poly(c, "x2*xi2 + x3*xi3")};
  e.printed_rhs = parse_all(c, {"x2", "x1*x3", "-x1*x2", "x3*(x2 - 1)*xi2 - x2*x3*xi3", "-x3*x1*xi1", "x1*x2*xi1"});
  e.x0 = {0.5, 0.5, 0.5, 1, 0.5, 0.2};
  e.observables = {{"h", e.hamiltonians[0]},
                   {"h1", parse_poly(c, "1/2*x2^2 + 1/2*x3^2")},
                   {"h2", parse_poly(c, "1/2*x1^2 + x3")}};
  return e;
}

AlgebroidStructure rigid_lambda1(const Chart& base) { return algebroid_from_blocks(base, kRigidC1, kRigidP, kRigidP); }

CatalogEntry rigid_body_algebroid() {
  Chart base(kX, {}, param_names(rigid_params()));
  AlgebroidStructure a = rigid_lambda1(base);
  const Chart& c = a.dual_chart();
  CatalogEntry e{.name = "rigid-body-algebroid", .kind = EntryKind::algebroid, .chart = c};
  e.algebroids = {a};
  e.hamiltonians = {parse_poly(c, kRigidH1)};
  e.printed_rhs = parse_all(c, {"(a3 - a2)*x2*x3", "(a1 - a3)*x1*x3", "(a2 - a1)*x1*x2",
                                "a2*xi3*x2*x3 - a3*xi2*x2*x3 - a2*xi2*x3 + a3*xi3*x2",
                                "a3*xi1*x1*x3 - a1*xi3*x1*x3 - a3*xi3*x1 + a1*xi1*x3",
                                "a1*xi2*x1*x2 - a2*xi1*x1*x2 - a1*xi1*x2 + a2*xi2*x1"});
  e.x0 = {1, 0.5, 0.2, 0.5, 0.5, 0.5};
  e.observables = {{"|x|^2/2", parse_poly(c, kHalfNorm)},
                   {"energy", parse_poly(c, "1/2*a1*x1^2 + 1/2*a2*x2^2 + 1/2*a3*x3^2")},
                   {"h1", e.hamiltonians[0]}};
  return e;
}

CatalogEntry rigid_body_metriplectic_algebroid() {
  Chart base(kX, {}, param_names(rigid_params()));
  AlgebroidStructure a1 = rigid_lambda1(base);
  const Chart& c = a1.dual_chart();
  Poly h1 = parse_poly(c, kRigidH1);
  Poly h2 = parse_poly(c, "x1*xi1 + x2*xi2 + x3*xi3");
  DualTensorConstruction built = prop4_construct_dual_tensor(h1);
  const AlgebroidStructure& a2 = built.structure;

  CatalogEntry e{.name = "rigid-body-metriplectic-algebroid", .kind = EntryKind::metriplectic_algebroid, .chart = c};
  e.algebroids = {a1, a2};
  e.hamiltonians = {h1, h2};
  std::vector<std::string> rhs = kRevisedRhs;
  rhs.push_back("(a2*(a1 - a2)*x1*x2 - a3*x2*x3 - a2*x3)*xi2 + (a3*(a1 - a3)*x1*x3 + a2*x2*x3 + a3*x2)*xi3");
  rhs.push_back("(a1*(a2 - a1)*x1*x2 + a3*x1*x3 + a1*x3)*xi1 + (a3*(a2 - a3)*x2*x3 - a1*x1*x3 - a3*x1)*xi3");
  rhs.push_back("(a2*(a3 - a2)*x2*x3 + a1*x1*x2 + a2*x1)*xi2 + (a1*(a3 - a1)*x1*x3 - a2*x1*x2 - a1*x2)*xi1");
  e.printed_rhs = parse_all(c, rhs);
  e.base_part_matches = "revised-rigid-body";

  // Printed second structure: diagonal xi-xi block V_a/x^a xi_a - W_a and the anchor matrix.
  const std::vector<std::string> v = {"a2^2*x2^2 + a3^2*x3^2", "a1^2*x1^2 + a3^2*x3^2", "a1^2*x1^2 + a2^2*x2^2"};
  const std::vector<std::string> w = {"a2^2*x2*xi2 + a3^2*x3*xi3", "a1^2*x1*xi1 + a3^2*x3*xi3",
                                      "a1^2*x1*xi1 + a2^2*x2*xi2"};
  const Rows rho = {{"-(" + v[0] + ")", "a1*a2*x1*x2", "a1*a3*x1*x3"},
                    {"a1*a2*x1*x2", "-(" + v[1] + ")", "a2*a3*x2*x3"},
                    {"a1*a3*x1*x3", "a2*a3*x2*x3", "-(" + v[2] + ")"}};
  TensorField2 lambda2 = lambda_from_structure(a2).tensor;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      std::string printed = "0";
      if (a == b)
        printed = "(" + v[a] + ")*x" + std::to_string(a + 1) + "^-1*xi" + std::to_string(a + 1) + " - (" + w[a] + ")";
      e.structure_refs.push_back({"C2[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) + "]",
                                  lambda2.at(3 + a, 3 + b), parse_poly(c, printed)});
    }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a) {
      std::string idx = "[" + std::to_string(i + 1) + "][" + std::to_string(a + 1) + "]";
      e.structure_refs.push_back({"rho2 left anchor" + idx, a2.rho1(i, a), parse_poly(base, rho[i][a])});
      e.structure_refs.push_back({"rho2 right anchor (negated)" + idx, -a2.rho2(i, a), parse_poly(base, rho[i][a])});
    }

  e.x0 = {1, 0.5, 0.2, 0.5, 0.5, 0.5};
  e.observables = {{"|x|^2/2", parse_poly(c, kHalfNorm)}, {"h1", h1}, {"h2", h2}};
  e.notes.push_back("second structure built by the dual-tensor construction from h1");
  return e;
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> r = {
      {{"gradient-beltrami", EntryKind::leibniz_bracket,
        "pseudometric bracket of the constant tensor diag(s_i gamma_i) with h = x1 x2 x3", "x1 x2 x3",
        beltrami_params()},
       gradient_beltrami, check_beltrami},
      {{"revised-rigid-body", EntryKind::metriplectic_pair,
        "rigid body Poisson tensor plus symmetric dissipation tensor; |x|^2/2 decays", "x1 x2 x3", rigid_params()},
       revised_rigid_body, check_rigid},
      {{"almost-leibniz-ex2", EntryKind::almost_leibniz,
        "almost Leibniz pair with two hamiltonians; the flow is the Maxwell-Bloch system", "x1 x2 x3", {}},
       almost_leibniz_ex2, no_check},
      {{"almost-leibniz-ex3", EntryKind::almost_leibniz,
        "almost Leibniz pair with two hamiltonians and a diagonal symmetric part", "x1 x2 x3", {}},
       almost_leibniz_ex3, no_check},
      {{"maxwell-bloch-algebroid", EntryKind::algebroid,
        "Leibniz algebroid on R^3 x R^3 whose base flow is the Maxwell-Bloch system", "x1 x2 x3 | xi1 xi2 xi3", {}},
       maxwell_bloch, no_check},
      {{"rigid-body-algebroid", EntryKind::algebroid,
        "pre-Lie algebroid lifting the rigid body, h1 = sum a_i x^i xi_i", "x1 x2 x3 | xi1 xi2 xi3", rigid_params()},
       rigid_body_algebroid, check_rigid},
      {{"rigid-body-metriplectic-algebroid", EntryKind::metriplectic_algebroid,
        "rigid body algebroid plus the constructed symmetric algebroid, h2 = sum x^i xi_i", "x1 x2 x3 | xi1 xi2 xi3",
        rigid_params()},
       rigid_body_metriplectic_algebroid, check_rigid},
  };
  return r;
}

const Recipe& find_recipe(const std::string& name) {
  for (const auto& r : recipes())
    if (r.summary.name == name) return r;
  std::string known;
  for (const auto& r : recipes()) known += (known.empty() ? "" : ", ") + r.summary.name;
  throw ParameterError("unknown catalog entry '" + name + "' (known: " + known + ")");
}

CatalogEntry bind_entry(const CatalogEntry& e, const ParamValues& v) {
  if (v.empty()) return e;
  CatalogEntry r = e;
  std::vector<std::string> remaining;
  for (const auto& p : e.chart.param_names())
    if (!v.count(p)) remaining.push_back(p);
  r.chart = e.chart.with_params(remaining);
  if (e.tensor) r.tensor = e.tensor->bind_params(v);
  if (e.pair) r.pair = MetriplecticPair(e.pair->p().bind_params(v), e.pair->g().bind_params(v));
  for (auto& a : r.algebroids) a = a.bind_params(v);
  for (auto& h : r.hamiltonians) h = h.bind_params(v);
  for (auto& p : r.printed_rhs) p = p.bind_params(v);
  for (auto& s : r.structure_refs) {
    s.derived = s.derived.bind_params(v);
    s.printed = s.printed.bind_params(v);
  }
  for (auto& o : r.observables) o.expr = o.expr.bind_params(v);
  for (const auto& [k, val] : v) r.params[k] = val;
  return r;
}

// Deterministic sample functions for identity checks.
IdentityInputs sample_inputs(const Chart& c, const Poly& h1, const Poly& h2) {
  const std::size_t d = c.dim();
  auto v = [&](std::size_t k) { return Poly::variable(c, k % d); };
  auto k = [&](long q) { return Poly::constant(c, Rational(q)); };
  IdentityInputs in{.f = v(0) * v(1) + k(2) * v(d - 1),
                    .f1 = v(d - 1) * v(d - 1) - v(0),
                    .g = v(1) + k(3) * v(0) * v(d - 1),
                    .h = h1,
                    .h1 = h1,
                    .h2 = h2,
                    .l = k(1) + v(0)};
  return in;
}

Certificate symmetry_certificate(const std::string& subject, const TensorField2& t, bool antisym) {
  Certificate cert{.subject = subject};
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i; j < t.dim(); ++j) {
      std::string where = "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
      if (antisym)
        cert.add("entry" + where + " + transposed entry = 0", t.at(i, j) + t.at(j, i));
      else
        cert.add("entry" + where + " - transposed entry = 0", t.at(i, j) - t.at(j, i));
    }
  return cert;
}

Certificate annihilation_certificate(const std::string& subject, const TensorField2& t, const Poly& h,
                                     const std::string& hname, AnnihilatorScope scope) {
  Certificate cert{.subject = subject};
  const Chart& c = t.chart();
  std::size_t count = scope == AnnihilatorScope::all_coordinates ? c.dim() : c.base_dim();
  auto first = annihilator_residuals(t, h, Slot::first, scope);
  auto second = annihilator_residuals(t, h, Slot::second, scope);
  for (std::size_t mu = 0; mu < count; ++mu) {
    cert.add("(d" + hname + ", d" + c.var_name(mu) + ") = 0", first[mu]);
    cert.add("(d" + c.var_name(mu) + ", d" + hname + ") = 0", second[mu]);
  }
  return cert;
}

void add_outcome(VerifyReport& r, Certificate c, bool required = true) {
  r.checks.push_back({std::move(c), required});
}

void algebroid_checks(VerifyReport& r, const std::string& label, const AlgebroidStructure& a, const Poly& h) {
  DualChartTensor lambda = lambda_from_structure(a);
  Certificate lin{.subject = label + " linear"};
  if (lambda.nonlinearity) lin.precondition_failure = *lambda.nonlinearity;
  else lin.notes.push_back("xi-xi block of fiber degree 1, mixed blocks fiber-free, x-x block zero");
  add_outcome(r, lin);

  Certificate round{.subject = label + " structure functions recovered from tensor"};
  try {
    AlgebroidStructure back = structure_from_lambda(lambda);
    if (!(back == a)) round.precondition_failure = "round trip changed the structure";
  } catch (const Error& e) {
    round.precondition_failure = e.what();
  }
  add_outcome(r, round);

  const Chart& base = a.base_chart();
  Poly f = Poly::variable(base, 0) * Poly::variable(base, a.n() - 1) + Poly::variable(base, 1 % a.n());
  Poly g = Poly::variable(base, 0) - Poly::variable(base, 1 % a.n()) * Poly::variable(base, 1 % a.n());
  std::vector<Poly> comps1, comps2;
  for (std::size_t k = 0; k < a.m(); ++k) {
    comps1.push_back(Poly::variable(base, k % a.n()) + Poly::constant(base, Rational(static_cast<long>(k + 1))));
    comps2.push_back(Poly::variable(base, (k + 1) % a.n()) * Poly::variable(base, k % a.n()));
  }
  Section s1(a, comps1), s2(a, comps2);
  Certificate t1 = theorem1_check(a, s1, s2, f);
  t1.subject = label + " section/tensor correspondence";
  for (std::size_t p = 0; p < a.m(); ++p)
    for (std::size_t q = 0; q < a.m(); ++q) t1.merge(theorem1_check(a, Section::basis(a, p), Section::basis(a, q), f));
  add_outcome(r, t1);

  Certificate leib = anchored_leibniz_check(a, s1, s2, f, g);
  leib.subject = label + " anchored Leibniz rule";
  add_outcome(r, leib);

  Certificate path{.subject = label + " bracket flow equals structure-function flow"};
  OdeSystem direct = rhs_from_algebroid(a, h);
  OdeSystem via = rhs_from_bracket(lambda.tensor, h);
  for (std::size_t mu = 0; mu < direct.dim(); ++mu)
    path.add(direct.chart().var_name(mu) + "' agrees", direct.rhs()[mu] - via.rhs()[mu]);
  add_outcome(r, path);

  Certificate cls{.subject = label + " classification"};
  cls.notes.push_back(std::string("class: ") + to_string(classify_algebroid(a)) +
                      ", tensor: " + to_string(symmetry_classify(lambda.tensor)));
  add_outcome(r, cls, false);
}

} // namespace

std::vector<EntrySummary> catalog_list() {
  std::vector<EntrySummary> out;
  for (const auto& r : recipes()) out.push_back(r.summary);
  return out;
}

CatalogEntry catalog_build(const std::string& name, const ParamValues& values, bool keep_unbound_symbolic) {
  const Recipe& r = find_recipe(name);
  for (const auto& [k, v] : values) {
    bool known = false;
    for (const auto& p : r.summary.params) known = known || p.name == k;
    if (!known) {
      std::string expected;
      for (const auto& p : r.summary.params) expected += (expected.empty() ? "" : ", ") + p.name;
      throw ParameterError("unknown parameter '" + k + "' for " + name +
                           (expected.empty() ? " (takes no parameters)" : " (expected " + expected + ")"));
    }
  }
  ParamValues full = values;
  if (!keep_unbound_symbolic)
    for (const auto& p : r.summary.params) full.emplace(p.name, p.default_value);
  r.check(full);
  CatalogEntry e = r.build();
  e.description = r.summary.description;
  e.t_end = 20.0;
  return bind_entry(e, full);
}

bool VerifyReport::components_match() const { return mismatch_count() == 0; }

std::size_t VerifyReport::mismatch_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.match() ? 0 : 1;
  return n;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["components"] = nlohmann::json::array();
  for (const auto& c : components)
    j["components"].push_back({{"component", c.component},
                               {"match", c.match()},
                               {"derived", c.derived.to_string()},
                               {"printed", c.printed.to_string()},
                               {"residual", c.residual.to_string()}});
  j["checks"] = nlohmann::json::array();
  for (const auto& o : checks) {
    nlohmann::json cj{{"subject", o.certificate.subject}, {"pass", o.certificate.pass()}, {"required", o.required}};
    if (o.certificate.precondition_failure) cj["precondition_failure"] = *o.certificate.precondition_failure;
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& ic : o.certificate.checks)
      if (!ic.pass) failed.push_back({{"identity", ic.identity}, {"residual", ic.residual->to_string()}});
    cj["identities"] = o.certificate.checks.size();
    cj["failed"] = failed;
    cj["notes"] = o.certificate.notes;
    j["checks"].push_back(cj);
  }
  j["notes"] = notes;
  return j;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "system: " << name << "\n";
  os << "right-hand side, derived vs reference:\n";
  for (const auto& c : components) {
    os << "  " << c.component << "' ";
    if (c.match()) os << "match\n";
    else os << "DIFFERS  derived - reference = " << c.residual.to_string() << "\n";
  }
  if (components_match()) os << "  all components match\n";
  os << "certifications:\n";
  for (const auto& o : checks) {
    const Certificate& c = o.certificate;
    os << "  [" << (c.pass() ? "pass" : (o.required ? "FAIL" : "info")) << "] " << c.subject;
    if (!c.checks.empty()) os << " (" << c.checks.size() << " identities)";
    os << "\n";
    if (c.precondition_failure) os << "      " << *c.precondition_failure << "\n";
    for (const auto& ic : c.checks)
      if (!ic.pass) os << "      " << ic.identity << ": residual " << ic.residual->to_string() << "\n";
    for (const auto& n : c.notes) os << "      note: " << n << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

VerifyReport catalog_verify(const CatalogEntry& e) {
  VerifyReport r{.name = e.name};
  OdeSystem derived = e.derive();
  if (e.printed_rhs.size() != derived.dim())
    throw DimensionMismatch("reference system has " + std::to_string(e.printed_rhs.size()) + " components, expected " +
                            std::to_string(derived.dim()));
  for (std::size_t mu = 0; mu < derived.dim(); ++mu) {
    const Poly& d = derived.rhs()[mu];
    const Poly p = e.printed_rhs[mu].rechart(d.chart());
    r.components.push_back({derived.chart().var_name(mu), d, p, d - p});
  }

  if (!e.structure_refs.empty()) {
    Certificate c{.subject = "constructed structure equals reference matrices"};
    for (const auto& s : e.structure_refs) c.add(s.label, s.derived - s.printed.rechart(s.derived.chart()));
    add_outcome(r, c);
  }

  if (e.base_part_matches) {
    ParamValues shared;
    const Recipe& other = find_recipe(*e.base_part_matches);
    for (const auto& p : other.summary.params)
      if (auto it = e.params.find(p.name); it != e.params.end()) shared[p.name] = it->second;
    OdeSystem ref = catalog_build(*e.base_part_matches, shared, true).derive();
    Certificate c{.subject = "base part equals derived " + *e.base_part_matches + " system"};
    if (ref.dim() > derived.dim()) c.precondition_failure = "dimension mismatch";
    else
      for (std::size_t i = 0; i < ref.dim(); ++i)
        c.add(ref.chart().var_name(i) + "'", derived.rhs()[i] - ref.rhs()[i].rechart(derived.chart()));
    add_outcome(r, c);
  }

  const Chart& c = e.chart;
  switch (e.kind) {
  case EntryKind::leibniz_bracket: {
    add_outcome(r, symmetry_certificate("tensor symmetric", *e.tensor, false));
    IdentityInputs in = sample_inputs(c, e.hamiltonians[0], e.hamiltonians[0]);
    Certificate d1 = derivation_identity_check(BracketIdentity::derivation_first_slot, *e.tensor, in);
    d1.merge(derivation_identity_check(BracketIdentity::derivation_second_slot, *e.tensor, in));
    d1.subject = "derivation in both slots";
    add_outcome(r, d1);
    break;
  }
  case EntryKind::metriplectic_pair:
  case EntryKind::almost_leibniz: {
    add_outcome(r, symmetry_certificate("P antisymmetric", e.pair->p(), true));
    add_outcome(r, symmetry_certificate("g symmetric", e.pair->g(), false));
    const Poly& h1 = e.hamiltonians[0];
    const Poly& h2 = e.hamiltonians.size() > 1 ? e.hamiltonians[1] : h1;
    IdentityInputs in = sample_inputs(c, h1, h2);
    Certificate d1 = derivation_identity_check(BracketIdentity::derivation_first_slot, e.pair->sum(), in);
    d1.merge(derivation_identity_check(BracketIdentity::derivation_second_slot, e.pair->sum(), in));
    d1.subject = "derivation in both slots";
    add_outcome(r, d1);
    if (e.kind == EntryKind::almost_leibniz) {
      Certificate d2 =
          derivation_identity_check(BracketIdentity::two_ham_derivation, e.pair->p(), e.pair->g(), in);
      d2.merge(derivation_identity_check(BracketIdentity::two_ham_scaling, e.pair->p(), e.pair->g(), in));
      d2.subject = "two-hamiltonian bracket identities";
      add_outcome(r, d2);
      Certificate p2 = prop2_equivalence_check(*e.pair, h1, h2);
      p2.subject = "single-hamiltonian reformulation";
      add_outcome(r, p2, false);
    } else {
      Certificate cas{.subject = "|x|^2/2 is a Casimir of P"};
      Poly norm = parse_poly(c, kHalfNorm);
      auto res = annihilator_residuals(e.pair->p(), norm, Slot::first);
      for (std::size_t i = 0; i < res.size(); ++i) cas.add("P(d|x|^2/2, d" + c.var_name(i) + ") = 0", res[i]);
      add_outcome(r, cas);
    }
    break;
  }
  case EntryKind::algebroid:
    algebroid_checks(r, "Lambda", e.algebroids[0], e.hamiltonians[0]);
    break;
  case EntryKind::metriplectic_algebroid: {
    const AlgebroidStructure& a1 = e.algebroids[0];
    const AlgebroidStructure& a2 = e.algebroids[1];
    const Poly& h1 = e.hamiltonians[0];
    const Poly& h2 = e.hamiltonians[1];
    algebroid_checks(r, "Lambda1", a1, h1);
    algebroid_checks(r, "Lambda2", a2, h2);
    TensorField2 l1 = lambda_from_structure(a1).tensor;
    TensorField2 l2 = lambda_from_structure(a2).tensor;
    IdentityInputs in = sample_inputs(c, h1, h2);
    Certificate d2 = derivation_identity_check(BracketIdentity::two_ham_derivation, l1, l2, in);
    d2.merge(derivation_identity_check(BracketIdentity::two_ham_scaling, l1, l2, in));
    d2.subject = "two-hamiltonian bracket identities";
    add_outcome(r, d2);

    Certificate flow{.subject = "bracket flow equals structure-function flow"};
    VectorFieldPoly via = two_hamiltonian_vf(l1, l2, h1, h2);
    OdeSystem direct = e.derive();
    for (std::size_t mu = 0; mu < direct.dim(); ++mu)
      flow.add(c.var_name(mu) + "' agrees", direct.rhs()[mu] - via[mu]);
    add_outcome(r, flow);

    add_outcome(r, annihilation_certificate("Lambda2 annihilates h1", l2, h1, "h1", AnnihilatorScope::all_coordinates));
    add_outcome(r, annihilation_certificate("Lambda1 annihilates h2", l1, h2, "h2", AnnihilatorScope::all_coordinates));
    add_outcome(r,
                annihilation_certificate("Lambda1 annihilates h2 against base functions", l1, h2, "h2",
                                         AnnihilatorScope::base_coordinates),
                false);

    Certificate rel{.subject = "Lambda2 relations for fiber-linear h1"};
    // C2_{ab}^d u^b + rho2_a^i d_i u^d = 0 and rho2_a^i u^a = 0, with h1 = xi_a u^a
    const std::size_t n = a2.n(), m = a2.m();
    const Chart& base = a2.base_chart();
    std::vector<Poly> u;
    for (std::size_t a = 0; a < m; ++a) u.push_back(h1.diff(n + a).rechart(base));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t d = 0; d < m; ++d) {
        Poly s(base);
        for (std::size_t b = 0; b < m; ++b) s += a2.c(a, b, d) * u[b];
        for (std::size_t i = 0; i < n; ++i) s += a2.rho1(i, a) * u[d].diff(i);
        rel.add("a=" + std::to_string(a + 1) + ", d=" + std::to_string(d + 1), s);
      }
    for (std::size_t i = 0; i < n; ++i) {
      Poly s(base);
      for (std::size_t a = 0; a < m; ++a) s += a2.rho1(i, a) * u[a];
      rel.add("anchor row " + std::to_string(i + 1) + " kills u", s);
    }
    add_outcome(r, rel);

    Certificate p2 = prop2_equivalence_check(l1, l2, h1, h2);
    p2.subject = "single-hamiltonian reformulation";
    add_outcome(r, p2, false);
    break;
  }
  }
  r.notes = e.notes;
  return r;
}

VerifyReport catalog_verify(const std::string& name) { return catalog_verify(catalog_build(name, {}, true)); }

nlohmann::json entry_to_json(const CatalogEntry& e) {
  nlohmann::json j;
  j["name"] = e.name;
  j["kind"] = to_string(e.kind);
  j["description"] = e.description;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : e.params) params[k] = to_string(v);
  j["params"] = params;
  j["chart"] = {{"base", e.chart.base_names()}, {"fiber", e.chart.fiber_names()}, {"params", e.chart.param_names()}};
  if (e.tensor) j["tensor"] = tensor_to_json(*e.tensor);
  if (e.pair) {
    j["P"] = tensor_to_json(e.pair->p());
    j["g"] = tensor_to_json(e.pair->g());
  }
  if (!e.algebroids.empty()) {
    j["algebroids"] = nlohmann::json::array();
    for (const auto& a : e.algebroids) j["algebroids"].push_back(structure_to_json(a));
  }
  auto strings = [](const std::vector<Poly>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
  };
  j["hamiltonians"] = strings(e.hamiltonians);
  j["reference_rhs"] = strings(e.printed_rhs);
  if (e.base_part_matches) j["base_part_matches"] = *e.base_part_matches;
  j["x0"] = e.x0;
  j["t_end"] = e.t_end;
  j["observables"] = nlohmann::json::array();
  for (const auto& o : e.observables) j["observables"].push_back({{"label", o.label}, {"expr", o.expr.to_string()}});
  return j;
}

CatalogEntry entry_from_json(const nlohmann::json& j) {
  try {
    Chart c(j.at("chart").at("base").get<std::vector<std::string>>(),
            j.at("chart").value("fiber", std::vector<std::string>{}),
            j.at("chart").value("params", std::vector<std::string>{}));
    CatalogEntry e{.name = j.at("name").get<std::string>(),
                   .kind = entry_kind_from_string(j.at("kind").get<std::string>()),
                   .chart = c};
    e.description = j.value("description", "");
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    for (const auto& [k, v] : params.items()) e.params[k] = parse_rational(v.get<std::string>());
    if (j.contains("tensor")) e.tensor = tensor_from_json(c, j["tensor"]);
    if (j.contains("P") || j.contains("g")) e.pair = MetriplecticPair(tensor_from_json(c, j.at("P")), tensor_from_json(c, j.at("g")));
    if (j.contains("algebroids"))
      for (const auto& a : j["algebroids"]) {
        AlgebroidStructure s = structure_from_json(a);
        if (s.dual_chart() != c) throw ParseError("algebroid chart " + s.dual_chart().describe() + " differs from entry chart " + c.describe());
        e.algebroids.push_back(s);
      }
    for (const auto& h : j.at("hamiltonians")) e.hamiltonians.push_back(parse_poly(c, h.get<std::string>()));
    for (const auto& p : j.at("reference_rhs")) e.printed_rhs.push_back(parse_poly(c, p.get<std::string>()));
    if (j.contains("base_part_matches")) e.base_part_matches = j["base_part_matches"].get<std::string>();
    e.x0 = j.value("x0", std::vector<double>(c.dim(), 0.0));
    e.t_end = j.value("t_end", 20.0);
    for (const auto& o : j.value("observables", nlohmann::json::array()))
      e.observables.push_back({o.at("label").get<std::string>(), parse_poly(c, o.at("expr").get<std::string>())});

    std::size_t need_h = (e.kind == EntryKind::almost_leibniz || e.kind == EntryKind::metriplectic_algebroid) ? 2 : 1;
    std::size_t need_a = e.kind == EntryKind::algebroid ? 1 : e.kind == EntryKind::metriplectic_algebroid ? 2 : 0;
    if (e.hamiltonians.size() != need_h)
      throw ParseError(std::string(to_string(e.kind)) + " needs " + std::to_string(need_h) + " hamiltonian(s)");
    if (e.algebroids.size() != need_a)
      throw ParseError(std::string(to_string(e.kind)) + " needs " + std::to_string(need_a) + " algebroid structure(s)");
    if (e.kind == EntryKind::leibniz_bracket && !e.tensor) throw ParseError("leibniz_bracket entry needs \"tensor\"");
    if ((e.kind == EntryKind::metriplectic_pair || e.kind == EntryKind::almost_leibniz) && !e.pair)
      throw ParseError("pair entry needs \"P\" and \"g\"");
    if (e.printed_rhs.size() != c.dim()) throw ParseError("reference_rhs needs one entry per coordinate");
    if (e.x0.size() != c.dim()) throw ParseError("x0 needs one entry per coordinate");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed entry file: ") + ex.what());
  }
}

} // namespace leibniz
