#include "leibniz/brackets.hpp"

#include <algorithm>
#include <sstream>

#include "leibniz/errors.hpp"

namespace leibniz {

bool Certificate::pass() const {
  if (precondition_failure) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Certificate::add(std::string identity, const Poly& lhs_minus_rhs) {
  IdentityCheck c{std::move(identity), lhs_minus_rhs.is_zero(), std::nullopt};
  if (!c.pass) c.residual = lhs_minus_rhs;
  checks.push_back(std::move(c));
}

void Certificate::merge(const Certificate& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (const auto& n : other.notes)
    if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  if (other.precondition_failure && !precondition_failure) precondition_failure = other.precondition_failure;
}

std::string Certificate::report() const {
  std::ostringstream os;
  os << (subject.empty() ? "certificate" : subject) << ": " << (pass() ? "PASS" : "FAIL") << "\n";
  if (precondition_failure) os << "  precondition failed: " << *precondition_failure << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.identity;
    if (c.residual) os << "  residual: " << c.residual->to_string();
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

namespace {

void require_chart(const Chart& c, const Poly& p, const char* what) {
  if (p.chart() != c) throw ChartMismatch(std::string(what) + ": function chart " + p.chart().describe() +
                                          " differs from tensor chart " + c.describe());
}

// Row vector (grad f)^T B, component nu.
std::vector<Poly> covector_times(const TensorField2& b, const std::vector<Poly>& df) {
  std::vector<Poly> out(b.dim(), Poly(b.chart()));
  for (std::size_t mu = 0; mu < b.dim(); ++mu) {
    if (df[mu].is_zero()) continue;
    for (std::size_t nu = 0; nu < b.dim(); ++nu)
      if (!b.at(mu, nu).is_zero()) out[nu] += df[mu] * b.at(mu, nu);
  }
  return out;
}

// B (grad h), component mu.
std::vector<Poly> times_vector(const TensorField2& b, const std::vector<Poly>& dh) {
  std::vector<Poly> out(b.dim(), Poly(b.chart()));
  for (std::size_t mu = 0; mu < b.dim(); ++mu)
    for (std::size_t nu = 0; nu < b.dim(); ++nu)
      if (!b.at(mu, nu).is_zero() && !dh[nu].is_zero()) out[mu] += b.at(mu, nu) * dh[nu];
  return out;
}

} // namespace

Poly bracket_apply(const TensorField2& b, const Poly& f, const Poly& h) {
  require_chart(b.chart(), f, "bracket_apply");
  require_chart(b.chart(), h, "bracket_apply");
  const auto bh = times_vector(b, gradient(h));
  const auto df = gradient(f);
  Poly r(b.chart());
  for (std::size_t mu = 0; mu < b.dim(); ++mu)
    if (!df[mu].is_zero()) r += df[mu] * bh[mu];
  return r;
}

VectorFieldPoly hamiltonian_vf(const TensorField2& b, const Poly& h) {
  require_chart(b.chart(), h, "hamiltonian_vf");
  return VectorFieldPoly(b.chart(), times_vector(b, gradient(h)));
}

Poly two_hamiltonian_bracket(const TensorField2& first, const TensorField2& second, const Poly& f,
                             const Poly& h1, const Poly& h2) {
  if (first.chart() != second.chart()) throw ChartMismatch("two-hamiltonian bracket: tensors on different charts");
  return bracket_apply(first, f, h1) + bracket_apply(second, f, h2);
}

VectorFieldPoly two_hamiltonian_vf(const TensorField2& first, const TensorField2& second, const Poly& h1,
                                   const Poly& h2) {
  if (first.chart() != second.chart()) throw ChartMismatch("two-hamiltonian field: tensors on different charts");
  require_chart(first.chart(), h1, "two_hamiltonian_vf");
  require_chart(first.chart(), h2, "two_hamiltonian_vf");
  auto a = times_vector(first, gradient(h1));
  const auto b = times_vector(second, gradient(h2));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return VectorFieldPoly(first.chart(), std::move(a));
}

VectorFieldPoly almost_leibniz_vf(const MetriplecticPair& pair, const Poly& h1, const Poly& h2) {
  return two_hamiltonian_vf(pair.p(), pair.g(), h1, h2);
}

Certificate derivation_identity_check(BracketIdentity id, const TensorField2& b, const IdentityInputs& in) {
  Certificate cert;
  auto br = [&](const Poly& u, const Poly& v) { return bracket_apply(b, u, v); };
  switch (id) {
  case BracketIdentity::derivation_first_slot:
    cert.subject = "derivation in the first slot";
    cert.add("[fg,h] = [f,h]g + f[g,h]", br(in.f * in.g, in.h) - (br(in.f, in.h) * in.g + in.f * br(in.g, in.h)));
    break;
  case BracketIdentity::derivation_second_slot:
    cert.subject = "derivation in the second slot";
    cert.add("[f,gh] = g[f,h] + [f,g]h", br(in.f, in.g * in.h) - (in.g * br(in.f, in.h) + br(in.f, in.g) * in.h));
    break;
  default:
    throw Error("identity needs two tensors");
  }
  return cert;
}

Certificate derivation_identity_check(BracketIdentity id, const TensorField2& first, const TensorField2& second,
                                      const IdentityInputs& in) {
  if (id == BracketIdentity::derivation_first_slot || id == BracketIdentity::derivation_second_slot)
    return derivation_identity_check(id, first + second, in);
  Certificate cert;
  auto br = [&](const Poly& u, const Poly& v1, const Poly& v2) {
    return two_hamiltonian_bracket(first, second, u, v1, v2);
  };
  if (id == BracketIdentity::two_ham_derivation) {
    cert.subject = "two-hamiltonian bracket: derivation in f";
    cert.add("[f1 f,(h1,h2)] = f1[f,(h1,h2)] + f[f1,(h1,h2)]",
             br(in.f1 * in.f, in.h1, in.h2) - (in.f1 * br(in.f, in.h1, in.h2) + in.f * br(in.f1, in.h1, in.h2)));
  } else {
    cert.subject = "two-hamiltonian bracket: scaling of the hamiltonian pair";
    cert.add("[f,(l h1,l h2)] = l[f,(h1,h2)] + h1 first(df,dl) + h2 second(df,dl)",
             br(in.f, in.l * in.h1, in.l * in.h2) -
                 (in.l * br(in.f, in.h1, in.h2) + in.h1 * bracket_apply(first, in.f, in.l) +
                  in.h2 * bracket_apply(second, in.f, in.l)));
    cert.notes.push_back("l scales both hamiltonians; dl enters both tensor terms");
  }
  return cert;
}

std::vector<Poly> annihilator_residuals(const TensorField2& b, const Poly& h, Slot slot, AnnihilatorScope scope) {
  require_chart(b.chart(), h, "annihilator_check");
  const std::size_t n = scope == AnnihilatorScope::base_coordinates ? b.chart().base_dim() : b.dim();
  const auto dh = gradient(h);
  // slot first: B(dh, dx^nu) = (dh^T B)_nu ; slot second: B(dx^mu, dh) = (B dh)_mu
  auto all = slot == Slot::first ? covector_times(b, dh) : times_vector(b, dh);
  all.resize(n, Poly(b.chart()));
  return all;
}

bool annihilator_check(const TensorField2& b, const Poly& h, Slot slot, AnnihilatorScope scope) {
  for (const auto& r : annihilator_residuals(b, h, slot, scope))
    if (!r.is_zero()) return false;
  return true;
}

namespace {

Certificate prop2_impl(const TensorField2& first, const TensorField2& second, const Poly& h1, const Poly& h2,
                       const std::string& first_name, const std::string& second_name) {
  Certificate cert;
  cert.subject = "two-hamiltonian field equals single-hamiltonian field of h1 + h2";
  if (!annihilator_check(first, h2, Slot::first)) {
    cert.precondition_failure = first_name + " does not annihilate h2 (" + first_name + "(dh2, df) != 0 for some coordinate f)";
    return cert;
  }
  if (!annihilator_check(second, h1, Slot::first)) {
    cert.precondition_failure = second_name + " does not annihilate h1 (" + second_name + "(dh1, df) != 0 for some coordinate f)";
    return cert;
  }
  const Poly h = h1 + h2;
  const auto split = two_hamiltonian_vf(first, second, h1, h2);
  const auto joint = two_hamiltonian_vf(first, second, h, h);
  for (std::size_t i = 0; i < split.size(); ++i)
    cert.add("component " + first.chart().var_name(i) + ": X_{h1,h2} = X_{h,h}", split[i] - joint[i]);
  return cert;
}

} // namespace

Certificate prop2_equivalence_check(const TensorField2& first, const TensorField2& second, const Poly& h1,
                                    const Poly& h2) {
  return prop2_impl(first, second, h1, h2, "first tensor", "second tensor");
}

Certificate prop2_equivalence_check(const MetriplecticPair& pair, const Poly& h1, const Poly& h2) {
  return prop2_impl(pair.p(), pair.g(), h1, h2, "P", "g");
}

} // namespace leibniz
