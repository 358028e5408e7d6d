#include "leibniz/algebroid.hpp"

#include "leibniz/brackets.hpp"

namespace leibniz {

namespace {

Chart make_dual(const Chart& base, std::size_t m, std::vector<std::string> fiber_names) {
  if (base.fiber_dim() != 0) throw Error("algebroid base chart must not have fiber coordinates");
  if (fiber_names.empty())
    for (std::size_t a = 1; a <= m; ++a) fiber_names.push_back("xi" + std::to_string(a));
  if (fiber_names.size() != m) throw DimensionMismatch("fiber name count does not match m");
  return Chart(base.base_names(), std::move(fiber_names), base.param_names(), base.degree_cap());
}

} // namespace

AlgebroidStructure::AlgebroidStructure(Chart base, std::size_t m, std::vector<std::string> fiber_names)
    : base_(std::move(base)), dual_(make_dual(base_, m, std::move(fiber_names))), m_(m) {
  c_.assign(m_ * m_ * m_, Poly(base_));
  rho1_.assign(n() * m_, Poly(base_));
  rho2_.assign(n() * m_, Poly(base_));
}

Poly AlgebroidStructure::checked(Poly value) const {
  if (value.chart() != base_) throw ChartMismatch("structure functions must live on the base chart " + base_.describe());
  return value;
}

void AlgebroidStructure::set_c(std::size_t a, std::size_t b, std::size_t d, Poly value) {
  c_.at((a * m_ + b) * m_ + d) = checked(std::move(value));
}
void AlgebroidStructure::set_rho1(std::size_t i, std::size_t a, Poly value) {
  rho1_.at(i * m_ + a) = checked(std::move(value));
}
void AlgebroidStructure::set_rho2(std::size_t i, std::size_t a, Poly value) {
  rho2_.at(i * m_ + a) = checked(std::move(value));
}

void AlgebroidStructure::parse_anchor(std::vector<Poly>& target, const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() != n()) throw DimensionMismatch("anchor needs " + std::to_string(n()) + " rows");
  for (std::size_t i = 0; i < n(); ++i) {
    if (rows[i].size() != m_) throw DimensionMismatch("anchor row needs " + std::to_string(m_) + " entries");
    for (std::size_t a = 0; a < m_; ++a) target[i * m_ + a] = parse_poly(base_, rows[i][a]);
  }
}

void AlgebroidStructure::parse_rho1(const std::vector<std::vector<std::string>>& rows) { parse_anchor(rho1_, rows); }
void AlgebroidStructure::parse_rho2(const std::vector<std::vector<std::string>>& rows) { parse_anchor(rho2_, rows); }

AlgebroidStructure AlgebroidStructure::bind_params(const std::map<std::string, Rational>& values) const {
  std::vector<std::string> remaining;
  for (const auto& p : base_.param_names())
    if (!values.count(p)) remaining.push_back(p);
  AlgebroidStructure r(base_.with_params(remaining), m_, dual_.fiber_names());
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k].bind_params(values);
  for (std::size_t k = 0; k < rho1_.size(); ++k) {
    r.rho1_[k] = rho1_[k].bind_params(values);
    r.rho2_[k] = rho2_[k].bind_params(values);
  }
  return r;
}

bool operator==(const AlgebroidStructure& a, const AlgebroidStructure& b) {
  return a.dual_ == b.dual_ && a.c_ == b.c_ && a.rho1_ == b.rho1_ && a.rho2_ == b.rho2_;
}

Section::Section(const AlgebroidStructure& a, std::vector<Poly> components) : components_(std::move(components)) {
  if (components_.size() != a.m()) throw DimensionMismatch("section needs " + std::to_string(a.m()) + " components");
  for (const auto& c : components_)
    if (c.chart() != a.base_chart()) throw ChartMismatch("section components must live on the base chart");
}

Section Section::basis(const AlgebroidStructure& a, std::size_t index) {
  std::vector<Poly> comps(a.m(), Poly(a.base_chart()));
  comps.at(index) = Poly::constant(a.base_chart(), 1);
  return Section(a, std::move(comps));
}

Section Section::scaled(const Poly& f) const {
  Section s(*this);
  for (auto& c : s.components_) c = f * c;
  return s;
}

std::optional<std::string> certify_linear(const TensorField2& t, std::size_t n, std::size_t m) {
  const Chart& ch = t.chart();
  if (ch.base_dim() != n || ch.fiber_dim() != m) return "tensor chart does not have n base and m fiber coordinates";
  auto name = [&](std::size_t k) { return ch.var_name(k); };
  for (std::size_t mu = 0; mu < n + m; ++mu)
    for (std::size_t nu = 0; nu < n + m; ++nu) {
      const Poly& e = t.at(mu, nu);
      if (e.is_zero()) continue;
      const bool xi_row = mu >= n, xi_col = nu >= n;
      const std::string where = "entry (d" + name(mu) + ", d" + name(nu) + ")";
      if (!xi_row && !xi_col) return "x-x block " + where + " is nonzero: " + e.to_string();
      if (xi_row != xi_col) {
        for (std::size_t a = n; a < n + m; ++a)
          if (e.depends_on(a)) return "mixed block " + where + " depends on the fiber: " + e.to_string();
        continue;
      }
      for (const auto& [exps, c] : e.terms()) {
        int deg = 0;
        bool ok = true;
        for (std::size_t a = n; a < n + m; ++a) {
          if (exps[a] < 0 || exps[a] > 1) ok = false;
          deg += exps[a];
        }
        if (!ok || deg != 1) return "xi-xi block " + where + " is not homogeneous linear in the fiber: " + e.to_string();
      }
    }
  return std::nullopt;
}

DualChartTensor make_dual_chart_tensor(TensorField2 t, std::size_t n, std::size_t m) {
  auto bad = certify_linear(t, n, m);
  return DualChartTensor{std::move(t), n, m, std::move(bad)};
}

Poly lift_section(const AlgebroidStructure& a, const Section& sigma) {
  const Chart& dual = a.dual_chart();
  Poly r(dual);
  for (std::size_t k = 0; k < a.m(); ++k)
    if (!sigma[k].is_zero()) r += Poly::variable(dual, a.n() + k) * sigma[k].rechart(dual);
  return r;
}

DualChartTensor lambda_from_structure(const AlgebroidStructure& a) {
  const Chart& dual = a.dual_chart();
  const std::size_t n = a.n(), m = a.m();
  TensorField2 t = TensorField2::zero(dual);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      Poly e(dual);
      for (std::size_t d = 0; d < m; ++d)
        if (!a.c(p, q, d).is_zero()) e += a.c(p, q, d).rechart(dual) * Poly::variable(dual, n + d);
      t.set(n + p, n + q, std::move(e));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < m; ++p) {
      t.set(n + p, i, a.rho1(i, p).rechart(dual));
      t.set(i, n + p, -a.rho2(i, p).rechart(dual));
    }
  return make_dual_chart_tensor(std::move(t), n, m);
}

AlgebroidStructure structure_from_lambda(const DualChartTensor& lambda) {
  if (auto bad = certify_linear(lambda.tensor, lambda.n, lambda.m)) throw NotLinear("tensor is not linear: " + *bad);
  const Chart& dual = lambda.tensor.chart();
  const std::size_t n = lambda.n, m = lambda.m;
  const Chart base(dual.base_names(), {}, dual.param_names(), dual.degree_cap());
  AlgebroidStructure a(base, m, dual.fiber_names());
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      std::vector<Poly> coeff(m, Poly(dual));
      for (const auto& [exps, c] : lambda.tensor.at(n + p, n + q).terms()) {
        std::size_t d = 0;
        while (exps[n + d] == 0) ++d;
        Exponents reduced = exps;
        reduced[n + d] = 0;
        coeff[d] += Poly::monomial(dual, reduced, c);
      }
      for (std::size_t d = 0; d < m; ++d) a.set_c(p, q, d, coeff[d].rechart(base));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < m; ++p) {
      a.set_rho1(i, p, lambda.tensor.at(n + p, i).rechart(base));
      a.set_rho2(i, p, (-lambda.tensor.at(i, n + p)).rechart(base));
    }
  return a;
}

Poly anchor_apply(const AlgebroidStructure& a, bool left, const Section& sigma, const Poly& f) {
  if (f.chart() != a.base_chart()) throw ChartMismatch("anchor applied to a function off the base chart");
  Poly r(a.base_chart());
  for (std::size_t i = 0; i < a.n(); ++i) {
    const Poly dfi = f.diff(i);
    if (dfi.is_zero()) continue;
    for (std::size_t p = 0; p < a.m(); ++p) {
      const Poly& rho = left ? a.rho1(i, p) : a.rho2(i, p);
      if (!rho.is_zero() && !sigma[p].is_zero()) r += sigma[p] * rho * dfi;
    }
  }
  return r;
}

Section section_bracket(const AlgebroidStructure& a, const Section& s1, const Section& s2) {
  const std::size_t m = a.m();
  std::vector<Poly> out(m, Poly(a.base_chart()));
  for (std::size_t d = 0; d < m; ++d) {
    Poly& r = out[d];
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q)
        if (!a.c(p, q, d).is_zero() && !s1[p].is_zero() && !s2[q].is_zero()) r += s1[p] * s2[q] * a.c(p, q, d);
    r += anchor_apply(a, true, s1, s2[d]);
    r -= anchor_apply(a, false, s2, s1[d]);
  }
  return Section(a, std::move(out));
}

Certificate anchored_leibniz_check(const AlgebroidStructure& a, const Section& s1, const Section& s2, const Poly& f,
                                   const Poly& g) {
  Certificate cert;
  cert.subject = "anchored Leibniz rule for the section bracket";
  const Section lhs = section_bracket(a, s1.scaled(f), s2.scaled(g));
  const Section inner = section_bracket(a, s1, s2);
  const Poly r1g = anchor_apply(a, true, s1, g);
  const Poly r2f = anchor_apply(a, false, s2, f);
  for (std::size_t d = 0; d < a.m(); ++d) {
    const Poly rhs = f * r1g * s2[d] - g * r2f * s1[d] + f * g * inner[d];
    cert.add("[f s1, g s2] = f rho1(s1)(g) s2 - g rho2(s2)(f) s1 + fg[s1,s2], component " + std::to_string(d + 1),
             lhs[d] - rhs);
  }
  return cert;
}

Certificate theorem1_check(const AlgebroidStructure& a, const Section& s1, const Section& s2, const Poly& f) {
  Certificate cert;
  cert.subject = "section bracket / linear tensor correspondence";
  const DualChartTensor lam = lambda_from_structure(a);
  const Chart& dual = a.dual_chart();
  const Poly l1 = lift_section(a, s1), l2 = lift_section(a, s2);
  const Poly pf = f.rechart(dual);
  cert.add("lift([s1,s2]) = Lambda(d lift s1, d lift s2)",
           lift_section(a, section_bracket(a, s1, s2)) - bracket_apply(lam.tensor, l1, l2));
  for (const auto* s : {&s1, &s2}) {
    const std::string tag = s == &s1 ? "s1" : "s2";
    const Poly ls = s == &s1 ? l1 : l2;
    cert.add("rho1(" + tag + ")(f) = Lambda(d lift " + tag + ", df)",
             anchor_apply(a, true, *s, f).rechart(dual) - bracket_apply(lam.tensor, ls, pf));
    cert.add("rho2(" + tag + ")(f) = -Lambda(df, d lift " + tag + ")",
             anchor_apply(a, false, *s, f).rechart(dual) + bracket_apply(lam.tensor, pf, ls));
  }
  cert.notes.push_back("right-anchor identity carries the sign fixed by the tensor layout "
                       "Lambda(dx^i, dxi_a) = -rho2^i_a");
  return cert;
}

AlgebroidClass classify_algebroid(const AlgebroidStructure& a) {
  const std::size_t m = a.m();
  bool c_anti = true, c_sym = true, same = true, opposite = true;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t d = 0; d < m; ++d) {
        if (c_anti && !(a.c(p, q, d) + a.c(q, p, d)).is_zero()) c_anti = false;
        if (c_sym && !(a.c(p, q, d) - a.c(q, p, d)).is_zero()) c_sym = false;
      }
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t p = 0; p < m; ++p) {
      if (same && !(a.rho1(i, p) - a.rho2(i, p)).is_zero()) same = false;
      if (opposite && !(a.rho1(i, p) + a.rho2(i, p)).is_zero()) opposite = false;
    }
  if (c_anti && same) return AlgebroidClass::pre_lie;
  if (c_sym && opposite) return AlgebroidClass::symmetric;
  return AlgebroidClass::general;
}

const char* to_string(AlgebroidClass c) {
  switch (c) {
  case AlgebroidClass::pre_lie: return "pre_lie";
  case AlgebroidClass::symmetric: return "symmetric";
  case AlgebroidClass::general: return "general";
  }
  return "?";
}

DualTensorConstruction prop4_construct_dual_tensor(const Poly& h1) {
  const Chart& dual = h1.chart();
  const std::size_t n = dual.base_dim(), m = dual.fiber_dim();
  if (m == 0) throw Error("h1 must live on a dual-bundle chart");
  if (n != m) throw Error("dual tensor construction needs base and fiber of equal dimension");
  const Chart base(dual.base_names(), {}, dual.param_names(), dual.degree_cap());

  // h1 = xi_a u_a(x), exactly linear in the fiber
  std::vector<Poly> u(m, Poly(dual));
  for (const auto& [exps, c] : h1.terms()) {
    int deg = 0;
    std::size_t which = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (exps[n + a] < 0) deg = -1000;
      deg += exps[n + a];
      if (exps[n + a] == 1) which = a;
    }
    if (deg != 1) throw Error("h1 is not linear in the fiber: " + h1.to_string());
    Exponents reduced = exps;
    reduced[n + which] = 0;
    u[which] += Poly::monomial(dual, reduced, c);
  }
  std::vector<Poly> ub;
  for (std::size_t a = 0; a < m; ++a) {
    if (u[a].is_zero())
      throw Error("zero coefficient component: the coefficient of " + dual.var_name(n + a) +
                  " in h1 vanishes, so the construction would divide by zero");
    ub.push_back(u[a].rechart(base));
  }

  AlgebroidStructure s(base, m, dual.fiber_names());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      Poly rho(base);
      if (i != a) {
        rho = ub[i] * ub[a];
      } else {
        for (std::size_t k = 0; k < m; ++k)
          if (k != i) rho -= ub[k] * ub[k];
      }
      s.set_rho1(i, a, rho);
      s.set_rho2(i, a, -rho);
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t d = 0; d < m; ++d) {
      Poly num(base);
      for (std::size_t i = 0; i < n; ++i) num += s.rho1(i, a) * ub[d].diff(i);
      try {
        s.set_c(a, a, d, (-num).divide_exact(ub[a]));
      } catch (const NotDivisible& e) {
        throw Error(std::string("structure function C_{aa}^d is not expressible: ") + e.what());
      }
    }

  Certificate cert;
  cert.subject = "dual tensor annihilates h1";
  cert.notes.push_back("constructed from the quadratic anchor ansatz and certified, not derived from a general recipe");
  const DualChartTensor lam = lambda_from_structure(s);
  if (!lam.linear()) throw CertificationFailed("constructed tensor is not linear: " + *lam.nonlinearity, cert);
  const auto first = annihilator_residuals(lam.tensor, h1, Slot::first);
  const auto second = annihilator_residuals(lam.tensor, h1, Slot::second);
  for (std::size_t k = 0; k < first.size(); ++k) {
    cert.add("Lambda2(dh1, d" + dual.var_name(k) + ") = 0", first[k]);
    cert.add("Lambda2(d" + dual.var_name(k) + ", dh1) = 0", second[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Poly r(base);
    for (std::size_t a = 0; a < m; ++a) r += s.rho1(i, a) * ub[a];
    cert.add("rho^" + std::to_string(i + 1) + "_a u_a = 0", r);
  }
  if (!cert.pass()) throw CertificationFailed("dual tensor construction failed certification", cert);
  return DualTensorConstruction{std::move(s), std::move(cert)};
}

} // namespace leibniz
