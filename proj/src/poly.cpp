#include "leibniz/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

int total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

} // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total(a), db = total(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(const Chart& chart, const Rational& c) {
  Poly p(chart);
  Rational v = c;
  v.canonicalize();
  p.add_term(Exponents(chart.num_vars(), 0), v);
  return p;
}

Poly Poly::variable(const Chart& chart, std::size_t index) {
  if (index >= chart.num_vars()) throw UnknownVariable("variable index " + std::to_string(index) + " out of range");
  Exponents e(chart.num_vars(), 0);
  e[index] = 1;
  Poly p(chart);
  p.add_term(e, Rational(1));
  return p;
}

Poly Poly::variable(const Chart& chart, const std::string& name) {
  auto i = chart.index_of(name);
  if (!i) throw UnknownVariable("unknown variable '" + name + "' for chart " + chart.describe());
  return variable(chart, *i);
}

Poly Poly::monomial(const Chart& chart, Exponents exps, const Rational& c) {
  if (exps.size() != chart.num_vars()) throw DimensionMismatch("exponent vector length does not match chart");
  Poly p(chart);
  Rational v = c;
  v.canonicalize();
  p.add_term(exps, v);
  p.check_degree_cap();
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_chart(const Poly& other, const char* what) const {
  if (chart_ != other.chart_)
    throw ChartMismatch(std::string(what) + ": chart mismatch " + chart_.describe() + " vs " + other.chart_.describe());
}

void Poly::check_degree_cap() const {
  if (auto d = degree(); d && *d > chart_.degree_cap())
    throw DegreeCapExceeded("polynomial degree " + std::to_string(*d) + " exceeds cap " +
                            std::to_string(chart_.degree_cap()));
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

std::optional<Rational> Poly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::optional<int> Poly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return total(terms_.begin()->first);
}

int Poly::max_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first.at(var);
  for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
  return m;
}

int Poly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first.at(var);
  for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
  return m;
}

int Poly::fiber_degree() const {
  int m = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t i = chart_.base_dim(); i < chart_.dim(); ++i) d += e[i];
    m = std::max(m, d);
  }
  return m;
}

bool Poly::is_polynomial() const {
  for (const auto& [e, c] : terms_)
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) return false;
  return true;
}

bool Poly::depends_on(std::size_t var) const {
  for (const auto& [e, c] : terms_)
    if (e.at(var) != 0) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_same_chart(rhs, "add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_same_chart(rhs, "sub");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_chart(b, "mul");
  Poly r(a.chart_);
  if (a.is_zero() || b.is_zero()) return r;
  if (*a.degree() + *b.degree() > a.chart_.degree_cap())
    throw DegreeCapExceeded("product degree " + std::to_string(*a.degree() + *b.degree()) + " exceeds cap " +
                            std::to_string(a.chart_.degree_cap()));
  Exponents e(a.chart_.num_vars());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c;
  k.canonicalize();
  for (auto& [e, v] : terms_) v *= k;
  return *this;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(chart_, 1);
  for (unsigned i = 0; i < k; ++i) r *= *this;
  return r;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= chart_.num_vars()) throw UnknownVariable("variable index " + std::to_string(var) + " out of range");
  Poly r(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Poly Poly::diff(const std::string& name) const {
  auto i = chart_.index_of(name);
  if (!i) throw UnknownVariable("unknown variable '" + name + "' for chart " + chart_.describe());
  return diff(*i);
}

Poly Poly::divide_exact(const Poly& divisor) const {
  require_same_chart(divisor, "divide");
  if (divisor.is_zero()) throw NotDivisible("division by the zero polynomial");
  if (divisor.is_monomial()) {
    const auto& [de, dc] = *divisor.terms_.begin();
    Poly r(chart_);
    Exponents e(chart_.num_vars());
    for (const auto& [te, tc] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = te[i] - de[i];
      r.add_term(e, tc / dc);
    }
    return r;
  }
  if (!is_polynomial() || !divisor.is_polynomial())
    throw NotDivisible("exact division by a multi-term divisor requires nonnegative exponents");
  const auto& [lead_e, lead_c] = *divisor.terms_.begin();
  Poly rem = *this, quot(chart_);
  Exponents e(chart_.num_vars());
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.begin();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = re[i] - lead_e[i];
      if (e[i] < 0) throw NotDivisible(to_string() + " is not divisible by " + divisor.to_string());
    }
    Poly step = monomial(chart_, e, rc / lead_c);
    quot += step;
    rem -= step * divisor;
  }
  return quot;
}

double Poly::eval(std::span<const double> point) const {
  const std::size_t nv = chart_.num_vars(), nc = chart_.dim();
  if (point.size() != nv && point.size() != nc)
    throw DimensionMismatch("evaluation point has " + std::to_string(point.size()) + " entries, chart needs " +
                            std::to_string(nc) + (nv != nc ? " or " + std::to_string(nv) : std::string()));
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (std::size_t i = 0; i < nv; ++i) {
      if (e[i] == 0) continue;
      if (i >= point.size()) throw DimensionMismatch("polynomial depends on parameter '" + chart_.var_name(i) + "' with no value");
      const double v = point[i];
      if (e[i] > 0)
        for (int k = 0; k < e[i]; ++k) m *= v;
      else
        for (int k = 0; k < -e[i]; ++k) m /= v;
    }
    acc += m;
  }
  return acc;
}

Poly Poly::rechart(const Chart& target) const {
  if (target == chart_) return *this;
  std::vector<std::size_t> map(chart_.num_vars());
  std::vector<bool> present(chart_.num_vars(), false);
  for (std::size_t i = 0; i < chart_.num_vars(); ++i) {
    if (auto j = target.index_of(chart_.var_name(i))) {
      map[i] = *j;
      present[i] = true;
    }
  }
  Poly r(target);
  Exponents e(target.num_vars());
  for (const auto& [te, tc] : terms_) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < te.size(); ++i) {
      if (te[i] == 0) continue;
      if (!present[i])
        throw ChartMismatch("variable '" + chart_.var_name(i) + "' does not exist in chart " + target.describe());
      e[map[i]] = te[i];
    }
    r.add_term(e, tc);
  }
  return r;
}

Poly Poly::bind_params(const std::map<std::string, Rational>& values) const {
  std::vector<std::string> remaining;
  for (const auto& p : chart_.param_names())
    if (!values.count(p)) remaining.push_back(p);
  const Chart target = chart_.with_params(remaining);
  Poly r(target);
  Exponents e(target.num_vars());
  for (const auto& [te, tc] : terms_) {
    Rational c = tc;
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < te.size(); ++i) {
      const auto& name = chart_.var_name(i);
      if (i >= chart_.dim()) {
        if (auto it = values.find(name); it != values.end()) {
          if (te[i] != 0) {
            if (it->second == 0 && te[i] < 0) throw NotDivisible("parameter '" + name + "' bound to zero in a denominator");
            Rational f = 1;
            for (int k = 0; k < std::abs(te[i]); ++k) f *= it->second;
            c = te[i] > 0 ? Rational(c * f) : Rational(c / f);
          }
          continue;
        }
      }
      e[*target.index_of(name)] = te[i];
    }
    r.add_term(e, c);
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += chart_.var_name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      s += leibniz::to_string(mag);
    else if (mag == 1)
      s += mono;
    else
      s += leibniz::to_string(mag) + "*" + mono;
  }
  return s;
}

bool operator==(const Poly& a, const Poly& b) { return a.chart_ == b.chart_ && a.terms_ == b.terms_; }

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op) {
  switch (op) {
  case ArithOp::add: return a + b;
  case ArithOp::sub: return a - b;
  case ArithOp::mul: return a * b;
  }
  throw Error("unknown arithmetic op");
}

Poly poly_diff(const Poly& p, const std::string& var) { return p.diff(var); }

double poly_eval(const Poly& p, std::span<const double> point) { return p.eval(point); }

} // namespace leibniz
