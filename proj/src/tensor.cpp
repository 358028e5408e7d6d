#include "leibniz/tensor.hpp"

#include <cmath>
#include <utility>

#include "leibniz/errors.hpp"

namespace leibniz {

TensorField2::TensorField2(Chart chart) : chart_(std::move(chart)) {
  entries_.assign(chart_.dim() * chart_.dim(), Poly(chart_));
}

TensorField2 TensorField2::zero(const Chart& chart) { return TensorField2(chart); }

TensorField2 TensorField2::parse(const Chart& chart, const std::vector<std::vector<std::string>>& rows) {
  TensorField2 t(chart);
  if (rows.size() != t.dim()) throw DimensionMismatch("tensor needs " + std::to_string(t.dim()) + " rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != t.dim())
      throw DimensionMismatch("tensor row " + std::to_string(i) + " needs " + std::to_string(t.dim()) + " entries");
    for (std::size_t j = 0; j < rows[i].size(); ++j) t.set(i, j, parse_poly(chart, rows[i][j]));
  }
  return t;
}

void TensorField2::set(std::size_t mu, std::size_t nu, Poly value) {
  if (value.chart() != chart_) throw ChartMismatch("tensor entry chart mismatch");
  entries_.at(mu * dim() + nu) = std::move(value);
}

TensorField2 TensorField2::transpose() const {
  TensorField2 t(chart_);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) t.set(j, i, at(i, j));
  return t;
}

TensorField2 TensorField2::operator-() const {
  TensorField2 t(*this);
  for (auto& e : t.entries_) e = -e;
  return t;
}

TensorField2 operator+(const TensorField2& a, const TensorField2& b) {
  if (a.chart_ != b.chart_) throw ChartMismatch("tensor sum: chart mismatch");
  TensorField2 t(a);
  for (std::size_t k = 0; k < t.entries_.size(); ++k) t.entries_[k] += b.entries_[k];
  return t;
}

TensorField2 operator-(const TensorField2& a, const TensorField2& b) { return a + (-b); }

bool operator==(const TensorField2& a, const TensorField2& b) {
  return a.chart_ == b.chart_ && a.entries_ == b.entries_;
}

bool TensorField2::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

TensorField2 TensorField2::rechart(const Chart& target) const {
  if (target.dim() != dim()) throw DimensionMismatch("rechart of a tensor must preserve dimension");
  TensorField2 t(target);
  for (std::size_t k = 0; k < entries_.size(); ++k) t.entries_[k] = entries_[k].rechart(target);
  return t;
}

TensorField2 TensorField2::bind_params(const std::map<std::string, Rational>& values) const {
  std::vector<Poly> bound;
  bound.reserve(entries_.size());
  for (const auto& e : entries_) bound.push_back(e.bind_params(values));
  TensorField2 t(bound.empty() ? chart_ : bound.front().chart());
  t.entries_ = std::move(bound);
  return t;
}

std::vector<double> TensorField2::eval(std::span<const double> point) const {
  std::vector<double> m(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) m[k] = entries_[k].eval(point);
  return m;
}

double TensorField2::determinant_at(std::span<const double> point) const {
  std::vector<double> m = eval(point);
  const std::size_t n = dim();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

std::vector<std::vector<std::string>> TensorField2::to_strings() const {
  std::vector<std::vector<std::string>> rows(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) rows[i].push_back(at(i, j).to_string());
  return rows;
}

VectorFieldPoly::VectorFieldPoly(Chart chart, std::vector<Poly> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.dim())
    throw DimensionMismatch("vector field needs " + std::to_string(chart_.dim()) + " components");
  for (const auto& c : components_)
    if (c.chart() != chart_) throw ChartMismatch("vector field component chart mismatch");
}

Poly VectorFieldPoly::apply(const Poly& f) const {
  if (f.chart() != chart_) throw ChartMismatch("vector field applied to function on another chart");
  Poly r(chart_);
  for (std::size_t mu = 0; mu < components_.size(); ++mu) r += components_[mu] * f.diff(mu);
  return r;
}

Symmetry symmetry_classify(const TensorField2& b) {
  bool anti = true, sym = true;
  for (std::size_t i = 0; i < b.dim() && (anti || sym); ++i)
    for (std::size_t j = i; j < b.dim(); ++j) {
      if (anti && !(b.at(i, j) + b.at(j, i)).is_zero()) anti = false;
      if (sym && !(b.at(i, j) - b.at(j, i)).is_zero()) sym = false;
    }
  if (anti) return Symmetry::antisymmetric;
  if (sym) return Symmetry::symmetric;
  return Symmetry::general;
}

const char* to_string(Symmetry s) {
  switch (s) {
  case Symmetry::antisymmetric: return "antisymmetric";
  case Symmetry::symmetric: return "symmetric";
  case Symmetry::general: return "general";
  }
  return "?";
}

MetriplecticPair::MetriplecticPair(TensorField2 p, TensorField2 g) : p_(std::move(p)), g_(std::move(g)) {
  if (p_.chart() != g_.chart()) throw ChartMismatch("metriplectic pair: P and g on different charts");
  if (symmetry_classify(p_) != Symmetry::antisymmetric) throw Error("metriplectic pair: P is not antisymmetric");
  if (!(g_ - g_.transpose()).is_zero()) throw Error("metriplectic pair: g is not symmetric");
}

std::vector<Poly> gradient(const Poly& f) {
  std::vector<Poly> g;
  g.reserve(f.chart().dim());
  for (std::size_t mu = 0; mu < f.chart().dim(); ++mu) g.push_back(f.diff(mu));
  return g;
}

} // namespace leibniz
