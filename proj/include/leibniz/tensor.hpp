#ifndef LEIBNIZ_TENSOR_HPP
#define LEIBNIZ_TENSOR_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leibniz/poly.hpp"

namespace leibniz {

/// 2-contravariant tensor field in chart coordinates: a d x d matrix of
/// polynomials, d = chart.dim(). The bracket it defines is
///   [f, h] = sum_{mu,nu} (d_mu f) B^{mu nu} (d_nu h),
/// so the row index is the first bracket slot.
class TensorField2 {
public:
  static TensorField2 zero(const Chart& chart);
  /// Rows of polynomial strings in the text syntax.
  static TensorField2 parse(const Chart& chart, const std::vector<std::vector<std::string>>& rows);

  const Chart& chart() const { return chart_; }
  std::size_t dim() const { return chart_.dim(); }

  const Poly& at(std::size_t mu, std::size_t nu) const { return entries_.at(mu * dim() + nu); }
  void set(std::size_t mu, std::size_t nu, Poly value);

  TensorField2 transpose() const;
  TensorField2 operator-() const;
  friend TensorField2 operator+(const TensorField2& a, const TensorField2& b);
  friend TensorField2 operator-(const TensorField2& a, const TensorField2& b);
  friend bool operator==(const TensorField2& a, const TensorField2& b);

  bool is_zero() const;
  TensorField2 rechart(const Chart& target) const;
  TensorField2 bind_params(const std::map<std::string, Rational>& values) const;

  /// Numeric matrix at a point (row-major).
  std::vector<double> eval(std::span<const double> point) const;
  /// Determinant at a sample point; diagnostic for nondegeneracy only.
  double determinant_at(std::span<const double> point) const;

  std::vector<std::vector<std::string>> to_strings() const;

private:
  explicit TensorField2(Chart chart);

  Chart chart_;
  std::vector<Poly> entries_;
};

/// Polynomial vector field, one component per chart coordinate.
class VectorFieldPoly {
public:
  VectorFieldPoly(Chart chart, std::vector<Poly> components);

  const Chart& chart() const { return chart_; }
  const std::vector<Poly>& components() const { return components_; }
  const Poly& operator[](std::size_t i) const { return components_.at(i); }
  std::size_t size() const { return components_.size(); }

  /// Directional derivative X(f) = sum_mu X^mu d_mu f.
  Poly apply(const Poly& f) const;

  friend bool operator==(const VectorFieldPoly& a, const VectorFieldPoly& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

private:
  Chart chart_;
  std::vector<Poly> components_;
};

enum class Symmetry { antisymmetric, symmetric, general };

/// Exact classification by zero-testing B + B^T and B - B^T. The zero
/// tensor is reported antisymmetric.
Symmetry symmetry_classify(const TensorField2& b);
const char* to_string(Symmetry s);

/// Antisymmetric P with symmetric g on one chart, certified at construction.
class MetriplecticPair {
public:
  MetriplecticPair(TensorField2 p, TensorField2 g);

  const TensorField2& p() const { return p_; }
  const TensorField2& g() const { return g_; }
  const Chart& chart() const { return p_.chart(); }
  TensorField2 sum() const { return p_ + g_; }

private:
  TensorField2 p_;
  TensorField2 g_;
};

/// Gradient over chart coordinates (parameters excluded).
std::vector<Poly> gradient(const Poly& f);

} // namespace leibniz

#endif
