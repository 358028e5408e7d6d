#ifndef LEIBNIZ_POLY_HPP
#define LEIBNIZ_POLY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/chart.hpp"
#include "leibniz/rational.hpp"

namespace leibniz {

/// Exponent vector, one entry per chart variable. Entries may be negative
/// (Laurent monomials), which is needed for structure functions such as
/// V/x that appear in dual-tensor constructions.
using Exponents = std::vector<int>;

/// Graded lexicographic order, largest monomial first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Exact sparse multivariate (Laurent) polynomial with rational coefficients.
///
/// Canonical form: no stored zero coefficients, terms kept in graded-lex
/// order. Equality and zero tests are therefore structural. All arithmetic
/// requires operands on the same chart.
class Poly {
public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit Poly(Chart chart) : chart_(std::move(chart)) {}

  static Poly constant(const Chart& chart, const Rational& c);
  static Poly variable(const Chart& chart, std::size_t index);
  static Poly variable(const Chart& chart, const std::string& name);
  static Poly monomial(const Chart& chart, Exponents exps, const Rational& c);

  const Chart& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; nullopt otherwise.
  std::optional<Rational> constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }

  /// Maximum total degree over all terms; nullopt for the zero polynomial.
  std::optional<int> degree() const;
  /// Max / min exponent of one variable over all terms (0 for the zero polynomial).
  int max_degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  /// Max total degree restricted to fiber coordinates.
  int fiber_degree() const;
  /// True iff no term involves a negative exponent.
  bool is_polynomial() const;
  /// True iff the polynomial involves any of the given variable indices.
  bool depends_on(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  Poly pow(unsigned k) const;

  /// Partial derivative with respect to variable `var` (coordinate or parameter).
  Poly diff(std::size_t var) const;
  Poly diff(const std::string& name) const;

  /// Exact quotient by `divisor`. A single-term divisor always divides
  /// (possibly producing negative exponents); otherwise multivariate
  /// division must leave a zero remainder. Throws NotDivisible.
  Poly divide_exact(const Poly& divisor) const;

  /// Floating evaluation. `point` holds either the chart coordinates (the
  /// polynomial must then be free of parameters) or all variables.
  double eval(std::span<const double> point) const;

  /// Re-express on another chart by matching variable names. Variables that
  /// occur here must exist in the target.
  Poly rechart(const Chart& target) const;

  /// Substitute rational values for parameter symbols; the result lives on
  /// `chart().with_params(remaining)`.
  Poly bind_params(const std::map<std::string, Rational>& values) const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_chart(const Poly& other, const char* what) const;
  void check_degree_cap() const;

  Chart chart_;
  TermMap terms_;
};

enum class ArithOp { add, sub, mul };

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op);
Poly poly_diff(const Poly& p, const std::string& var);
double poly_eval(const Poly& p, std::span<const double> point);
inline bool poly_is_zero(const Poly& p) { return p.is_zero(); }

/// Parses the text syntax: sums of terms such as `3/5*x1^2*xi3 - x2`.
/// Parentheses, integer powers (including negative ones on monomials) and
/// decimal literals are accepted. Variable names must belong to `chart`.
Poly parse_poly(const Chart& chart, std::string_view text);

} // namespace leibniz

#endif
