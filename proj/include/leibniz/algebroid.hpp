#ifndef LEIBNIZ_ALGEBROID_HPP
#define LEIBNIZ_ALGEBROID_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/certificate.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/tensor.hpp"

namespace leibniz {

/// Leibniz algebroid on the trivial bundle E = R^n x R^m over one chart.
///
/// Holds the structure functions C_{ab}^d of [e_a, e_b] = C_{ab}^d e_d and
/// the left/right anchors as n x m matrices with entry (i, a) = rho^i_a, so
/// rho(e_a) = rho^i_a d/dx^i. Every entry is a polynomial on the base chart.
class AlgebroidStructure {
public:
  /// Zero structure over `base` (which must have no fiber) with fiber dimension m.
  /// Fiber coordinates of the dual chart are named xi1..xim unless given.
  AlgebroidStructure(Chart base, std::size_t m, std::vector<std::string> fiber_names = {});

  std::size_t n() const { return base_.base_dim(); }
  std::size_t m() const { return m_; }
  const Chart& base_chart() const { return base_; }
  /// Chart (x^1..x^n, xi_1..xi_m) of the dual bundle E*.
  const Chart& dual_chart() const { return dual_; }

  const Poly& c(std::size_t a, std::size_t b, std::size_t d) const { return c_.at((a * m_ + b) * m_ + d); }
  const Poly& rho1(std::size_t i, std::size_t a) const { return rho1_.at(i * m_ + a); }
  const Poly& rho2(std::size_t i, std::size_t a) const { return rho2_.at(i * m_ + a); }

  void set_c(std::size_t a, std::size_t b, std::size_t d, Poly value);
  void set_rho1(std::size_t i, std::size_t a, Poly value);
  void set_rho2(std::size_t i, std::size_t a, Poly value);

  /// Fills an anchor from rows of polynomial strings (n rows, m columns).
  void parse_rho1(const std::vector<std::vector<std::string>>& rows);
  void parse_rho2(const std::vector<std::vector<std::string>>& rows);

  AlgebroidStructure bind_params(const std::map<std::string, Rational>& values) const;

  friend bool operator==(const AlgebroidStructure& a, const AlgebroidStructure& b);

private:
  Poly checked(Poly value) const;
  void parse_anchor(std::vector<Poly>& target, const std::vector<std::vector<std::string>>& rows);

  Chart base_;
  Chart dual_;
  std::size_t m_;
  std::vector<Poly> c_;
  std::vector<Poly> rho1_;
  std::vector<Poly> rho2_;
};

/// Section sigma = sigma^a e_a, components are base polynomials.
class Section {
public:
  Section(const AlgebroidStructure& a, std::vector<Poly> components);
  /// Basis section e_a (0-based).
  static Section basis(const AlgebroidStructure& a, std::size_t index);

  const std::vector<Poly>& components() const { return components_; }
  const Poly& operator[](std::size_t a) const { return components_.at(a); }
  std::size_t size() const { return components_.size(); }
  Section scaled(const Poly& f) const;

  friend bool operator==(const Section& a, const Section& b) { return a.components_ == b.components_; }

private:
  std::vector<Poly> components_;
};

/// Tensor on the dual chart, with the result of the linearity certification.
struct DualChartTensor {
  TensorField2 tensor;
  std::size_t n;
  std::size_t m;
  /// Empty when the tensor is linear; otherwise names the first offending block/entry.
  std::optional<std::string> nonlinearity;

  bool linear() const { return !nonlinearity.has_value(); }
};

/// Certifies the linear layout: xi-xi block homogeneous of degree 1 in xi,
/// mixed blocks xi-free, x-x block zero. Returns the first violation.
std::optional<std::string> certify_linear(const TensorField2& t, std::size_t n, std::size_t m);
DualChartTensor make_dual_chart_tensor(TensorField2 t, std::size_t n, std::size_t m);

/// Fiberwise-linear function xi_a sigma^a(x) on E*.
Poly lift_section(const AlgebroidStructure& a, const Section& sigma);

/// Lambda with Lambda(dxi_a, dxi_b) = C_{ab}^d xi_d, Lambda(dxi_a, dx^i) = rho1^i_a,
/// Lambda(dx^i, dxi_a) = -rho2^i_a, Lambda(dx^i, dx^j) = 0.
DualChartTensor lambda_from_structure(const AlgebroidStructure& a);

/// Inverse of lambda_from_structure. Throws NotLinear naming the offending entry.
AlgebroidStructure structure_from_lambda(const DualChartTensor& lambda);

/// rho(sigma)(f) = sigma^a rho^i_a d_i f for the left (first) or right (second) anchor.
Poly anchor_apply(const AlgebroidStructure& a, bool left, const Section& sigma, const Poly& f);

/// Bilinear extension of the basis brackets compatible with the anchored Leibniz rule:
/// [s1,s2]^d = s1^a s2^b C_{ab}^d + s1^a rho1^i_a d_i s2^d - s2^b rho2^i_b d_i s1^d.
Section section_bracket(const AlgebroidStructure& a, const Section& s1, const Section& s2);

/// Exact check of [f s1, g s2] = f rho1(s1)(g) s2 - g rho2(s2)(f) s1 + f g [s1, s2].
Certificate anchored_leibniz_check(const AlgebroidStructure& a, const Section& s1, const Section& s2,
                                   const Poly& f, const Poly& g);

/// Exact check of the section/tensor correspondence:
///   lift([s1,s2]) = Lambda(d lift s1, d lift s2)
///   rho1(s)(f) = Lambda(d lift s, df)       for s = s1, s2
///   rho2(s)(f) = -Lambda(df, d lift s)      for s = s1, s2
/// with f pulled back to E* as a xi-free polynomial.
Certificate theorem1_check(const AlgebroidStructure& a, const Section& s1, const Section& s2, const Poly& f);

enum class AlgebroidClass { pre_lie, symmetric, general };

/// pre_lie: C antisymmetric in (a,b) and rho1 = rho2; symmetric: C symmetric
/// and rho2 = -rho1. Structures meeting both report pre_lie.
AlgebroidClass classify_algebroid(const AlgebroidStructure& a);
const char* to_string(AlgebroidClass c);

class CertificationFailed : public Error {
public:
  CertificationFailed(const std::string& what, Certificate cert) : Error(what), certificate(std::move(cert)) {}
  Certificate certificate;
};

struct DualTensorConstruction {
  AlgebroidStructure structure;
  Certificate certificate;
};

/// Builds a symmetric algebroid whose tensor annihilates a fiber-linear
/// h1 = xi_a u^a(x) (requires n = m):
///   rho^{ij} = u_i u_j (i != j),  rho^{ii} = -sum_{k != i} u_k^2,
///   left anchor rho, right anchor -rho,
///   C_{aa}^d = -(rho^i_a d_i u_d) / u_a,  C_{ab}^d = 0 (a != b).
/// The result is only returned once Lambda(dh1, .) = Lambda(., dh1) = 0 is
/// certified exactly. Throws Error when some u_a is zero or a division is
/// not exact, CertificationFailed when the annihilation check fails.
DualTensorConstruction prop4_construct_dual_tensor(const Poly& h1);

} // namespace leibniz

#endif
