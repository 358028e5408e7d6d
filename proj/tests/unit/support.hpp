#ifndef LEIBNIZ_TEST_SUPPORT_HPP
#define LEIBNIZ_TEST_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "leibniz/algebroid.hpp"
#include "leibniz/poly.hpp"

#include <doctest.h>

namespace doctest {
template <> struct StringMaker<leibniz::Poly> {
  static String convert(const leibniz::Poly& p) { return p.to_string().c_str(); }
};
} // namespace doctest

namespace test {

using namespace leibniz;

inline Poly P(const Chart& c, const std::string& text) { return parse_poly(c, text); }

inline Rational random_rational(std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Random polynomial in the chart coordinates (parameters untouched), total degree <= max_deg.
inline Poly random_poly(const Chart& c, int max_deg, int terms, std::mt19937_64& rng, int bound = 9) {
  Poly p(c);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, c.dim() - 1);
  for (int t = 0; t < terms; ++t) {
    Exponents e(c.num_vars(), 0);
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += Poly::monomial(c, e, random_rational(rng, bound));
  }
  return p;
}

/// Random polynomial on the base coordinates only (fiber exponents zero).
inline Poly random_base_poly(const Chart& c, int max_deg, int terms, std::mt19937_64& rng) {
  Poly p(c);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, c.base_dim() - 1);
  for (int t = 0; t < terms; ++t) {
    Exponents e(c.num_vars(), 0);
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += Poly::monomial(c, e, random_rational(rng));
  }
  return p;
}

/// Random algebroid structure with entries of degree <= max_deg.
inline AlgebroidStructure random_structure(std::size_t n, std::size_t m, int max_deg, std::mt19937_64& rng) {
  Chart base = Chart::standard(n);
  AlgebroidStructure a(base, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t d = 0; d < m; ++d) a.set_c(p, q, d, random_poly(base, max_deg, 2, rng));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < m; ++p) {
      a.set_rho1(i, p, random_poly(base, max_deg, 2, rng));
      a.set_rho2(i, p, random_poly(base, max_deg, 2, rng));
    }
  return a;
}

inline Section random_section(const AlgebroidStructure& a, int max_deg, std::mt19937_64& rng) {
  std::vector<Poly> comps;
  for (std::size_t k = 0; k < a.m(); ++k) comps.push_back(random_poly(a.base_chart(), max_deg, 2, rng));
  return Section(a, comps);
}

} // namespace test

#endif
