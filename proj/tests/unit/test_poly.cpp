#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace leibniz;
using test::P;

namespace {

double abs_eval(const Poly& p, const std::vector<double>& x) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) {
    double t = std::abs(to_double(c));
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(std::abs(x[i]), e[i]);
    s += t;
  }
  return s;
}

} // namespace

TEST_SUITE("polyalg") {

TEST_CASE("chart layout") {
  Chart c({"x1", "x2"}, {"xi1"}, {"a"});
  CHECK(c.dim() == 3);
  CHECK(c.num_vars() == 4);
  CHECK(c.is_fiber(2));
  CHECK_FALSE(c.is_fiber(0));
  CHECK(*c.index_of("a") == 3);
  CHECK_FALSE(c.index_of("zz").has_value());
  CHECK(c.base_chart() == Chart({"x1", "x2"}, {}, {"a"}));
  CHECK_THROWS_AS(Chart({"x1", "x1"}), Error);
}

TEST_CASE("arithmetic examples") {
  Chart c = Chart::standard(3);
  CHECK(poly_arith(P(c, "x1"), P(c, "x1"), ArithOp::add) == P(c, "2*x1"));
  CHECK(poly_arith(P(c, "x1*x2"), P(c, "x3"), ArithOp::mul) == P(c, "x1*x2*x3"));
  CHECK(poly_arith(P(c, "x1 + x2"), P(c, "x1 - x2"), ArithOp::mul) == P(c, "x1^2 - x2^2"));
  CHECK(poly_arith(P(c, "x1 + x2"), P(c, "x1 + x2"), ArithOp::sub).is_zero());
  Poly a = P(c, "x1^2 + x2"), b = P(c, "x3^3 - 1");
  CHECK(*(a * b).degree() == *a.degree() + *b.degree());
}

TEST_CASE("mixing charts is an error") {
  Chart c3 = Chart::standard(3), c2 = Chart::standard(2);
  CHECK_THROWS_AS(P(c3, "x1") + P(c2, "x1"), ChartMismatch);
  CHECK_THROWS_AS(P(c3, "x1") * P(c2, "x1"), ChartMismatch);
}

TEST_CASE("differentiation examples") {
  Chart c = Chart::standard(3);
  CHECK(poly_diff(P(c, "x1*x2*x3"), "x1") == P(c, "x2*x3"));
  CHECK(poly_diff(P(c, "7/3"), "x1").is_zero());
  CHECK(poly_diff(P(c, "1/2*x2^2 + 1/2*x3^2"), "x2") == P(c, "x2"));
  CHECK_THROWS_AS(poly_diff(P(c, "x1"), "y"), UnknownVariable);
  Chart d({"x1"}, {}, {"a"});
  CHECK(P(d, "a^2*x1").diff("a") == P(d, "2*a*x1"));
}

TEST_CASE("evaluation examples") {
  Chart c = Chart::standard(3);
  std::vector<double> pt = {1, 2, 3};
  CHECK(poly_eval(P(c, "x1*x2*x3"), pt) == doctest::Approx(6.0));
  CHECK(poly_eval(Poly(c), pt) == 0.0);
  Chart c2 = Chart::standard(2);
  std::vector<double> q = {3, 2};
  CHECK(poly_eval(P(c2, "x1^2 - x2^2"), q) == doctest::Approx(5.0));
  std::vector<double> bad = {1, 2};
  CHECK_THROWS_AS(poly_eval(P(c, "x1"), bad), DimensionMismatch);
  Chart withp({"x1"}, {}, {"a"});
  std::vector<double> one = {2};
  CHECK_THROWS_AS(poly_eval(P(withp, "a*x1"), one), Error);
  std::vector<double> both = {2, 5};
  CHECK(poly_eval(P(withp, "a*x1"), both) == doctest::Approx(10.0));
}

TEST_CASE("zero tests") {
  Chart c = Chart::standard(3);
  CHECK(poly_is_zero(P(c, "x1") - P(c, "x1")));
  CHECK(poly_is_zero(P(c, "x1*x2") - P(c, "x2*x1")));
  CHECK_FALSE(poly_is_zero(P(c, "x1 + x2")));
}

TEST_CASE("text syntax") {
  Chart c({"x1", "x2"}, {"xi1", "xi2", "xi3"});
  Poly p = P(c, "3/5*x1^2*xi3 - x2");
  CHECK(p.to_string() == "3/5*x1^2*xi3 - x2");
  CHECK(P(c, "0.6*x1") == P(c, "3/5*x1"));
  CHECK(P(c, "2.5e-1*x1") == P(c, "1/4*x1"));
  CHECK(P(c, "(x1 + x2)^2") == P(c, "x1^2 + 2*x1*x2 + x2^2"));
  CHECK(P(c, "-(x1 - 1)") == P(c, "1 - x1"));
  CHECK(P(c, "x1/2") == P(c, "1/2*x1"));
  CHECK(P(c, "0").is_zero());
  CHECK(P(c, "0").to_string() == "0");
  CHECK_THROWS_AS(P(c, "x1 +"), ParseError);
  CHECK_THROWS_AS(P(c, "x1 * (x2"), ParseError);
  CHECK_THROWS_AS(P(c, "x1^x2"), ParseError);
  CHECK_THROWS_AS(P(c, "x1 / (x1 + x2)"), Error);
  CHECK_THROWS_AS(P(c, "y7"), UnknownVariable);
}

TEST_CASE("degree cap") {
  Chart c({"x1"}, {}, {}, 16);
  Poly p = P(c, "x1^9");
  CHECK_THROWS_AS(p * p, DegreeCapExceeded);
  Chart big({"x1"}, {}, {}, 20);
  CHECK(*(P(big, "x1^9") * P(big, "x1^9")).degree() == 18);
}

TEST_CASE("exact division") {
  Chart c = Chart::standard(2);
  CHECK(P(c, "x1^2 - x2^2").divide_exact(P(c, "x1 - x2")) == P(c, "x1 + x2"));
  CHECK_THROWS_AS(P(c, "x1").divide_exact(P(c, "x1 + x2")), NotDivisible);
  Poly q = P(c, "x2^2").divide_exact(P(c, "2*x1"));
  CHECK_FALSE(q.is_polynomial());
  CHECK(q.to_string() == "1/2*x1^-1*x2^2");
  CHECK(q * P(c, "2*x1") == P(c, "x2^2"));
  CHECK(P(c, "x2^2*x1^-1") == q * Rational(2));
  CHECK_THROWS_AS(P(c, "x1").divide_exact(Poly(c)), NotDivisible);
}

TEST_CASE("parameters bind to rationals") {
  Chart c({"x1", "x2"}, {}, {"a", "b"});
  Poly p = P(c, "a*x1 + b^2*x2 + a*b");
  Poly q = p.bind_params({{"a", Rational(3, 5)}});
  CHECK(q.chart().param_names() == std::vector<std::string>{"b"});
  CHECK(q == P(q.chart(), "3/5*x1 + b^2*x2 + 3/5*b"));
  Poly r = q.bind_params({{"b", Rational(2)}});
  CHECK(r == P(Chart::standard(2), "3/5*x1 + 4*x2 + 6/5"));
  Chart lc({"x1"}, {}, {"a"});
  CHECK_THROWS_AS(P(lc, "a^-1*x1").bind_params({{"a", Rational(0)}}), NotDivisible);
}

TEST_CASE("rechart by names") {
  Chart small = Chart::standard(2), wide = Chart::standard(2, 2);
  Poly p = P(small, "x1*x2 + 1");
  Poly w = p.rechart(wide);
  CHECK(w == P(wide, "x1*x2 + 1"));
  CHECK(w.rechart(small) == p);
  CHECK_THROWS_AS(P(wide, "xi1").rechart(small), Error);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(20261015);
  Chart c({"u1", "u2", "u3", "u4", "u5", "u6"});
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = test::random_poly(c, 4, 5, rng), b = test::random_poly(c, 4, 5, rng), d = test::random_poly(c, 4, 5, rng);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a - a).is_zero());
    CHECK(a * Poly::constant(c, 1) == a);
  }
}

TEST_CASE("Leibniz rule of differentiation") {
  std::mt19937_64 rng(7);
  Chart c({"u1", "u2", "u3", "u4", "u5", "u6"});
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = test::random_poly(c, 4, 5, rng), b = test::random_poly(c, 4, 5, rng);
    std::size_t v = trial % c.dim();
    CHECK((a * b).diff(v) == a.diff(v) * b + a * b.diff(v));
  }
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  Chart c({"u1", "u2", "u3", "u4", "u5", "u6"});
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = test::random_poly(c, 4, 5, rng, 10), b = test::random_poly(c, 4, 5, rng, 10);
    std::vector<double> x(6);
    for (auto& v : x) v = coord(rng);
    double lhs = poly_eval(a * b, x), rhs = poly_eval(a, x) * poly_eval(b, x);
    // error measured against the magnitude of the summed terms, which bounds cancellation
    double scale = abs_eval(a, x) * abs_eval(b, x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(scale, 1.0));
    if (std::abs(rhs) > 1e-3 * scale) CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs) * 1e3);
  }
}

TEST_CASE("text round trip on random polynomials") {
  std::mt19937_64 rng(3);
  Chart c({"x1", "x2", "x3"}, {"xi1", "xi2"});
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = test::random_poly(c, 4, 6, rng);
    CHECK(P(c, a.to_string()) == a);
  }
}

}
