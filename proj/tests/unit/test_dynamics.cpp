#include <doctest.h>

#include <cmath>
#include <sstream>

#include "leibniz/brackets.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/dynamics.hpp"
#include "leibniz/trajectory_io.hpp"
#include "support.hpp"

using namespace leibniz;
using test::P;

namespace {

const std::vector<std::string> kRevisedRhs = {
    "a1*a2*x1*x2^2 + a1*a3*x1*x3^2 - a2^2*x1*x2^2 - a2*x2*x3 - a3^2*x1*x3^2 + a3*x2*x3",
    "-a1^2*x1^2*x2 + a1*a2*x1^2*x2 + a1*x1*x3 + a2*a3*x2*x3^2 - a3^2*x2*x3^2 - a3*x1*x3",
    "-a1^2*x1^2*x3 + a1*a3*x1^2*x3 - a1*x1*x2 - a2^2*x2^2*x3 + a2*a3*x2^2*x3 + a2*x1*x2"};

OdeSystem system_of(const Chart& c, const std::vector<std::string>& rhs) {
  std::vector<Poly> p;
  for (const auto& s : rhs) p.push_back(P(c, s));
  return OdeSystem(c, p, "test");
}

OdeSystem exponential() { return system_of(Chart({"x"}), {"x"}); }

// Conservative rigid body with a = (3/5, 2/5, 1/5).
OdeSystem rigid_poisson() {
  return system_of(Chart::standard(3), {"-1/5*x2*x3", "2/5*x1*x3", "-1/5*x1*x2"});
}

IntegratorConfig rk4(double step, double t_end) {
  return {.method = Method::rk4_fixed, .step = step, .t_end = t_end};
}

double rk4_endpoint_error(double step) {
  std::vector<double> x0 = {1.0};
  return std::abs(integrate(exponential(), x0, rk4(step, 1.0)).final_state()[0] - std::exp(1.0));
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("right-hand sides from single tensors") {
  Chart c({"x1", "x2", "x3"}, {}, {"gamma1", "gamma2", "gamma3"});
  TensorField2 g = TensorField2::parse(c, {{"gamma1", "0", "0"}, {"0", "gamma2", "0"}, {"0", "0", "gamma3"}});
  OdeSystem s = rhs_from_bracket(g, P(c, "x1*x2*x3"));
  CHECK(s.rhs()[0] == P(c, "gamma1*x2*x3"));
  CHECK(s.rhs()[1] == P(c, "gamma2*x1*x3"));
  CHECK(s.rhs()[2] == P(c, "gamma3*x1*x2"));
  for (const auto& r : rhs_from_bracket(TensorField2::zero(c), P(c, "x1*x2*x3")).rhs()) CHECK(r.is_zero());
  CHECK_THROWS_AS(rhs_from_bracket(g, P(Chart::standard(3), "x1")), ChartMismatch);
  CHECK_THROWS_AS(OdeSystem(c, {P(c, "x1")}, "short"), DimensionMismatch);
}

TEST_CASE("revised rigid body system") {
  CatalogEntry e = catalog_build("revised-rigid-body", {}, true);
  OdeSystem s = rhs_from_bracket(e.pair->sum(), e.hamiltonians[0]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.rhs()[i] == P(e.chart, kRevisedRhs[i]));
  // d/dt |x|^2/2 is minus a sum of squares
  Poly rate = symbolic_rate(s, P(e.chart, "1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2"));
  CHECK(rate == P(e.chart, "-(a1 - a2)^2*x1^2*x2^2 - (a1 - a3)^2*x1^2*x3^2 - (a2 - a3)^2*x2^2*x3^2"));
}

TEST_CASE("right-hand sides from pairs") {
  CatalogEntry ex2 = catalog_build("almost-leibniz-ex2");
  OdeSystem s = rhs_from_pair(*ex2.pair, ex2.hamiltonians[0], ex2.hamiltonians[1]);
  CHECK(s.rhs()[0] == P(ex2.chart, "x2"));
  CHECK(s.rhs()[1] == P(ex2.chart, "x1*x3"));
  CHECK(s.rhs()[2] == P(ex2.chart, "-x1*x2 - x2^2"));
  CatalogEntry ex3 = catalog_build("almost-leibniz-ex3");
  OdeSystem t = rhs_from_pair(*ex3.pair, ex3.hamiltonians[0], ex3.hamiltonians[1]);
  CHECK(t.rhs()[2] == P(ex3.chart, "-x1*x2 - x1*x3"));
  Poly h = ex2.hamiltonians[0];
  CHECK(rhs_from_pair(*ex2.pair, h, h).rhs() == rhs_from_bracket(ex2.pair->sum(), h).rhs());
}

TEST_CASE("Maxwell-Bloch algebroid system") {
  CatalogEntry e = catalog_build("maxwell-bloch-algebroid");
  const Chart& c = e.chart;
  OdeSystem s = rhs_from_algebroid(e.algebroids[0], e.hamiltonians[0]);
  const std::vector<std::string> expected = {"x2", "x1*x3", "-x1*x2",
                                             "x2*x3*xi2 - x2*x3*xi3 - x2*xi3 + x3*xi2", "-x1*x3*xi1", "x1*x2*xi1"};
  for (std::size_t i = 0; i < 6; ++i) CHECK(s.rhs()[i] == P(c, expected[i]));
  CHECK(s.rhs()[3] - P(c, "x3*(x2 - 1)*xi2 - x2*x3*xi3") == P(c, "2*x3*xi2 - x2*xi3"));
  CHECK(rhs_from_bracket(lambda_from_structure(e.algebroids[0]).tensor, e.hamiltonians[0]).rhs() == s.rhs());
}

TEST_CASE("rigid body algebroid systems") {
  CatalogEntry l1 = catalog_build("rigid-body-algebroid", {}, true);
  const Chart& c = l1.chart;
  OdeSystem s = rhs_from_algebroid(l1.algebroids[0], l1.hamiltonians[0]);
  CHECK(s.rhs()[0] == P(c, "(a3 - a2)*x2*x3"));
  CHECK(s.rhs()[3] == P(c, "a2*xi3*x2*x3 - a3*xi2*x2*x3 - a2*xi2*x3 + a3*xi3*x2"));

  CatalogEntry m = catalog_build("rigid-body-metriplectic-algebroid", {}, true);
  OdeSystem full = rhs_metriplectic_algebroid(m.algebroids[0], m.algebroids[1], m.hamiltonians[0], m.hamiltonians[1]);
  for (std::size_t i = 0; i < 6; ++i) CHECK(full.rhs()[i] == m.printed_rhs[i]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(full.rhs()[i] == P(c, kRevisedRhs[i]).rechart(c));
  CHECK(full.rhs()[0] == P(c, "(a3 - a2)*x2*x3 + a2*(a1 - a2)*x1*x2^2 + a3*(a1 - a3)*x1*x3^2"));

  AlgebroidStructure zero(m.algebroids[0].base_chart(), 3);
  OdeSystem reduced = rhs_metriplectic_algebroid(m.algebroids[0], zero, m.hamiltonians[0], m.hamiltonians[1]);
  CHECK(reduced.rhs() == s.rhs());

  AlgebroidStructure other(Chart::standard(3), 2);
  CHECK_THROWS_AS(rhs_metriplectic_algebroid(m.algebroids[0], other, m.hamiltonians[0], m.hamiltonians[1]), Error);
}

TEST_CASE("dual paths agree on random structures") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebroidStructure a = test::random_structure(3, 3, 2, rng);
    Poly h = test::random_poly(a.dual_chart(), 2, 4, rng);
    CHECK(rhs_from_algebroid(a, h).rhs() == rhs_from_bracket(lambda_from_structure(a).tensor, h).rhs());
  }
}

TEST_CASE("constant trajectories") {
  Chart c = Chart::standard(2);
  OdeSystem zero(c, {Poly(c), Poly(c)}, "zero");
  std::vector<double> x0 = {0.3, -2.0};
  for (Method m : {Method::rk4_fixed, Method::rk45_adaptive}) {
    IntegratorConfig cfg{.method = m, .step = 0.1, .t_end = 2.0};
    Trajectory t = integrate(zero, x0, cfg);
    CHECK(t.times.front() == 0.0);
    CHECK(t.times.back() == 2.0);
    for (const auto& s : t.states) CHECK(s == x0);
    ObservationReport r = observe(zero, t, {P(c, "x1^2 + x2")});
    CHECK(r.series[0].max_drift == 0.0);
    CHECK(r.series[0].verdict() == "constant");
  }
}

TEST_CASE("classical RK4 on the exponential") {
  CHECK(rk4_endpoint_error(1e-3) <= 1e-9);
  double e1 = rk4_endpoint_error(0.1), e2 = rk4_endpoint_error(0.05);
  CHECK(e1 / e2 >= 15.0);
  CHECK(integrate(exponential(), std::vector<double>{1.0}, rk4(1e-3, 1.0)).accepted_steps == 1000);
  CHECK(integrate(exponential(), std::vector<double>{1.0}, rk4(0.3, 1.0)).accepted_steps == 4);
}

TEST_CASE("adaptive integrator") {
  std::vector<double> x0 = {1.0};
  Trajectory t = integrate(exponential(), x0, IntegratorConfig{.t_end = 1.0});
  CHECK(std::abs(t.final_state()[0] - std::exp(1.0)) <= 1e-8);
  CHECK(t.times.back() == 1.0);
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);

  std::vector<double> r0 = {1.0, 0.5, 0.2};
  Trajectory a = integrate(rigid_poisson(), r0, {.abs_tol = 1e-10, .rel_tol = 1e-10, .t_end = 10.0});
  Trajectory b = integrate(rigid_poisson(), r0, {.abs_tol = 1e-12, .rel_tol = 1e-12, .t_end = 10.0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.final_state()[i] - b.final_state()[i]) <= 1e-8);
  CHECK(b.accepted_steps > a.accepted_steps);
}

TEST_CASE("integration is deterministic") {
  std::vector<double> r0 = {1.0, 0.5, 0.2};
  for (Method m : {Method::rk4_fixed, Method::rk45_adaptive}) {
    IntegratorConfig cfg{.method = m, .step = 1e-2, .t_end = 5.0};
    Trajectory a = integrate(rigid_poisson(), r0, cfg), b = integrate(rigid_poisson(), r0, cfg);
    std::ostringstream sa, sb;
    write_trajectory_csv(sa, a);
    write_trajectory_csv(sb, b);
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("Casimir of the conservative rigid body") {
  OdeSystem s = rigid_poisson();
  Poly casimir = P(s.chart(), "1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2");
  REQUIRE(symbolic_rate(s, casimir).is_zero());
  Trajectory t = integrate(s, std::vector<double>{1.0, 0.5, 0.2}, rk4(1e-3, 10.0));
  ObservationReport r = observe(s, t, {casimir});
  CHECK(r.series[0].max_drift <= 1e-8);
}

TEST_CASE("observing the revised rigid body") {
  CatalogEntry e = catalog_build("revised-rigid-body");
  OdeSystem s = e.derive();
  Poly half = P(e.chart, "1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2");
  Trajectory t = integrate(s, e.x0, IntegratorConfig{.t_end = 10.0});
  ObservationReport r = observe(s, t, {half}, 1e-12);
  CHECK(r.series[0].nonincreasing);
  CHECK_FALSE(r.series[0].nondecreasing);
  CHECK(r.series[0].verdict() == "nonincreasing");
  CHECK(r.series[0].values.size() == t.size());
  CHECK_THROWS_AS(observe(s, t, {P(Chart::standard(2), "x1")}), ChartMismatch);
}

TEST_CASE("Maxwell-Bloch base flow conserves both hamiltonians") {
  OdeSystem s = system_of(Chart::standard(3), {"x2", "x1*x3", "-x1*x2"});
  Poly h1 = P(s.chart(), "1/2*x2^2 + 1/2*x3^2"), h2 = P(s.chart(), "1/2*x1^2 + x3");
  REQUIRE(symbolic_rate(s, h1).is_zero());
  REQUIRE(symbolic_rate(s, h2).is_zero());
  Trajectory t = integrate(s, std::vector<double>{0.5, 0.5, 0.5}, rk4(1e-3, 10.0));
  ObservationReport r = observe(s, t, {h1, h2});
  CHECK(r.series[0].max_drift <= 1e-8);
  CHECK(r.series[1].max_drift <= 1e-8);
}

TEST_CASE("integration failures") {
  OdeSystem blow = system_of(Chart({"x"}), {"x^2"});
  std::vector<double> one = {1.0};
  try {
    integrate(blow, one, rk4(1e-2, 2.0));
    FAIL("expected blow-up");
  } catch (const IntegrationError& e) {
    CHECK(e.time > 0.9);
    CHECK(e.time < 1.2);
    CHECK(std::isfinite(e.partial.final_state()[0]));
  }
  try {
    integrate(blow, one, IntegratorConfig{.t_end = 2.0});
    FAIL("expected blow-up");
  } catch (const IntegrationError& e) {
    CHECK(e.time == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(integrate(exponential(), one, {.method = Method::rk4_fixed, .step = 1e-3, .t_end = 1.0, .max_steps = 10}),
                  IntegrationError);
  CHECK_THROWS_AS(integrate(rigid_poisson(), std::vector<double>{1, 0.5, 0.2}, {.t_end = 100.0, .max_steps = 20}),
                  IntegrationError);
  CHECK_THROWS_AS(integrate(exponential(), std::vector<double>{1.0, 2.0}, IntegratorConfig{}), DimensionMismatch);
  CHECK_THROWS_AS(integrate(exponential(), one, {.step = -1.0}), ParameterError);
  CHECK_THROWS_AS(integrate(exponential(), one, {.t_end = 0.0}), ParameterError);
  CHECK_THROWS_AS(integrate(exponential(), one, {.abs_tol = 0.0}), ParameterError);
  CHECK_THROWS_AS(integrate(exponential(), std::vector<double>{NAN}, IntegratorConfig{}), ParameterError);
}

TEST_CASE("parameters must be bound before integration") {
  CatalogEntry e = catalog_build("revised-rigid-body", {}, true);
  CHECK_THROWS_AS(integrate(e.derive(), e.x0, IntegratorConfig{.t_end = 1.0}), Error);
  OdeSystem bound = e.derive().bind_params({{"a1", Rational(3, 5)}, {"a2", Rational(2, 5)}, {"a3", Rational(1, 5)}});
  CHECK_NOTHROW(integrate(bound, e.x0, IntegratorConfig{.t_end = 1.0}));
}

TEST_CASE("compiled evaluation matches exact evaluation") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  Chart c = Chart::standard(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Poly p = test::random_poly(c, 4, 6, rng);
    std::vector<double> x(6);
    for (auto& v : x) v = coord(rng);
    CHECK(eval_compiled(p, x) == doctest::Approx(p.eval(x)).epsilon(1e-12));
  }
}

TEST_CASE("trajectory files round trip") {
  Trajectory t = integrate(rigid_poisson(), std::vector<double>{1.0, 0.5, 0.2}, IntegratorConfig{.t_end = 2.0});
  std::ostringstream csv;
  write_trajectory_csv(csv, t);
  CHECK(csv.str().rfind("t,x1,x2,x3\n", 0) == 0);
  std::istringstream in(csv.str());
  Trajectory back = read_trajectory_csv(in);
  CHECK(back.names == t.names);
  CHECK(back.times == t.times);
  CHECK(back.states == t.states);

  Trajectory j = trajectory_from_json(trajectory_to_json(t));
  CHECK(j.times == t.times);
  CHECK(j.states == t.states);
  CHECK(j.accepted_steps == t.accepted_steps);

  std::istringstream bad("t,x1\n0,1\n0,2\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad), ParseError);
  std::istringstream cols("t,x1\n0,1,2\n");
  CHECK_THROWS_AS(read_trajectory_csv(cols), ParseError);
  CHECK_THROWS_AS(trajectory_from_json("{\"names\": [\"x\"]}"), ParseError);
}

TEST_CASE("trajectory JSON carries observables") {
  OdeSystem s = rigid_poisson();
  Poly casimir = P(s.chart(), "1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2");
  Trajectory t = integrate(s, std::vector<double>{1.0, 0.5, 0.2}, IntegratorConfig{.t_end = 1.0});
  ObservationReport r = observe(s, t, {casimir});
  std::string text = trajectory_to_json(t, &r, {casimir.to_string()});
  CHECK(text.find("\"observables\"") != std::string::npos);
  CHECK(text.find("max_drift") != std::string::npos);
  CHECK(text.find("1/2*x1^2") != std::string::npos);
}

}
