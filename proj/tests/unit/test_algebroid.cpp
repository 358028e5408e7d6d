#include <doctest.h>

#include "leibniz/brackets.hpp"
#include "leibniz/catalog.hpp"
#include "support.hpp"

using namespace leibniz;
using test::P;

namespace {

AlgebroidStructure maxwell_bloch() { return catalog_build("maxwell-bloch-algebroid").algebroids.at(0); }
AlgebroidStructure rigid_lambda1() { return catalog_build("rigid-body-algebroid").algebroids.at(0); }

Section sec(const AlgebroidStructure& a, const std::vector<std::string>& comps) {
  std::vector<Poly> p;
  for (const auto& s : comps) p.push_back(P(a.base_chart(), s));
  return Section(a, p);
}

} // namespace

TEST_SUITE("algebroid") {

TEST_CASE("lifting sections") {
  AlgebroidStructure a(Chart::standard(3), 3);
  const Chart& d = a.dual_chart();
  CHECK(lift_section(a, Section::basis(a, 0)) == P(d, "xi1"));
  CHECK(lift_section(a, sec(a, {"x2", "0", "0"})) == P(d, "x2*xi1"));
  Section s = sec(a, {"x1", "x2^2", "1"});
  Poly f = P(a.base_chart(), "x3 + 2");
  CHECK(lift_section(a, s.scaled(f)) == f.rechart(d) * lift_section(a, s));
  CHECK(lift_section(a, sec(a, {"0", "0", "0"})).is_zero());
  CHECK(lift_section(a, s).fiber_degree() == 1);
  CHECK_THROWS_AS(Section(a, {P(a.base_chart(), "x1")}), DimensionMismatch);
}

TEST_CASE("tensor of the Maxwell-Bloch algebroid") {
  AlgebroidStructure a = maxwell_bloch();
  DualChartTensor l = lambda_from_structure(a);
  CHECK(l.linear());
  const Chart& d = a.dual_chart();
  // indices: x1 x2 x3 xi1 xi2 xi3
  CHECK(l.tensor.at(3, 4) == P(d, "-x3*xi3"));
  CHECK(l.tensor.at(3, 1) == P(d, "x3"));
  CHECK(l.tensor.at(0, 4) == P(d, "1"));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(l.tensor.at(i, j).is_zero());
  CHECK(structure_from_lambda(l) == a);
  CHECK(classify_algebroid(a) == AlgebroidClass::general);
}

TEST_CASE("zero structure") {
  AlgebroidStructure a(Chart::standard(2), 3);
  DualChartTensor l = lambda_from_structure(a);
  CHECK(l.tensor.is_zero());
  CHECK(structure_from_lambda(l) == a);
  CHECK(classify_algebroid(a) == AlgebroidClass::pre_lie);
  Section s = sec(a, {"x1", "x2", "x1*x2"}), t = sec(a, {"1", "x1^2", "0"});
  CHECK(theorem1_check(a, s, t, P(a.base_chart(), "x1")).pass());
  CHECK(lift_section(a, section_bracket(a, s, t)).is_zero());
}

TEST_CASE("linearity certification") {
  AlgebroidStructure a(Chart::standard(2), 2);
  const Chart& d = a.dual_chart();
  TensorField2 t = lambda_from_structure(a).tensor;

  TensorField2 quad = t;
  quad.set(2, 3, P(d, "x1^2*xi1"));
  CHECK(make_dual_chart_tensor(quad, 2, 2).linear());
  quad.set(2, 3, P(d, "x1^2"));
  CHECK_FALSE(make_dual_chart_tensor(quad, 2, 2).linear());
  CHECK_THROWS_AS(structure_from_lambda(make_dual_chart_tensor(quad, 2, 2)), NotLinear);

  TensorField2 sq = t;
  sq.set(2, 3, P(d, "xi1*xi2"));
  CHECK_THROWS_AS(structure_from_lambda(make_dual_chart_tensor(sq, 2, 2)), NotLinear);

  TensorField2 xx = t;
  xx.set(0, 1, P(d, "x1"));
  DualChartTensor bad = make_dual_chart_tensor(xx, 2, 2);
  REQUIRE_FALSE(bad.linear());
  CHECK(bad.nonlinearity->find("x") != std::string::npos);
  CHECK_THROWS_AS(structure_from_lambda(bad), NotLinear);

  TensorField2 mixed = t;
  mixed.set(0, 2, P(d, "xi2"));
  CHECK_THROWS_AS(structure_from_lambda(make_dual_chart_tensor(mixed, 2, 2)), NotLinear);
}

TEST_CASE("structure entries live on the base") {
  AlgebroidStructure a(Chart::standard(2), 2);
  CHECK_THROWS_AS(a.set_c(0, 1, 0, P(a.dual_chart(), "xi1")), Error);
  CHECK_NOTHROW(a.set_c(0, 1, 0, P(a.base_chart(), "x1")));
}

TEST_CASE("section bracket") {
  AlgebroidStructure a = maxwell_bloch();
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = 0; q < 3; ++q) {
      Section s = section_bracket(a, Section::basis(a, p), Section::basis(a, q));
      for (std::size_t d = 0; d < 3; ++d) CHECK(s[d] == a.c(p, q, d));
    }
  Section r = section_bracket(a, Section::basis(a, 0), sec(a, {"0", "x1", "0"}));
  CHECK(r[0].is_zero());
  CHECK(r[1].is_zero());
  CHECK(r[2] == P(a.base_chart(), "-x1*x3"));

  const Chart& b = a.base_chart();
  CHECK(anchored_leibniz_check(a, Section::basis(a, 0), Section::basis(a, 1), P(b, "x1"), P(b, "x2")).pass());
}

TEST_CASE("section/tensor correspondence on reference structures") {
  AlgebroidStructure mb = maxwell_bloch();
  Poly f = P(mb.base_chart(), "x1");
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = 0; q < 3; ++q) CHECK(theorem1_check(mb, Section::basis(mb, p), Section::basis(mb, q), f).pass());

  AlgebroidStructure l1 = rigid_lambda1();
  std::mt19937_64 rng(41);
  for (int k = 0; k < 10; ++k) {
    Section s = test::random_section(l1, 1, rng), t = test::random_section(l1, 1, rng);
    CHECK(theorem1_check(l1, s, t, test::random_poly(l1.base_chart(), 2, 3, rng)).pass());
  }
}

TEST_CASE("classification") {
  CHECK(classify_algebroid(rigid_lambda1()) == AlgebroidClass::pre_lie);
  AlgebroidStructure l2 = catalog_build("rigid-body-metriplectic-algebroid").algebroids.at(1);
  CHECK(classify_algebroid(l2) == AlgebroidClass::symmetric);
  CHECK(symmetry_classify(lambda_from_structure(rigid_lambda1()).tensor) == Symmetry::antisymmetric);
  CHECK(symmetry_classify(lambda_from_structure(l2).tensor) == Symmetry::symmetric);

  AlgebroidStructure a(Chart::standard(2), 2);
  a.set_c(0, 1, 0, P(a.base_chart(), "x1"));
  a.set_c(1, 0, 0, P(a.base_chart(), "-x1"));
  CHECK(classify_algebroid(a) == AlgebroidClass::pre_lie);
  a.set_rho1(0, 0, P(a.base_chart(), "x2"));
  CHECK(classify_algebroid(a) == AlgebroidClass::general);
  a.set_rho2(0, 0, P(a.base_chart(), "x2"));
  CHECK(classify_algebroid(a) == AlgebroidClass::pre_lie);
}

TEST_CASE("dual-tensor construction for the rigid body family") {
  AlgebroidStructure l1 = catalog_build("rigid-body-algebroid", {}, true).algebroids.at(0);
  const Chart& d = l1.dual_chart();
  const Chart& b = l1.base_chart();
  Poly h1 = P(d, "a1*x1*xi1 + a2*x2*xi2 + a3*x3*xi3");
  DualTensorConstruction built = prop4_construct_dual_tensor(h1);
  CHECK(built.certificate.pass());
  const AlgebroidStructure& a2 = built.structure;
  CHECK(a2.rho1(0, 0) == P(b, "-a2^2*x2^2 - a3^2*x3^2"));
  CHECK(a2.rho1(0, 1) == P(b, "a1*a2*x1*x2"));
  CHECK(a2.rho1(2, 1) == P(b, "a2*a3*x2*x3"));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a) CHECK(a2.rho2(i, a) == -a2.rho1(i, a));

  TensorField2 lambda2 = lambda_from_structure(a2).tensor;
  CHECK(lambda2.at(3, 3) == P(d, "(a2^2*x2^2 + a3^2*x3^2)*x1^-1*xi1 - (a2^2*x2*xi2 + a3^2*x3*xi3)"));
  CHECK(lambda2.at(4, 4) == P(d, "(a1^2*x1^2 + a3^2*x3^2)*x2^-1*xi2 - (a1^2*x1*xi1 + a3^2*x3*xi3)"));
  CHECK(lambda2.at(3, 4).is_zero());
  CHECK(annihilator_check(lambda2, h1, Slot::first));
  CHECK(annihilator_check(lambda2, h1, Slot::second));
}

TEST_CASE("dual-tensor construction errors") {
  Chart d = Chart::standard(3, 3);
  CHECK_THROWS_AS(prop4_construct_dual_tensor(P(d, "x1*xi1 + x2*xi2")), Error);
  CHECK_THROWS_AS(prop4_construct_dual_tensor(P(d, "x1*xi1^2 + x2*xi2 + xi3")), Error);
  CHECK_THROWS_AS(prop4_construct_dual_tensor(P(Chart::standard(3, 2), "xi1 + xi2")), Error);
}

TEST_CASE("dual-tensor construction is always certified") {
  std::mt19937_64 rng(8);
  Chart d = Chart::standard(3, 3);
  std::uniform_int_distribution<int> e(0, 2), coeff(1, 5);
  int built = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Poly h1(d);
    for (std::size_t a = 0; a < 3; ++a) {
      Exponents ex(d.num_vars(), 0);
      for (std::size_t i = 0; i < 3; ++i) ex[i] = e(rng);
      ex[3 + a] = 1;
      h1 += Poly::monomial(d, ex, coeff(rng));
    }
    if (trial % 5 == 0) h1 += P(d, "x1*xi2");
    try {
      DualTensorConstruction r = prop4_construct_dual_tensor(h1);
      ++built;
      CHECK(r.certificate.pass());
      CHECK(annihilator_check(lambda_from_structure(r.structure).tensor, h1, Slot::first));
      CHECK(classify_algebroid(r.structure) == AlgebroidClass::symmetric);
    } catch (const CertificationFailed& ex) {
      CHECK_FALSE(ex.certificate.pass());
    } catch (const Error&) {
    }
  }
  CHECK(built >= 15);
}

TEST_CASE("round trip on random structures") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    AlgebroidStructure a = test::random_structure(3, 2 + trial % 2, 2, rng);
    DualChartTensor l = lambda_from_structure(a);
    REQUIRE(l.linear());
    CHECK(structure_from_lambda(l) == a);
    CHECK(lambda_from_structure(structure_from_lambda(l)).tensor == l.tensor);
  }
}

TEST_CASE("lifted sections pair to fiber-linear functions") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebroidStructure a = test::random_structure(3, 3, 2, rng);
    TensorField2 l = lambda_from_structure(a).tensor;
    Poly v = bracket_apply(l, lift_section(a, test::random_section(a, 2, rng)), lift_section(a, test::random_section(a, 2, rng)));
    CHECK(v.fiber_degree() <= 1);
  }
}

TEST_CASE("section/tensor correspondence on random structures") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebroidStructure a = test::random_structure(3, 3, 2, rng);
    Section s = test::random_section(a, 2, rng), t = test::random_section(a, 2, rng);
    Poly f = test::random_poly(a.base_chart(), 2, 3, rng), g = test::random_poly(a.base_chart(), 2, 3, rng);
    Certificate c = theorem1_check(a, s, t, f);
    CHECK(c.pass());
    CHECK(c.checks.size() >= 5);
    CHECK(anchored_leibniz_check(a, s, t, f, g).pass());
  }
}

}
