#include "doctest.h"

#include "exactfield/exactfield.hpp"

using namespace exactfield;

namespace {
FieldPtr golden() {
  // x^2 - x - 1, root phi in (1, 2)
  return NumberField::define(MonicIntPoly::from_ints({-1, -1, 1}), Rat(1), Rat(2));
}
FieldPtr cubic_p3() {
  // X^3 - 24 X^2 + 67 X - 36, largest root in (20, 21)
  return NumberField::define(MonicIntPoly::from_ints({-36, 67, -24, 1}), Rat(20), Rat(21));
}
}  // namespace

TEST_CASE("polynomial division and gcd") {
  QPoly a = QPoly::from_ints({-1, 0, 1});       // x^2 - 1
  QPoly b = QPoly::from_ints({1, 1});           // x + 1
  auto [q, r] = divmod(a, b);
  CHECK(r.is_zero());
  CHECK(q == QPoly::from_ints({-1, 1}));
  CHECK(poly_gcd(a, b) == b.monic());
  // gcd(x^3-1, x^2-1) = x - 1
  CHECK(poly_gcd(QPoly::from_ints({-1, 0, 0, 1}), a) == QPoly::from_ints({-1, 1}));
}

TEST_CASE("sturm root counting") {
  // (x^2-2)(x^2-3) has roots +-sqrt2, +-sqrt3
  QPoly p = QPoly::from_ints({6, 0, -5, 0, 1});
  CHECK(sturm_count(p, Rat(0), Rat(2)) == 2);
  CHECK(sturm_count(p, Rat(-2), Rat(0)) == 2);
  CHECK(sturm_count(p, Rat(1), Rat(15, 10)) == 1);
  CHECK(sturm_count(p, Rat(2), Rat(3)) == 0);
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 4);
  // sorted increasingly: -sqrt3 < -sqrt2 < sqrt2 < sqrt3
  CHECK(roots[0].second <= roots[1].first);
  CHECK(roots[2].second <= roots[3].first);
}

TEST_CASE("factorization degree <= 4") {
  // [PAPER-style oracle] P_1 = (X-1)(X^2-7X+4), P_2 = (X-2)(X^2-12X+8)
  auto f1 = factor_monic(MonicIntPoly::from_ints({-4, 11, -8, 1}));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == MonicIntPoly::from_ints({-1, 1}));
  CHECK(f1[1] == MonicIntPoly::from_ints({4, -7, 1}));
  auto f2 = factor_monic(MonicIntPoly::from_ints({-16, 32, -14, 1}));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == MonicIntPoly::from_ints({-2, 1}));
  CHECK(f2[1] == MonicIntPoly::from_ints({8, -12, 1}));
  // (x^2-2)(x^2-3): two quadratics, no rational roots
  auto f3 = factor_monic(MonicIntPoly::from_ints({6, 0, -5, 0, 1}));
  REQUIRE(f3.size() == 2);
  CHECK(f3[0].degree() == 2);
  CHECK(f3[1].degree() == 2);
  // irreducible quartic x^4 - x - 1
  CHECK(is_irreducible(MonicIntPoly::from_ints({-1, -1, 0, 0, 1})));
  // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
  auto f4 = factor_monic(MonicIntPoly::from_ints({4, 0, 0, 0, 1}));
  REQUIRE(f4.size() == 2);
  CHECK(f4[0].degree() == 2);
  // cubic with no rational root is irreducible
  CHECK(is_irreducible(MonicIntPoly::from_ints({-36, 67, -24, 1})));
}

TEST_CASE("field definition validation") {
  CHECK_THROWS(NumberField::define(MonicIntPoly::from_ints({-1, 0, 1}), Rat(-2), Rat(2)));  // reducible
  CHECK_THROWS(NumberField::define(MonicIntPoly::from_ints({-2, 0, 1}), Rat(-2), Rat(2)));  // two roots
  CHECK_NOTHROW(NumberField::define(MonicIntPoly::from_ints({-2, 0, 1}), Rat(1), Rat(2)));
  // degree cap
  CHECK_THROWS(NumberField::define(MonicIntPoly::from_ints({-2, 0, 0, 0, 0, 1}), Rat(1), Rat(2)));
  // rational field via a linear polynomial
  auto q2 = NumberField::define(MonicIntPoly::from_ints({-2, 1}), Rat(1), Rat(3));
  CHECK(q2->degree() == 1);
  CHECK(FieldElement::generator(q2).rational_value() == 2);
}

TEST_CASE("golden ratio arithmetic") {
  auto f = golden();
  auto phi = FieldElement::generator(f);
  auto one = FieldElement::rational(f, 1);
  // [TRIVIAL] phi^2 = phi + 1
  CHECK(phi * phi == phi + one);
  // [DERIVED] phi^-1 = phi - 1
  CHECK(phi.inverse() == phi - one);
  CHECK((phi * phi - phi - one).is_zero());
  CHECK(phi.sign() == 1);
  CHECK((one - phi).sign() == -1);
  // numeric sanity: phi ~ 1.618
  CHECK(phi.to_double() == doctest::Approx(1.6180339887).epsilon(1e-9));
  // conjugate root is negative: 1 - phi ~ -0.618
  auto conj = phi.conjugate(0);
  CHECK(f->which_embedding() == 1);
  CHECK(conj.sign() == -1);
  CHECK(conj.to_double() == doctest::Approx(-0.6180339887).epsilon(1e-9));
}

TEST_CASE("cubic field: largest root of the n=3 family polynomial") {
  auto f = cubic_p3();
  auto a = FieldElement::generator(f);
  // three real embeddings, ours is the largest
  CHECK(f->embeddings().size() == 3);
  CHECK(f->which_embedding() == 2);
  // [DERIVED] root bounds from sign evaluation: 20 < alpha < 21
  CHECK((a - FieldElement::rational(f, 20)).sign() == 1);
  CHECK((FieldElement::rational(f, 21) - a).sign() == 1);
  // minimal polynomial round trip
  auto mp = minimal_polynomial(a);
  CHECK(mp == QPoly::from_ints({-36, 67, -24, 1}));
  // inverse exactness
  CHECK((a * a.inverse()) == FieldElement::rational(f, 1));
  // trace/sum of conjugates is rational: a + a' + a'' = 24
  double s = a.conjugate(0).to_double() + a.conjugate(1).to_double() + a.to_double();
  CHECK(s == doctest::Approx(24.0).epsilon(1e-9));
}

TEST_CASE("rational relations") {
  auto f = golden();
  auto phi = FieldElement::generator(f);
  auto one = FieldElement::rational(f, 1);
  // phi^2 - phi - 1 = 0: kernel of (1, phi, phi^2) is spanned by (1, 1, -1)
  auto rel = rational_relations({one, phi, phi * phi});
  REQUIRE(rel.size() == 1);
  CHECK(rel[0] == std::vector<Rat>{Rat(1), Rat(1), Rat(-1)});
  // independent: 1, phi
  CHECK(rational_relations({one, phi}).empty());
  // all rational: 2, 3 -> relation (3, -2)
  auto rel2 = rational_relations({FieldElement::rational(f, 2), FieldElement::rational(f, 3)});
  REQUIRE(rel2.size() == 1);
  CHECK(rel2[0] == std::vector<Rat>{Rat(3), Rat(-2)});
}

TEST_CASE("wedge products over Q") {
  auto f = golden();
  auto phi = FieldElement::generator(f);
  auto one = FieldElement::rational(f, 1);
  // v wedge v = 0
  CHECK(wedge(phi, phi).is_zero());
  // 1 wedge phi has coefficient 1 on the basis pair
  auto w = wedge(one, phi);
  CHECK(w.at(0, 1) == 1);
  // bilinearity and antisymmetry
  auto x = one + Rat(2) * phi;
  auto y = Rat(3) * one - phi;
  CHECK((wedge(x, y) + wedge(y, x)).is_zero());
  CHECK(wedge(x, y).at(0, 1) == Rat(-1) - Rat(6));
  // rational wedge rational = 0
  CHECK(wedge(FieldElement::rational(f, 5), FieldElement::rational(f, 7)).is_zero());
}

TEST_CASE("sign determination is exact near zero") {
  auto f = cubic_p3();
  auto a = FieldElement::generator(f);
  // a tiny but nonzero combination: (a - 20)*(a - 21) is negative since
  // 20 < a < 21
  auto v = (a - FieldElement::rational(f, 20)) * (a - FieldElement::rational(f, 21));
  CHECK(v.sign() == -1);
  // and exactly zero when it should be
  auto p = a * a * a - Rat(24) * (a * a) + Rat(67) * a - FieldElement::rational(f, 36);
  CHECK(p.is_zero());
  CHECK(p.sign() == 0);
}
