#include "doctest.h"

#include "flow/flow.hpp"

#include <algorithm>
#include <set>

using namespace flow;
using exactfield::FieldElement;
using exactfield::MonicIntPoly;
using exactfield::NumberField;
using flatsurf::EdgeRef;
using flatsurf::Polygon;

namespace {

Surface torus() {
  Surface s;
  s.field = NumberField::rationals();
  auto f = [&](long a, long b = 1) { return s.fe(Rat(a, b)); };
  Polygon p;
  p.v = {Vec{f(0), f(0)}, Vec{f(1), f(0)}, Vec{f(1), f(1)}, Vec{f(0), f(1)}};
  s.polys.push_back(p);
  s.glue[{0, 0}] = {0, 2};
  s.glue[{0, 2}] = {0, 0};
  s.glue[{0, 1}] = {0, 3};
  s.glue[{0, 3}] = {0, 1};
  return s;
}

// same flat torus presented as a sheared parallelogram (same lattice)
Surface torus_sheared() {
  Surface s;
  s.field = NumberField::rationals();
  auto f = [&](long a) { return s.fe(Rat(a)); };
  Polygon p;
  p.v = {Vec{f(0), f(0)}, Vec{f(1), f(0)}, Vec{f(2), f(1)}, Vec{f(1), f(1)}};
  s.polys.push_back(p);
  s.glue[{0, 0}] = {0, 2};
  s.glue[{0, 2}] = {0, 0};
  s.glue[{0, 1}] = {0, 3};
  s.glue[{0, 3}] = {0, 1};
  return s;
}

// a genuinely different torus of the same area
Surface torus_wide() {
  Surface s;
  s.field = NumberField::rationals();
  auto f = [&](long a, long b = 1) { return s.fe(Rat(a, b)); };
  Polygon p;
  p.v = {Vec{f(0), f(0)}, Vec{f(2), f(0)}, Vec{f(2), f(1, 2)}, Vec{f(0), f(1, 2)}};
  s.polys.push_back(p);
  s.glue[{0, 0}] = {0, 2};
  s.glue[{0, 2}] = {0, 0};
  s.glue[{0, 1}] = {0, 3};
  s.glue[{0, 3}] = {0, 1};
  return s;
}

// L-shaped surface in H(2): three unit squares at (0,0), (1,0), (0,1)
Surface l_surface() {
  Surface s;
  s.field = NumberField::rationals();
  auto f = [&](long a) { return s.fe(Rat(a)); };
  auto sq = [&](long x, long y) {
    Polygon p;
    p.v = {Vec{f(x), f(y)}, Vec{f(x + 1), f(y)}, Vec{f(x + 1), f(y + 1)}, Vec{f(x), f(y + 1)}};
    return p;
  };
  s.polys = {sq(0, 0), sq(1, 0), sq(0, 1)};
  auto pair = [&](EdgeRef a, EdgeRef b) {
    s.glue[a] = b;
    s.glue[b] = a;
  };
  pair({0, 3}, {1, 1});
  pair({0, 1}, {1, 3});
  pair({2, 3}, {2, 1});
  pair({0, 0}, {2, 2});
  pair({0, 2}, {2, 0});
  pair({1, 0}, {1, 2});
  return s;
}

// the same L surface presented as a single 8-vertex polygon
Surface l_one_polygon() {
  Surface s;
  s.field = NumberField::rationals();
  auto f = [&](long a) { return s.fe(Rat(a)); };
  Polygon p;
  p.v = {Vec{f(0), f(0)}, Vec{f(1), f(0)}, Vec{f(2), f(0)}, Vec{f(2), f(1)},
         Vec{f(1), f(1)}, Vec{f(1), f(2)}, Vec{f(0), f(2)}, Vec{f(0), f(1)}};
  s.polys.push_back(p);
  auto pair = [&](EdgeRef a, EdgeRef b) {
    s.glue[a] = b;
    s.glue[b] = a;
  };
  pair({0, 0}, {0, 5});  // lower-left bottom <-> upper top
  pair({0, 1}, {0, 3});  // lower-right bottom <-> its top
  pair({0, 2}, {0, 7});  // right side <-> lower left side
  pair({0, 4}, {0, 6});  // middle vertical <-> upper left side
  return s;
}

Direction dir(const Surface& s, long x, long y) {
  return Direction::of(s.fe(Rat(x)), s.fe(Rat(y)));
}

}  // namespace

TEST_CASE("torus: vertical and horizontal decompositions") {
  Surface s = torus();
  for (auto d : {dir(s, 0, 1), dir(s, 1, 0)}) {
    Decomposition dec = decompose(s, d);
    REQUIRE(dec.complete);
    CHECK(dec.no_singularity);
    REQUIRE(dec.cylinders.size() == 1);
    CHECK(dec.cylinders[0].circumference == s.fe(Rat(1)));
    CHECK(dec.cylinders[0].height == s.fe(Rat(1)));
    CHECK(dec.cylinders[0].twist.is_zero());
  }
}

TEST_CASE("torus: slope-2 decomposition") {
  Surface s = torus();
  Decomposition dec = decompose(s, dir(s, 1, 2));
  REQUIRE(dec.complete);
  REQUIRE(dec.cylinders.size() == 1);
  // the (1,2) geodesic rotates to a vertical vector of length 5/2, and the
  // rotated area is 5/4, so the cylinder is 5/2 x 1/2
  CHECK(dec.cylinders[0].circumference == s.fe(Rat(5, 2)));
  CHECK(dec.cylinders[0].height == s.fe(Rat(1, 2)));
}

TEST_CASE("L surface: vertical rays at the zero") {
  Surface s = l_surface();
  auto rays = vertical_rays(s);
  int singular = 0;
  for (const auto& vr : rays) {
    if (!vr.singular) continue;
    singular++;
    CHECK(vr.cyclic.size() == 6);  // three up, three down, alternating
  }
  CHECK(singular == 1);
}

TEST_CASE("L surface: vertical decomposition") {
  Surface s = l_surface();
  Decomposition dec = decompose(s, dir(s, 0, 1));
  REQUIRE(dec.complete);
  CHECK(!dec.no_singularity);
  CHECK(dec.scs.size() == 3);
  REQUIRE(dec.cylinders.size() == 2);
  std::multiset<std::pair<long, long>> got;
  for (const auto& c : dec.cylinders)
    got.insert({c.circumference.rational_value().get_num().get_si(),
                c.height.rational_value().get_num().get_si()});
  std::multiset<std::pair<long, long>> want{{1, 1}, {2, 1}};
  CHECK(got == want);
  // the involution fixes both vertical cylinders
  CHECK(dec.has_involution);
  CHECK(dec.fixed_cylinders() == 2);
  CHECK(flux_identities_hold(dec));
}

TEST_CASE("L surface: horizontal and slope-1 decompositions") {
  Surface s = l_surface();
  Decomposition h = decompose(s, dir(s, 1, 0));
  REQUIRE(h.complete);
  CHECK(h.cylinders.size() == 2);

  Decomposition d1 = decompose(s, dir(s, 1, 1));
  REQUIRE(d1.complete);
  // slope 1 on the L origami gives a single cylinder decomposition:
  // total rotated area is 6, so circumference * height sums to 6
  FieldElement tot = s.fe(Rat(0));
  for (const auto& c : d1.cylinders) tot = tot + c.circumference * c.height;
  CHECK(tot == s.fe(Rat(6)));
}

TEST_CASE("translation isomorphism: direct and rebuilt") {
  Surface t1 = torus(), t2 = torus_sheared(), t3 = torus_wide();
  CHECK(is_translation_isomorphic(t1, t1));
  CHECK(is_translation_isomorphic(t1, t2));
  CHECK(!is_translation_isomorphic(t1, t3));

  Surface a = l_surface(), b = l_one_polygon();
  CHECK(is_translation_isomorphic(a, b));
  CHECK(!is_translation_isomorphic(a, t1));
}

TEST_CASE("configuration signature table") {
  auto sig = [](int n, std::vector<bool> fixed, std::vector<bool> simple,
                std::vector<std::pair<int, int>> bc) {
    ConfigSignature s;
    s.n_cylinders = n;
    s.fixed = std::move(fixed);
    s.simple = std::move(simple);
    s.boundary_counts = std::move(bc);
    for (bool f : s.fixed)
      if (f) s.n_fixed++;
    return s;
  };
  // three cylinders
  CHECK(classify_signature(sig(3, {true, false, false}, {false, false, false}, {})) == "a");
  CHECK(classify_signature(sig(3, {true, false, false}, {true, false, false}, {})) == "b");
  CHECK(classify_signature(sig(3, {true, true, true}, {false, false, false}, {})) == "c");
  CHECK(classify_signature(sig(3, {true, true, true}, {false, true, true}, {})) == "d");
  // four cylinders (always two fixed)
  CHECK(classify_signature(sig(4, {true, true, false, false}, {false, false, true, true}, {})) ==
        "e");
  CHECK(classify_signature(sig(4, {true, true, false, false}, {true, true, false, false}, {})) ==
        "f");
  CHECK(classify_signature(sig(4, {true, true, false, false}, {true, false, false, false}, {})) ==
        "g");
  // two cylinders
  CHECK(classify_signature(sig(2, {false, false}, {false, false}, {{3, 3}, {3, 3}})) == "h");
  CHECK(classify_signature(sig(2, {true, true}, {true, false}, {{1, 1}, {5, 5}})) == "i");
  CHECK(classify_signature(sig(2, {true, true}, {false, false}, {{2, 2}, {4, 4}})) == "j");
  CHECK(classify_signature(sig(2, {true, true}, {false, false}, {{3, 3}, {3, 3}})) == "k");
  // non-matching data is reported, not mislabeled
  CHECK(classify_signature(sig(2, {true, false}, {false, false}, {{3, 3}, {3, 3}}))[0] == '!');
  CHECK(classify_signature(sig(5, {}, {}, {}))[0] == '!');
}

TEST_CASE("commensurability of moduli") {
  auto Q = NumberField::rationals();
  auto q = [&](long a, long b = 1) { return FieldElement::rational(Q, Rat(a, b)); };
  auto par = commensurability_type({q(1), q(3, 2), q(5)});
  CHECK(par.type == Commensurability::Parabolic);

  // golden-ratio field: x^2 - x - 1, root in (1, 2)
  auto K = NumberField::define(MonicIntPoly{{-1, -1, 1}}, Rat(1), Rat(2));
  auto phi = FieldElement::generator(K);
  auto one = FieldElement::rational(K, Rat(1));
  auto ind = commensurability_type({one, phi});
  CHECK(ind.type == Commensurability::Independent);

  auto rel = commensurability_type({one, phi, phi + Rat(2) * one});
  REQUIRE(rel.type == Commensurability::SingleRelation);
  CHECK(rel.relation == std::vector<Rat>{Rat(2), Rat(1), Rat(-1)});
}

TEST_CASE("enumerate completely periodic directions on the torus") {
  Surface s = torus();
  auto dirs = enumerate_cp_directions(s, Rat(2));
  // slopes 0, infinity, +-1, +-2, +-1/2 within sup-norm 2
  CHECK(dirs.size() == 8);
  std::set<std::pair<Rat, Rat>> got;
  for (const auto& d : dirs)
    got.insert({d.x.rational_value(), d.y.rational_value()});
  std::set<std::pair<Rat, Rat>> want{
      {Rat(1), Rat(0)},  {Rat(0), Rat(1)},     {Rat(1), Rat(1)},  {Rat(-1), Rat(1)},
      {Rat(2), Rat(1)},  {Rat(-2), Rat(1)},    {Rat(1, 2), Rat(1)}, {Rat(-1, 2), Rat(1)}};
  CHECK(got == want);
}
