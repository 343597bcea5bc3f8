#include "doctest.h"

#include "flatsurf/surface.hpp"

using namespace flatsurf;
using exactfield::FieldElement;
using exactfield::MonicIntPoly;
using exactfield::NumberField;
using exactfield::Rat;

namespace {

// unit square torus
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

// L-shaped surface in H(2) made of three unit squares:
// squares at (0,0), (1,0) and (0,1); genus 2, one zero of order 2.
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
  // horizontal identifications: bottom row is a 2-cycle, top square maps to itself
  pair({0, 3}, {1, 1});  // left of sq0 <-> right of sq1
  pair({0, 1}, {1, 3});  // right of sq0 <-> left of sq1
  pair({2, 3}, {2, 1});  // left of sq2 <-> right of sq2
  // vertical identifications
  pair({0, 0}, {2, 2});  // bottom of sq0 <-> top of sq2
  pair({0, 2}, {2, 0});  // top of sq0 <-> bottom of sq2
  pair({1, 0}, {1, 2});  // bottom of sq1 <-> top of sq1
  return s;
}

}  // namespace

TEST_CASE("torus: validation and topology") {
  Surface s = torus();
  CHECK_NOTHROW(s.validate());
  Topology t = topology(s);
  CHECK(t.genus == 1);
  CHECK(t.vertices.size() == 1);
  CHECK(t.vertices[0].turns == 1);  // regular point
  CHECK(stratum(s).empty());
  CHECK(s.area() == s.fe(1));
}

TEST_CASE("L-shaped surface: H(2) topology") {
  Surface s = l_surface();
  CHECK_NOTHROW(s.validate());
  Topology t = topology(s);
  // [DERIVED] 3-square L-origami: genus 2, single zero of order 2 (angle 6 pi)
  CHECK(t.genus == 2);
  auto orders = stratum(s);
  REQUIRE(orders.size() == 1);
  CHECK(orders[0] == 2);
  CHECK(s.area() == s.fe(3));
}

TEST_CASE("validation rejects broken gluings") {
  Surface s = torus();
  s.glue[{0, 0}] = {0, 1};  // mismatched vectors and broken involution
  CHECK_THROWS(s.validate());
  Surface s2 = torus();
  s2.glue.erase({0, 3});
  CHECK_THROWS(s2.validate());
  // clockwise polygon
  Surface s3 = torus();
  std::reverse(s3.polys[0].v.begin(), s3.polys[0].v.end());
  CHECK_THROWS(s3.validate());
}

TEST_CASE("linear action") {
  Surface s = torus();
  Mat2 m = Mat2::of(s.field, 1, 1, 0, 1);  // horizontal shear
  Surface sh = apply_linear(s, m);
  CHECK_NOTHROW(sh.validate());
  CHECK(sh.area() == s.fe(1));
  CHECK(topology(sh).genus == 1);
  Mat2 bad = Mat2::of(s.field, 1, 0, 0, -1);
  CHECK_THROWS(apply_linear(s, bad));
}

TEST_CASE("translation isomorphism: translated and relabeled copies") {
  Surface s = l_surface();
  // translate every polygon by (7, 5): same surface
  Surface t = s;
  for (auto& p : t.polys)
    for (auto& v : p.v) v = v + Vec{s.fe(7), s.fe(5)};
  auto iso = translation_isomorphism(s, t);
  REQUIRE(iso.has_value());
  CHECK((*iso)[0].target == 0);
  // relabel polygons: still isomorphic
  Surface r;
  r.field = s.field;
  r.polys = {s.polys[2], s.polys[0], s.polys[1]};
  std::vector<int> perm = {1, 2, 0};  // old index -> new index
  for (const auto& [e, f] : s.glue) r.glue[{perm[e.poly], e.edge}] = {perm[f.poly], f.edge};
  CHECK(translation_isomorphism(s, r).has_value());
  // torus is not isomorphic to the L surface
  CHECK_FALSE(translation_isomorphism(s, torus()).has_value());
  // unit torus is not isomorphic to a 2x1 torus
  Surface wide = torus();
  for (auto& v : wide.polys[0].v) v.x = s.fe(2) * v.x;
  CHECK_FALSE(translation_isomorphism(torus(), wide).has_value());
}

TEST_CASE("involution of the torus has 4 fixed points") {
  Surface s = torus();
  auto inv = find_involution(s);
  REQUIRE(inv.has_value());
  CHECK(inv->fixed.size() == 4);
}

TEST_CASE("involution of the L surface has 6 fixed points") {
  // [DERIVED] genus 2 hyperelliptic involution has 2g + 2 = 6 Weierstrass
  // points
  Surface s = l_surface();
  auto inv = find_involution(s);
  REQUIRE(inv.has_value());
  CHECK(inv->fixed.size() == 6);
}

TEST_CASE("json round trip is canonical") {
  Surface s = l_surface();
  std::string j1 = to_json(s);
  Surface s2 = surface_from_json(j1);
  CHECK_NOTHROW(s2.validate());
  CHECK(to_json(s2) == j1);
  CHECK(translation_isomorphism(s, s2).has_value());
  // a surface over a quadratic field round-trips too
  auto f = NumberField::define(MonicIntPoly::from_ints({-1, -1, 1}), Rat(1), Rat(2));
  Surface g;
  g.field = f;
  auto phi = FieldElement::generator(f);
  auto z = FieldElement::rational(f, 0);
  auto one = FieldElement::rational(f, 1);
  Polygon p;
  p.v = {Vec{z, z}, Vec{phi, z}, Vec{phi, one}, Vec{z, one}};
  g.polys.push_back(p);
  g.glue[{0, 0}] = {0, 2};
  g.glue[{0, 2}] = {0, 0};
  g.glue[{0, 1}] = {0, 3};
  g.glue[{0, 3}] = {0, 1};
  CHECK_NOTHROW(g.validate());
  Surface g2 = surface_from_json(to_json(g));
  CHECK(to_json(g2) == to_json(g));
}
