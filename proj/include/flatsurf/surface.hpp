// Translation surfaces presented as Euclidean polygons with edges glued in
// pairs by translations.  All coordinates are exact elements of a fixed real
// number field; every geometric and topological query is decided exactly.

#pragma once

#include "exactfield/exactfield.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatsurf {

using exactfield::FieldElement;
using exactfield::FieldPtr;
using exactfield::Rat;

struct Vec {
  FieldElement x, y;

  Vec() = default;
  Vec(FieldElement xx, FieldElement yy) : x(std::move(xx)), y(std::move(yy)) {}

  Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
  Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
  Vec operator-() const { return {-x, -y}; }
  Vec operator*(const Rat& s) const { return {s * x, s * y}; }
  bool operator==(const Vec& o) const { return x == o.x && y == o.y; }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  // sign of the cross product with another vector
  static int cross_sign(const Vec& a, const Vec& b) { return (a.x * b.y - a.y * b.x).sign(); }
  static int dot_sign(const Vec& a, const Vec& b) { return (a.x * b.x + a.y * b.y).sign(); }
  static bool same_direction(const Vec& a, const Vec& b) {
    return cross_sign(a, b) == 0 && dot_sign(a, b) > 0;
  }
  // lexicographic comparison, x before y
  static int lex_compare(const Vec& a, const Vec& b);
};

struct Polygon {
  std::vector<Vec> v;  // vertices in counterclockwise order

  int size() const { return static_cast<int>(v.size()); }
  const Vec& vertex(int i) const { return v[((i % size()) + size()) % size()]; }
  Vec edge(int i) const { return vertex(i + 1) - vertex(i); }
};

struct EdgeRef {
  int poly = -1;
  int edge = -1;
  auto operator<=>(const EdgeRef&) const = default;
};

struct Corner {
  int poly = -1;
  int vertex = -1;
  auto operator<=>(const Corner&) const = default;
};

class Surface {
 public:
  FieldPtr field;
  std::vector<Polygon> polys;
  std::map<EdgeRef, EdgeRef> glue;  // involution without fixed points on edges

  FieldElement fe(const Rat& q) const { return exactfield::FieldElement::rational(field, q); }

  const EdgeRef& partner(const EdgeRef& e) const;
  Vec edge_vec(const EdgeRef& e) const { return polys[e.poly].edge(e.edge); }

  // Translation applied to a point of edge e when carried to the partner
  // edge: x on e corresponds to x + gluing_shift(e) on partner(e)'s polygon.
  Vec gluing_shift(const EdgeRef& e) const;

  // Throws std::invalid_argument with a description on the first violated
  // condition: matching edge vectors, simple ccw polygons, perfect gluing,
  // connectedness, consistent cone angles.
  void validate() const;

  int total_edges() const;
  FieldElement area() const;  // total polygon area (positive)
};

// ---------------------------------------------------------------------------
// Topology: vertex identifications and cone angles.

struct VertexClass {
  std::vector<Corner> corners;  // in cyclic (counterclockwise) order
  int turns = 0;                // total cone angle = 2 pi * turns
  bool singular() const { return turns > 1; }
};

struct Topology {
  std::vector<VertexClass> vertices;
  int genus = 0;
  std::vector<int> zero_orders;  // turns - 1 for singular classes, descending
  int vertex_class_of(const Corner& c) const;

  std::map<Corner, int> corner_class;
};

Topology topology(const Surface& s);

// Stratum signature: orders of the zeros (excluding marked regular points),
// sorted descending.
std::vector<int> stratum(const Surface& s);

// ---------------------------------------------------------------------------
// GL(2) action.

struct Mat2 {
  FieldElement a, b, c, d;  // [[a, b], [c, d]]
  static Mat2 of(const FieldPtr& f, const Rat& a, const Rat& b, const Rat& c, const Rat& d);
  Vec apply(const Vec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  FieldElement det() const { return a * d - b * c; }
  Mat2 mul(const Mat2& o) const;
  FieldElement trace() const { return a + d; }
};

Surface apply_linear(const Surface& s, const Mat2& m);  // requires det > 0

// ---------------------------------------------------------------------------
// Exact point predicates.

// -1 outside, 0 on boundary, +1 strictly inside (simple ccw polygon)
int point_in_polygon(const Polygon& p, const Vec& pt);
bool point_on_segment(const Vec& a, const Vec& b, const Vec& pt);  // closed segment

// Is direction w inside the counterclockwise arc from u to v?  The arc is
// half-open: w == u counts, w == v does not.  u == v is read as a full turn.
bool in_ccw_arc(const Vec& u, const Vec& v, const Vec& w);

// ---------------------------------------------------------------------------
// Translation isomorphisms and the hyperelliptic involution.

struct PolyMap {
  int target = -1;
  Vec translation;  // x maps to translation + sign * x
  int sign = 1;     // +1 for translations, -1 for the involution search
};

// Exact search for a translation equivalence between two surfaces presented
// with matching polygon multisets.  (A decomposition-based normal form for
// differently presented surfaces lives in the flow module.)
std::optional<std::vector<PolyMap>> translation_isomorphism(const Surface& s1, const Surface& s2,
                                                            int sign = 1);

struct SurfacePoint {
  // canonical representative of a point on the surface
  int poly;
  Vec pos;
  std::string kind;  // "interior", "edge", "vertex"
};

struct Involution {
  std::vector<PolyMap> map;          // per-polygon action x -> translation - x
  std::vector<SurfacePoint> fixed;   // deduplicated fixed points
};

// Finds an isometric involution with derivative -id, if any.
std::optional<Involution> find_involution(const Surface& s);

// Apply a polygon map (from translation_isomorphism or an involution) to a
// point in a given polygon.
Vec apply_poly_map(const PolyMap& m, const Vec& p);

// ---------------------------------------------------------------------------
// Serialization (canonical JSON, stable across runs).

std::string to_json(const Surface& s);
Surface surface_from_json(const std::string& text);

}  // namespace flatsurf
