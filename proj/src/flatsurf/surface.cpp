#include "flatsurf/surface.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace flatsurf {

int Vec::lex_compare(const Vec& a, const Vec& b) {
  int sx = (a.x - b.x).sign();
  if (sx != 0) return sx;
  return (a.y - b.y).sign();
}

const EdgeRef& Surface::partner(const EdgeRef& e) const {
  auto it = glue.find(e);
  if (it == glue.end()) throw std::invalid_argument("edge has no gluing partner");
  return it->second;
}

Vec Surface::gluing_shift(const EdgeRef& e) const {
  // start of e is identified with the end of its partner
  const EdgeRef& f = partner(e);
  return polys[f.poly].vertex(f.edge + 1) - polys[e.poly].vertex(e.edge);
}

int Surface::total_edges() const {
  int n = 0;
  for (const auto& p : polys) n += p.size();
  return n;
}

FieldElement Surface::area() const {
  FieldElement two_a = fe(0);
  for (const auto& p : polys) {
    for (int i = 0; i < p.size(); ++i) {
      const Vec& a = p.vertex(i);
      const Vec& b = p.vertex(i + 1);
      two_a += a.x * b.y - a.y * b.x;
    }
  }
  return Rat(1, 2) * two_a;
}

bool point_on_segment(const Vec& a, const Vec& b, const Vec& pt) {
  Vec ab = b - a, ap = pt - a;
  if (Vec::cross_sign(ab, ap) != 0) return false;
  int d1 = Vec::dot_sign(ab, ap);
  if (d1 < 0) return false;
  Vec bp = pt - b;
  return Vec::dot_sign(ab, bp) <= 0;
}

int point_in_polygon(const Polygon& p, const Vec& pt) {
  for (int i = 0; i < p.size(); ++i)
    if (point_on_segment(p.vertex(i), p.vertex(i + 1), pt)) return 0;
  // crossing parity of an upward vertical ray, half-open edge rule
  int crossings = 0;
  for (int i = 0; i < p.size(); ++i) {
    const Vec& a = p.vertex(i);
    const Vec& b = p.vertex(i + 1);
    int sa = (a.x - pt.x).sign();
    int sb = (b.x - pt.x).sign();
    // half-open in x: count edges with x-spans [min, max) containing pt.x
    if (sa == sb) continue;
    if (sa == 0 || sb == 0) {
      // endpoint exactly on the ray line: use the half-open rule, counting
      // the vertex with the smaller x side
      if ((sa == 0 && sb < 0) || (sb == 0 && sa < 0)) continue;
    }
    // intersection y-coordinate above pt.y?  Solve by orientation test:
    // the ray crosses the segment iff pt is below the line through a,b in
    // the upward direction.  Orientation of (a,b,pt): for a.x < b.x the
    // segment passes above pt iff cross(b-a, pt-a) < 0.
    int orient = Vec::cross_sign(b - a, pt - a);
    if (sa <= 0) {
      // a left of ray, b right: upward crossing when pt below segment
      if (orient < 0) ++crossings;
    } else {
      if (orient > 0) ++crossings;
    }
  }
  return crossings % 2 == 1 ? 1 : -1;
}

bool in_ccw_arc(const Vec& u, const Vec& v, const Vec& w) {
  if (Vec::same_direction(w, u)) return true;
  if (Vec::same_direction(w, v)) return false;
  int cuv = Vec::cross_sign(u, v);
  bool opposite = (cuv == 0 && Vec::dot_sign(u, v) < 0);
  if (Vec::same_direction(u, v)) return true;  // full turn
  if (opposite) return Vec::cross_sign(u, w) > 0;
  if (cuv > 0)  // arc shorter than pi
    return Vec::cross_sign(u, w) > 0 && Vec::cross_sign(w, v) > 0;
  // arc longer than pi: complement of the strict arc (v, u)
  return !(Vec::cross_sign(v, w) > 0 && Vec::cross_sign(w, u) > 0);
}

namespace {

bool segments_cross(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  // proper or improper intersection of segments ab, cd excluding shared
  // endpoints handled by the caller
  int o1 = Vec::cross_sign(b - a, c - a);
  int o2 = Vec::cross_sign(b - a, d - a);
  int o3 = Vec::cross_sign(d - c, a - c);
  int o4 = Vec::cross_sign(d - c, b - c);
  if (o1 != o2 && o3 != o4 && o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && point_on_segment(a, b, c)) return true;
  if (o2 == 0 && point_on_segment(a, b, d)) return true;
  if (o3 == 0 && point_on_segment(c, d, a)) return true;
  if (o4 == 0 && point_on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

void Surface::validate() const {
  if (!field) throw std::invalid_argument("surface has no field");
  if (polys.empty()) throw std::invalid_argument("surface has no polygons");
  // field consistency
  for (const auto& p : polys)
    for (const auto& v : p.v)
      if (!v.x.field()->same_field(*field) || !v.y.field()->same_field(*field))
        throw std::invalid_argument("vertex coordinate in a different field");
  // polygon sanity: at least 3 vertices, counterclockwise, simple
  for (size_t pi = 0; pi < polys.size(); ++pi) {
    const Polygon& p = polys[pi];
    if (p.size() < 3) throw std::invalid_argument("polygon with fewer than 3 vertices");
    FieldElement two_a = fe(0);
    for (int i = 0; i < p.size(); ++i) {
      if (p.edge(i).is_zero()) throw std::invalid_argument("zero-length edge");
      const Vec& a = p.vertex(i);
      const Vec& b = p.vertex(i + 1);
      two_a += a.x * b.y - a.y * b.x;
    }
    if (two_a.sign() <= 0) throw std::invalid_argument("polygon not counterclockwise");
    // simplicity: non-adjacent edges must not intersect
    for (int i = 0; i < p.size(); ++i) {
      for (int j = i + 1; j < p.size(); ++j) {
        if (j == i + 1 || (i == 0 && j == p.size() - 1)) {
          // adjacent edges: must only share the common vertex
          const Vec& shared = j == i + 1 ? p.vertex(j) : p.vertex(0);
          Vec a = p.vertex(i), b = p.vertex(i + 1);
          Vec c = p.vertex(j), d = p.vertex(j + 1);
          // The shared endpoint is allowed; any other contact is not.
          if (point_on_segment(a, b, c) && !(c == shared))
            throw std::invalid_argument("polygon is not simple");
          if (point_on_segment(a, b, d) && !(d == shared))
            throw std::invalid_argument("polygon is not simple");
          if (point_on_segment(c, d, a) && !(a == shared))
            throw std::invalid_argument("polygon is not simple");
          if (point_on_segment(c, d, b) && !(b == shared))
            throw std::invalid_argument("polygon is not simple");
          continue;
        }
        if (segments_cross(p.vertex(i), p.vertex(i + 1), p.vertex(j), p.vertex(j + 1)))
          throw std::invalid_argument("polygon is not simple");
      }
    }
  }
  // gluing: perfect matching with opposite edge vectors
  int n_edges = total_edges();
  if (static_cast<int>(glue.size()) != n_edges)
    throw std::invalid_argument("gluing does not cover every edge");
  for (const auto& [e, f] : glue) {
    if (e.poly < 0 || e.poly >= static_cast<int>(polys.size()) || e.edge < 0 ||
        e.edge >= polys[e.poly].size())
      throw std::invalid_argument("gluing references a nonexistent edge");
    if (f == e) throw std::invalid_argument("edge glued to itself");
    auto it = glue.find(f);
    if (it == glue.end() || !(it->second == e))
      throw std::invalid_argument("gluing is not an involution");
    if (!(edge_vec(e) == -edge_vec(f)))
      throw std::invalid_argument("glued edges do not have opposite vectors");
  }
  // connectedness
  std::vector<bool> seen(polys.size(), false);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = true;
  while (!bfs.empty()) {
    int p = bfs.front();
    bfs.pop();
    for (int i = 0; i < polys[p].size(); ++i) {
      int q = partner(EdgeRef{p, i}).poly;
      if (!seen[q]) {
        seen[q] = true;
        bfs.push(q);
      }
    }
  }
  for (bool b : seen)
    if (!b) throw std::invalid_argument("surface is not connected");
  // cone angles and Euler characteristic
  Topology t = topology(*this);
  int total_order = 0;
  for (const auto& vc : t.vertices) {
    if (vc.turns < 1) throw std::invalid_argument("cone angle smaller than 2 pi");
    total_order += vc.turns - 1;
  }
  if (total_order != 2 * t.genus - 2)
    throw std::invalid_argument("cone angles inconsistent with the Euler characteristic");
}

// ---------------------------------------------------------------------------

Topology topology(const Surface& s) {
  // walk corners counterclockwise around each identified vertex
  auto next_corner = [&](const Corner& c) {
    int prev_edge = (c.vertex - 1 + s.polys[c.poly].size()) % s.polys[c.poly].size();
    EdgeRef f = s.partner(EdgeRef{c.poly, prev_edge});
    return Corner{f.poly, f.edge};
  };
  Topology t;
  std::set<Corner> visited;
  for (int p = 0; p < static_cast<int>(s.polys.size()); ++p) {
    for (int v = 0; v < s.polys[p].size(); ++v) {
      Corner start{p, v};
      if (visited.count(start)) continue;
      VertexClass vc;
      Corner c = start;
      Vec east{s.fe(1), s.fe(0)};
      int crossings = 0;
      do {
        visited.insert(c);
        vc.corners.push_back(c);
        const Polygon& poly = s.polys[c.poly];
        Vec out = poly.edge(c.vertex);
        Vec in = -poly.edge(c.vertex - 1);
        if (in_ccw_arc(out, in, east)) ++crossings;
        c = next_corner(c);
      } while (!(c == start));
      vc.turns = crossings;
      t.vertices.push_back(std::move(vc));
    }
  }
  int total_order = 0;
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    for (const auto& c : t.vertices[i].corners) t.corner_class[c] = static_cast<int>(i);
    total_order += t.vertices[i].turns - 1;
  }
  t.genus = total_order / 2 + 1;
  for (const auto& vc : t.vertices)
    if (vc.turns > 1) t.zero_orders.push_back(vc.turns - 1);
  std::sort(t.zero_orders.rbegin(), t.zero_orders.rend());
  return t;
}

int Topology::vertex_class_of(const Corner& c) const {
  auto it = corner_class.find(c);
  if (it == corner_class.end()) throw std::invalid_argument("unknown corner");
  return it->second;
}

std::vector<int> stratum(const Surface& s) { return topology(s).zero_orders; }

// ---------------------------------------------------------------------------

Mat2 Mat2::of(const FieldPtr& f, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  auto r = [&](const Rat& q) { return FieldElement::rational(f, q); };
  return Mat2{r(a), r(b), r(c), r(d)};
}

Mat2 Mat2::mul(const Mat2& o) const {
  return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Surface apply_linear(const Surface& s, const Mat2& m) {
  if (m.det().sign() <= 0) throw std::invalid_argument("linear map must preserve orientation");
  Surface r;
  r.field = s.field;
  r.glue = s.glue;
  r.polys.reserve(s.polys.size());
  for (const auto& p : s.polys) {
    Polygon q;
    q.v.reserve(p.v.size());
    for (const auto& v : p.v) q.v.push_back(m.apply(v));
    r.polys.push_back(std::move(q));
  }
  return r;
}

Vec apply_poly_map(const PolyMap& m, const Vec& p) {
  return m.sign == 1 ? m.translation + p : m.translation - p;
}

}  // namespace flatsurf
