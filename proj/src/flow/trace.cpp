#include "flow/internal.hpp"

#include <cstdlib>
#include <stdexcept>

namespace flow {

using flatsurf::in_ccw_arc;
using flatsurf::Polygon;

Direction Direction::of(const FieldElement& x, const FieldElement& y) {
  int sy = y.sign();
  if (sy == 0) {
    if (x.sign() == 0) throw std::invalid_argument("zero direction");
    auto one = FieldElement::rational(x.field(), Rat(1));
    auto zero = FieldElement::rational(x.field(), Rat(0));
    return Direction{one, zero};
  }
  FieldElement yy = sy > 0 ? y : -y;
  FieldElement xx = sy > 0 ? x : -x;
  return Direction{xx / yy, yy / yy};
}

Mat2 similarity_to_vertical(const flatsurf::FieldPtr& f, const Direction& d) {
  (void)f;
  return Mat2{d.y, -d.x, d.x, d.y};
}

long default_budget() {
  if (const char* env = std::getenv("FLATSURF_BUDGET")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 10000;
}

// ---------------------------------------------------------------------------
// Rays of the vertical foliation.

std::vector<VerticalRays> vertical_rays(const Surface& rot) {
  auto topo = flatsurf::topology(rot);
  std::vector<VerticalRays> out;
  const auto one = rot.fe(Rat(1));
  const auto zero = rot.fe(Rat(0));
  const Vec up{zero, one}, down{zero, -one};
  for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++) {
    const auto& vc = topo.vertices[k];
    VerticalRays vr;
    vr.vclass = k;
    vr.singular = vc.singular();
    for (const Corner& c : vc.corners) {
      const Polygon& p = rot.polys[c.poly];
      Vec out_ray = p.edge(c.vertex);
      Vec in_ray = -p.edge(c.vertex - 1);
      for (const Vec* d : {&up, &down}) {
        if (Vec::same_direction(out_ray, *d))
          vr.cyclic.push_back(Ray{c, true, d == &up});
      }
      // interior rays of this corner, in ccw order from the outgoing edge
      std::vector<const Vec*> inside;
      for (const Vec* d : {&up, &down}) {
        if (!Vec::same_direction(out_ray, *d) && in_ccw_arc(out_ray, in_ray, *d))
          inside.push_back(d);
      }
      if (inside.size() == 2 && in_ccw_arc(out_ray, *inside[0], *inside[1]))
        std::swap(inside[0], inside[1]);
      for (const Vec* d : inside) vr.cyclic.push_back(Ray{c, false, d == &up});
    }
    // sanity: rays of the vertical foliation alternate up/down
    if (vr.cyclic.size() != static_cast<size_t>(2 * vc.turns))
      throw std::logic_error("ray enumeration: wrong count");
    for (size_t i = 0; i < vr.cyclic.size(); i++)
      if (vr.cyclic[i].up == vr.cyclic[(i + 1) % vr.cyclic.size()].up)
        throw std::logic_error("ray enumeration: not alternating");
    out.push_back(std::move(vr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The tracer.

namespace detail {

struct Tracer::State {
  enum Mode { Interior, AlongEdge } mode;
  int poly = -1;
  Vec pt;          // Interior: current point
  EdgeRef edge;    // AlongEdge: upward edge, traveling from its start vertex
};

namespace {

struct Shot {
  bool vertex_hit = false;
  int vertex = -1;       // polygon vertex index when vertex_hit
  int edge = -1;         // edge index for interior hits
  Vec hit;
};

// First boundary point of poly strictly above pt on the vertical line
// through pt.  The upward ray from pt enters the (closed) polygon.
Shot shoot_up(const Polygon& p, const Vec& pt) {
  Shot best;
  bool have = false;
  auto consider_vertex = [&](int vi) {
    const Vec& v = p.vertex(vi);
    if ((v.y - pt.y).sign() <= 0) return;
    if (!have || (v.y - best.hit.y).sign() < 0 ||
        ((v.y - best.hit.y).sign() == 0 && !best.vertex_hit)) {
      best = Shot{true, ((vi % p.size()) + p.size()) % p.size(), -1, v};
      have = true;
    }
  };
  for (int i = 0; i < p.size(); i++) {
    const Vec& a = p.vertex(i);
    const Vec& b = p.vertex(i + 1);
    int sa = (a.x - pt.x).sign(), sb = (b.x - pt.x).sign();
    if (sa == 0) consider_vertex(i);
    if (sb == 0) consider_vertex(i + 1);
    if (sa * sb < 0) {
      FieldElement y = a.y + (pt.x - a.x) * (b.y - a.y) / (b.x - a.x);
      if ((y - pt.y).sign() > 0) {
        Vec h{pt.x, y};
        if (!have || (y - best.hit.y).sign() < 0) {
          best = Shot{false, -1, i, h};
          have = true;
        }
      }
    }
  }
  if (!have) throw std::logic_error("shoot_up: no hit");
  return best;
}

}  // namespace

TraceEvent Tracer::run_from_ray(const Ray& r) const {
  State st;
  if (r.along_edge) {
    st.mode = State::AlongEdge;
    st.edge = EdgeRef{r.corner.poly, r.corner.vertex};
    st.poly = r.corner.poly;
  } else {
    st.mode = State::Interior;
    st.poly = r.corner.poly;
    st.pt = s_.polys[r.corner.poly].vertex(r.corner.vertex);
  }
  return run(st);
}

TraceEvent Tracer::run_from_point(int poly, Vec pt) const {
  State st;
  st.mode = State::Interior;
  st.poly = poly;
  st.pt = std::move(pt);
  return run(st);
}

TraceEvent Tracer::run(State st) const {
  TraceEvent ev;
  ev.rise = s_.fe(Rat(0));
  long used = 0;

  auto cross_barrier_interior = [&](const Vec& from, const FieldElement& to_y) -> bool {
    if (!barrier_ || st.poly != barrier_->poly) return false;
    if ((from.y - barrier_->y).sign() >= 0) return false;
    if ((to_y - barrier_->y).sign() < 0) return false;
    if ((from.x - barrier_->x_lo).sign() < 0) return false;
    if ((from.x - barrier_->x_hi).sign() >= 0) return false;
    ev.kind = TraceEvent::Transversal;
    ev.x = from.x;
    ev.rise = ev.rise + (barrier_->y - from.y);
    return true;
  };

  // continuation of the upward flow through a regular vertex class
  auto continue_at_class = [&](int k) {
    const auto zero = s_.fe(Rat(0)), one = s_.fe(Rat(1));
    const Vec up{zero, one};
    for (const Corner& c : topo_.vertices[k].corners) {
      Vec out_ray = s_.polys[c.poly].edge(c.vertex);
      if (Vec::same_direction(out_ray, up)) {
        st.mode = State::AlongEdge;
        st.edge = EdgeRef{c.poly, c.vertex};
        st.poly = c.poly;
        return;
      }
    }
    for (const Corner& c : topo_.vertices[k].corners) {
      Vec out_ray = s_.polys[c.poly].edge(c.vertex);
      Vec in_ray = -s_.polys[c.poly].edge(c.vertex - 1);
      if (!Vec::same_direction(out_ray, up) && in_ccw_arc(out_ray, in_ray, up)) {
        st.mode = State::Interior;
        st.poly = c.poly;
        st.pt = s_.polys[c.poly].vertex(c.vertex);
        return;
      }
    }
    throw std::logic_error("no upward continuation at regular vertex");
  };

  while (true) {
    if (used++ > budget_) {
      ev.kind = TraceEvent::Budget;
      return ev;
    }
    if (st.mode == State::Interior) {
      Shot sh = shoot_up(s_.polys[st.poly], st.pt);
      if (cross_barrier_interior(st.pt, sh.hit.y)) return ev;
      if (record_) ev.chords.push_back(Chord{st.poly, st.pt, sh.hit, false, -1});
      ev.rise = ev.rise + (sh.hit.y - st.pt.y);
      if (sh.vertex_hit) {
        int k = topo_.vertex_class_of(Corner{st.poly, sh.vertex});
        if (stops_ && stops_->count(k)) {
          ev.kind = TraceEvent::Singular;
          ev.vclass = k;
          ev.arrival = Ray{Corner{st.poly, sh.vertex}, false, false};
          return ev;
        }
        ev.through_marks.emplace_back(k, ev.rise);
        continue_at_class(k);
      } else {
        EdgeRef e{st.poly, sh.edge};
        const EdgeRef& f = s_.partner(e);
        st.pt = sh.hit + s_.gluing_shift(e);
        st.poly = f.poly;
      }
    } else {
      // traveling upward along a vertical edge
      const EdgeRef e = st.edge;
      const EdgeRef f = s_.partner(e);
      const Polygon& p = s_.polys[e.poly];
      const Polygon& q = s_.polys[f.poly];
      Vec lo = p.vertex(e.edge), hi = p.vertex(e.edge + 1);
      // barrier crossing along either copy of the edge
      if (barrier_) {
        Vec qlo = q.vertex(f.edge + 1);  // image of lo in the partner polygon
        struct Copy { int poly; const Vec* a; FieldElement x; };
        Vec qhi = q.vertex(f.edge);
        Copy copies[2] = {{e.poly, &lo, lo.x}, {f.poly, &qlo, qlo.x}};
        for (const auto& cp : copies) {
          if (cp.poly != barrier_->poly) continue;
          FieldElement ylo = cp.a->y;
          FieldElement yhi = ylo + (hi.y - lo.y);
          if ((ylo - barrier_->y).sign() < 0 && (yhi - barrier_->y).sign() >= 0 &&
              (cp.x - barrier_->x_lo).sign() >= 0 && (cp.x - barrier_->x_hi).sign() < 0) {
            ev.kind = TraceEvent::Transversal;
            ev.x = cp.x;
            ev.rise = ev.rise + (barrier_->y - ylo);
            return ev;
          }
        }
        (void)qhi;
      }
      if (record_) {
        ev.chords.push_back(Chord{e.poly, lo, hi, true, e.edge, false});
        Vec qlo = q.vertex(f.edge + 1), qhi = q.vertex(f.edge);
        ev.chords.push_back(Chord{f.poly, qlo, qhi, true, f.edge, true});
      }
      ev.rise = ev.rise + (hi.y - lo.y);
      int k = topo_.vertex_class_of(Corner{e.poly, e.edge + 1});
      if (stops_ && stops_->count(k)) {
        ev.kind = TraceEvent::Singular;
        ev.vclass = k;
        ev.arrival = Ray{Corner{f.poly, f.edge}, true, false};
        return ev;
      }
      ev.through_marks.emplace_back(k, ev.rise);
      continue_at_class(k);
    }
  }
}

// ---------------------------------------------------------------------------
// Horizontal flow across cylinders.

ChordIndex ChordIndex::build(const Surface& s, const std::vector<SaddleConnection>& scs) {
  ChordIndex idx;
  idx.by_poly.resize(s.polys.size());
  for (int i = 0; i < static_cast<int>(scs.size()); i++) {
    if (!scs[i].resolved) continue;
    FieldElement off = s.fe(Rat(0));
    for (const Chord& ch : scs[i].chords) {
      FieldElement len = ch.hi.y - ch.lo.y;
      if (ch.dup) {
        idx.by_poly[ch.poly].push_back(Entry{i, ch, off - len});
      } else {
        idx.by_poly[ch.poly].push_back(Entry{i, ch, off});
        off = off + len;
      }
    }
  }
  return idx;
}

bool cross_flow(const Surface& s, const Topology& topo, const ChordIndex& idx,
                int poly, Vec pt, int dir, long budget, CrossHit& out,
                const flatsurf::Corner* start_vertex) {
  FieldElement width = s.fe(Rat(0));
  long used = 0;
  enum Mode { Interior, AlongEdge } mode = Interior;
  EdgeRef cur_edge;

  auto arrive = [&](const ChordIndex::Entry& en, const FieldElement& y,
                    const FieldElement& dist) {
    width = width + dist;
    out.sc = en.sc;
    out.height = en.offset + (y - en.chord.lo.y);
    out.width = width;
  };
  auto chord_at = [&](int p, const Vec& v) -> const ChordIndex::Entry* {
    for (const auto& en : idx.by_poly[p]) {
      if (!(en.chord.lo.x == v.x)) continue;
      if ((v.y - en.chord.lo.y).sign() < 0) continue;
      if ((en.chord.hi.y - v.y).sign() < 0) continue;
      return &en;
    }
    return nullptr;
  };
  // pass through a vertex: 1 = arrived on a chord, 0 = continue, -1 = fail
  auto handle_vertex = [&](int p, int vi, bool check_chords) -> int {
    int k = topo.vertex_class_of(Corner{p, vi});
    if (check_chords) {
      for (const Corner& c : topo.vertices[k].corners) {
        Vec vc = s.polys[c.poly].vertex(c.vertex);
        if (const auto* en = chord_at(c.poly, vc)) {
          arrive(*en, vc.y, s.fe(Rat(0)));
          return 1;
        }
      }
    }
    if (topo.vertices[k].singular()) return -1;
    const Vec fwd{s.fe(Rat(dir)), s.fe(Rat(0))};
    for (const Corner& c : topo.vertices[k].corners) {
      Vec out_ray = s.polys[c.poly].edge(c.vertex);
      if (Vec::same_direction(out_ray, fwd)) {
        mode = AlongEdge;
        cur_edge = EdgeRef{c.poly, c.vertex};
        return 0;
      }
    }
    for (const Corner& c : topo.vertices[k].corners) {
      Vec out_ray = s.polys[c.poly].edge(c.vertex);
      Vec in_ray = -s.polys[c.poly].edge(c.vertex - 1);
      if (!Vec::same_direction(out_ray, fwd) && in_ccw_arc(out_ray, in_ray, fwd)) {
        mode = Interior;
        poly = c.poly;
        pt = s.polys[c.poly].vertex(c.vertex);
        return 0;
      }
    }
    return -1;
  };

  if (start_vertex) {
    int r = handle_vertex(start_vertex->poly, start_vertex->vertex, false);
    if (r == 1) return true;
    if (r < 0) return false;
  }

  while (true) {
    if (used++ > budget) return false;
    if (mode == Interior) {
      const Polygon& p = s.polys[poly];
      // nearest chord crossed strictly in its interior
      const ChordIndex::Entry* chit = nullptr;
      FieldElement cx;
      for (const auto& en : idx.by_poly[poly]) {
        const FieldElement& x = en.chord.lo.x;
        if ((x - pt.x).sign() * dir <= 0) continue;
        if ((pt.y - en.chord.lo.y).sign() <= 0) continue;
        if ((en.chord.hi.y - pt.y).sign() <= 0) continue;
        if (!chit || ((x - cx).sign() * dir) < 0) {
          chit = &en;
          cx = x;
        }
      }
      // nearest boundary hit
      bool have = false, at_vertex = false;
      int hedge = -1, hvert = -1;
      FieldElement ex;
      auto consider_vertex = [&](int vi) {
        const Vec& v = p.vertex(vi);
        if ((v.y - pt.y).sign() != 0) return;
        if ((v.x - pt.x).sign() * dir <= 0) return;
        if (!have || ((v.x - ex).sign() * dir) < 0 ||
            ((v.x - ex).sign() == 0 && !at_vertex)) {
          have = true;
          at_vertex = true;
          hvert = ((vi % p.size()) + p.size()) % p.size();
          ex = v.x;
        }
      };
      for (int i = 0; i < p.size(); i++) {
        const Vec& a = p.vertex(i);
        const Vec& b = p.vertex(i + 1);
        int sa = (a.y - pt.y).sign(), sb = (b.y - pt.y).sign();
        if (sa == 0) consider_vertex(i);
        if (sb == 0) consider_vertex(i + 1);
        if (sa * sb < 0) {
          FieldElement x = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
          if ((x - pt.x).sign() * dir > 0 && (!have || ((x - ex).sign() * dir) < 0)) {
            have = true;
            at_vertex = false;
            hedge = i;
            ex = x;
          }
        }
      }
      if (!have) throw std::logic_error("cross_flow: no boundary hit");
      if (chit && ((cx - ex).sign() * dir) < 0) {
        arrive(*chit, pt.y, Rat(dir) * (cx - pt.x));
        return true;
      }
      width = width + Rat(dir) * (ex - pt.x);
      if (at_vertex) {
        int r = handle_vertex(poly, hvert, true);
        if (r == 1) return true;
        if (r < 0) return false;
        continue;
      }
      Vec hitp{ex, pt.y};
      if (const auto* en = chord_at(poly, hitp)) {
        // grazing a chord where it meets the boundary
        arrive(*en, hitp.y, s.fe(Rat(0)));
        return true;
      }
      EdgeRef e{poly, hedge};
      const EdgeRef& f = s.partner(e);
      pt = hitp + s.gluing_shift(e);
      poly = f.poly;
    } else {
      // traveling along a horizontal edge in flow direction
      const EdgeRef e = cur_edge;
      const EdgeRef f = s.partner(e);
      const Polygon& p = s.polys[e.poly];
      const Polygon& q = s.polys[f.poly];
      Vec a = p.vertex(e.edge), b = p.vertex(e.edge + 1);
      // chord endpoints touching the open segment, in either copy
      const ChordIndex::Entry* ben = nullptr;
      FieldElement by, bdist;
      auto scan = [&](int pc, const Vec& from, const Vec& to) {
        for (const auto& en : idx.by_poly[pc]) {
          for (const Vec* ep : {&en.chord.lo, &en.chord.hi}) {
            if (!(ep->y == from.y)) continue;
            const FieldElement& x = en.chord.lo.x;
            if ((x - from.x).sign() * dir <= 0) continue;
            if ((to.x - x).sign() * dir <= 0) continue;
            FieldElement dist = Rat(dir) * (x - from.x);
            if (!ben || (dist - bdist).sign() < 0) {
              ben = &en;
              by = ep->y;
              bdist = dist;
            }
          }
        }
      };
      scan(e.poly, a, b);
      scan(f.poly, q.vertex(f.edge + 1), q.vertex(f.edge));
      if (ben) {
        arrive(*ben, by, bdist);
        return true;
      }
      width = width + Rat(dir) * (b.x - a.x);
      int r = handle_vertex(e.poly, e.edge + 1, true);
      if (r == 1) return true;
      if (r < 0) return false;
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Transversal flows (public wrappers).

FlowHit flow_up_from_transversal(const Surface& rot, const Transversal& t,
                                 const FieldElement& x, long budget) {
  if (budget < 0) budget = default_budget();
  auto topo = flatsurf::topology(rot);
  std::set<int> stops;
  for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++)
    if (topo.vertices[k].singular()) stops.insert(k);
  detail::Tracer tr(rot, topo);
  tr.set_stops(&stops);
  tr.set_barrier(&t);
  tr.set_budget(budget);
  auto ev = tr.run_from_point(t.poly, Vec{x, t.y});
  FlowHit h;
  h.rise = ev.rise;
  switch (ev.kind) {
    case detail::TraceEvent::Transversal:
      h.kind = FlowHit::HitTransversal;
      h.x = ev.x;
      break;
    case detail::TraceEvent::Singular:
      h.kind = FlowHit::HitSingular;
      h.x = rot.fe(Rat(0));
      break;
    default:
      h.kind = FlowHit::BudgetExhausted;
      h.x = rot.fe(Rat(0));
  }
  return h;
}

std::optional<FieldElement> ray_hits_transversal(const Surface& rot, const Ray& ray,
                                                 const Transversal& t, long budget) {
  if (budget < 0) budget = default_budget();
  auto run = [&](const Surface& s, const Ray& r, const Transversal& tt)
      -> std::optional<FieldElement> {
    auto topo = flatsurf::topology(s);
    std::set<int> stops;
    for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++)
      if (topo.vertices[k].singular()) stops.insert(k);
    detail::Tracer tr(s, topo);
    tr.set_stops(&stops);
    tr.set_barrier(&tt);
    tr.set_budget(budget);
    auto ev = tr.run_from_ray(r);
    if (ev.kind == detail::TraceEvent::Transversal) return ev.x;
    return std::nullopt;
  };
  if (ray.up) return run(rot, ray, t);
  // downward ray: trace upward on the half-turn image of the surface
  auto minus_one = rot.fe(Rat(-1));
  auto zero = rot.fe(Rat(0));
  Surface half = flatsurf::apply_linear(rot, Mat2{minus_one, zero, zero, minus_one});
  Ray r2 = ray;
  r2.up = true;
  Transversal t2{t.poly, -t.y, -t.x_hi, -t.x_lo};
  auto res = run(half, r2, t2);
  if (!res) return std::nullopt;
  return -*res;
}

}  // namespace flow
