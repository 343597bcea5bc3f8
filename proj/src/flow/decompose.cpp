#include "flow/internal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace flow {

using detail::ChordIndex;
using detail::CrossHit;
using detail::Tracer;
using flatsurf::Polygon;
using flatsurf::Topology;

int Decomposition::fixed_cylinders() const {
  int n = 0;
  for (int i = 0; i < static_cast<int>(cylinders.size()); i++)
    if (cylinders[i].involution_image == i) n++;
  return n;
}

int Decomposition::simple_cylinders() const {
  int n = 0;
  for (const auto& c : cylinders)
    if (c.simple) n++;
  return n;
}

namespace {

// retry fractions for flow start heights
Rat retry_fraction(int attempt) {
  // 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, ...
  int q = 2, k = 1;
  for (int i = 0; i < attempt; i++) {
    k++;
    if (k >= q) {
      q++;
      k = 1;
    }
  }
  return Rat(k, q);
}

std::vector<int> rotate_to_min(std::vector<int> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

}  // namespace

Decomposition decompose(const Surface& s, const Direction& d, long budget) {
  if (budget < 0) budget = default_budget();
  Direction dir = Direction::of(d.x, d.y);
  Mat2 g = similarity_to_vertical(s.field, dir);
  Decomposition dec;
  dec.dir = dir;
  dec.rotated = flatsurf::apply_linear(s, g);
  const Surface& rot = dec.rotated;
  Topology topo = flatsurf::topology(rot);

  std::set<int> stops;
  for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++)
    if (topo.vertices[k].singular()) stops.insert(k);
  if (stops.empty()) {
    dec.no_singularity = true;
    for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++) stops.insert(k);
  }

  auto rays = vertical_rays(rot);
  std::map<Ray, std::pair<int, int>> ray_pos;
  for (int k : stops)
    for (int i = 0; i < static_cast<int>(rays[k].cyclic.size()); i++)
      ray_pos[rays[k].cyclic[i]] = {k, i};

  // --- trace every upward separatrix -------------------------------------
  Tracer tr(rot, topo);
  tr.set_stops(&stops);
  tr.set_budget(budget);
  tr.set_record(true);
  std::map<Ray, int> by_start, by_end;
  for (int k : stops) {
    for (const Ray& r : rays[k].cyclic) {
      if (!r.up) continue;
      auto ev = tr.run_from_ray(r);
      SaddleConnection sc;
      sc.start_class = k;
      sc.start_ray = r;
      sc.length = rot.fe(Rat(0));
      if (ev.kind == detail::TraceEvent::Singular) {
        sc.resolved = true;
        sc.chords = std::move(ev.chords);
        sc.length = ev.rise;
        sc.end_class = ev.vclass;
        sc.end_ray = ev.arrival;
      }
      int id = static_cast<int>(dec.scs.size());
      by_start[r] = id;
      if (sc.resolved) {
        if (!by_end.emplace(sc.end_ray, id).second)
          throw std::logic_error("decompose: two separatrices share an arrival ray");
      }
      dec.scs.push_back(std::move(sc));
    }
  }
  bool all_resolved = true;
  for (const auto& sc : dec.scs) all_resolved = all_resolved && sc.resolved;

  // --- boundary cycles ----------------------------------------------------
  auto step_ray = [&](const Ray& r, int delta) -> Ray {
    auto [k, i] = ray_pos.at(r);
    int n = static_cast<int>(rays[k].cyclic.size());
    return rays[k].cyclic[((i + delta) % n + n) % n];
  };
  auto succ = [&](int i, int delta) -> int {
    const auto& sc = dec.scs[i];
    if (!sc.resolved) return -1;
    Ray nr = step_ray(sc.end_ray, delta);
    if (!nr.up) throw std::logic_error("decompose: rays do not alternate");
    auto it = by_start.find(nr);
    return it == by_start.end() ? -1 : it->second;
  };
  auto cycles_of = [&](int delta) {
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(dec.scs.size(), 0);
    for (int i = 0; i < static_cast<int>(dec.scs.size()); i++) {
      if (seen[i]) continue;
      std::vector<int> path;
      int cur = i;
      bool cycle = false;
      while (cur >= 0 && !seen[cur]) {
        seen[cur] = 1;
        path.push_back(cur);
        cur = succ(cur, delta);
        if (cur == i) {
          cycle = true;
          break;
        }
      }
      if (cycle) cycles.push_back(rotate_to_min(path));
    }
    return cycles;
  };
  auto east_cycles = cycles_of(+1);
  auto west_cycles = cycles_of(-1);

  std::vector<int> west_cycle_of(dec.scs.size(), -1);
  std::vector<FieldElement> west_prefix(dec.scs.size(), rot.fe(Rat(0)));
  for (int w = 0; w < static_cast<int>(west_cycles.size()); w++) {
    FieldElement p = rot.fe(Rat(0));
    for (int id : west_cycles[w]) {
      west_cycle_of[id] = w;
      west_prefix[id] = p;
      p = p + dec.scs[id].length;
    }
  }

  ChordIndex idx = ChordIndex::build(rot, dec.scs);

  // --- cylinder geometry ---------------------------------------------------
  std::vector<char> west_used(west_cycles.size(), 0);
  bool all_closed = true;
  for (const auto& E : east_cycles) {
    Cylinder cyl;
    cyl.west = E;
    cyl.circumference = rot.fe(Rat(0));
    for (int id : E) cyl.circumference = cyl.circumference + dec.scs[id].length;
    cyl.height = rot.fe(Rat(0));
    cyl.twist = rot.fe(Rat(0));

    const auto& s0 = dec.scs[E[0]];
    // chord to start the crossing flow from (east side for edge chords)
    const Chord* start_chord = nullptr;
    FieldElement chord_off = rot.fe(Rat(0));
    {
      FieldElement off = rot.fe(Rat(0));
      for (const Chord& ch : s0.chords) {
        FieldElement len = ch.hi.y - ch.lo.y;
        FieldElement this_off = ch.dup ? off - len : off;
        if (!ch.dup) off = off + len;
        bool ok = !ch.on_edge ||
                  rot.polys[ch.poly].edge(ch.edge).y.sign() < 0;
        if (ok && !start_chord) {
          start_chord = &ch;
          chord_off = this_off;
        }
      }
    }
    bool closed = false;
    if (start_chord) {
      for (int attempt = 0; attempt < 60 && !closed; attempt++) {
        Rat f = retry_fraction(attempt);
        FieldElement len = start_chord->hi.y - start_chord->lo.y;
        Vec pt{start_chord->lo.x, start_chord->lo.y + f * len};
        CrossHit hit;
        if (!detail::cross_flow(rot, topo, idx, start_chord->poly, pt, +1, budget, hit))
          continue;
        if (hit.height.is_zero() || hit.height == dec.scs[hit.sc].length) continue;
        int w = west_cycle_of[hit.sc];
        if (w < 0) break;
        cyl.height = hit.width;
        cyl.east = west_cycles[w];
        // boundary circles of a cylinder have equal length
        FieldElement elen = rot.fe(Rat(0));
        for (int id : cyl.east) elen = elen + dec.scs[id].length;
        if (!(elen == cyl.circumference))
          throw std::logic_error("decompose: boundary circle lengths differ");
        FieldElement coord_e = chord_off + f * len;  // E[0] has prefix 0
        FieldElement coord_w = west_prefix[hit.sc] + hit.height;
        FieldElement tw = coord_w - coord_e;
        if (tw.sign() < 0) tw = tw + cyl.circumference;
        if (!((tw - cyl.circumference).sign() < 0 && tw.sign() >= 0))
          throw std::logic_error("decompose: twist normalization");
        cyl.twist = tw;
        west_used[w]++;
        closed = true;
      }
    }
    cyl.closed = closed;
    all_closed = all_closed && closed;
    cyl.simple = cyl.west.size() == 1 && closed && cyl.east.size() == 1;
    dec.cylinders.push_back(std::move(cyl));
  }

  bool paired = true;
  for (char u : west_used) paired = paired && u == 1;
  dec.complete = all_resolved && all_closed && paired &&
                 east_cycles.size() == west_cycles.size() && !east_cycles.empty();

  if (dec.complete) {
    FieldElement total = rot.fe(Rat(0));
    for (const auto& c : dec.cylinders) total = total + c.circumference * c.height;
    if (!(total == rot.area()))
      throw std::logic_error("decompose: cylinder areas do not sum to the surface area");
  }

  // --- involution action ---------------------------------------------------
  auto inv = flatsurf::find_involution(rot);
  dec.has_involution = inv.has_value();
  if (inv) {
    dec.sc_image.assign(dec.scs.size(), -1);
    for (int i = 0; i < static_cast<int>(dec.scs.size()); i++) {
      if (!dec.scs[i].resolved) continue;
      const Chord* ch = nullptr;
      for (const Chord& c : dec.scs[i].chords)
        if (!c.dup) {
          ch = &c;
          break;
        }
      if (!ch) continue;
      Vec mid{ch->lo.x, ch->lo.y + Rat(1, 2) * (ch->hi.y - ch->lo.y)};
      const auto& pm = inv->map[ch->poly];
      Vec img = flatsurf::apply_poly_map(pm, mid);
      for (const auto& en : idx.by_poly[pm.target]) {
        if (!(en.chord.lo.x == img.x)) continue;
        if ((img.y - en.chord.lo.y).sign() < 0) continue;
        if ((en.chord.hi.y - img.y).sign() < 0) continue;
        dec.sc_image[i] = en.sc;
        break;
      }
    }
    for (int a = 0; a < static_cast<int>(dec.cylinders.size()); a++) {
      auto& cyl = dec.cylinders[a];
      std::set<int> img;
      bool ok = true;
      for (int id : cyl.west) {
        int j = dec.sc_image[id];
        if (j < 0) ok = false;
        img.insert(j);
      }
      if (!ok) continue;
      for (int b = 0; b < static_cast<int>(dec.cylinders.size()); b++) {
        std::set<int> east(dec.cylinders[b].east.begin(), dec.cylinders[b].east.end());
        if (east == img) {
          cyl.involution_image = b;
          break;
        }
      }
    }
  }
  return dec;
}

// ===========================================================================
// Canonical rectangular re-presentation of a completely decomposed surface.
// Every cylinder is cut along the horizontal leaves through the zeros and
// marked points on its left boundary circle; the resulting strips are
// rectangles, and the construction involves no arbitrary choices, so two
// surfaces are translation-isomorphic iff their rebuilt presentations are.

namespace {

struct FeLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const {
    return (a - b).sign() < 0;
  }
};

struct Circle {
  std::vector<int> scs;
  std::vector<FieldElement> prefix;
  FieldElement total;
};

Circle make_circle(const Decomposition& dec, const std::vector<int>& list) {
  Circle c;
  c.scs = list;
  c.total = dec.rotated.fe(Rat(0));
  for (int id : list) {
    c.prefix.push_back(c.total);
    c.total = c.total + dec.scs[id].length;
  }
  return c;
}

FieldElement norm_mod(FieldElement t, const FieldElement& c) {
  while (t.sign() < 0) t = t + c;
  while ((t - c).sign() >= 0) t = t - c;
  return t;
}

// prefix coordinate of a saddle connection on a circle (each appears once)
FieldElement prefix_of(const Circle& c, int sc) {
  for (size_t i = 0; i < c.scs.size(); i++)
    if (c.scs[i] == sc) return c.prefix[i];
  throw std::logic_error("prefix_of: saddle connection not on circle");
}

// locate a normalized circle coordinate: returns (index, sc, height)
std::tuple<int, int, FieldElement> locate(const Circle& c,
                                          const FieldElement& coord) {
  for (int i = static_cast<int>(c.scs.size()) - 1; i >= 0; i--) {
    if ((coord - c.prefix[i]).sign() >= 0)
      return {i, c.scs[i], coord - c.prefix[i]};
  }
  throw std::logic_error("locate: negative circle coordinate");
}

struct RebuildResult {
  Surface surf;
  std::set<std::pair<int, int>> marked;  // (poly, vertex) of original marked points
};

std::optional<RebuildResult> rebuild_rectangular(const Decomposition& dec) {
  if (!dec.complete) return std::nullopt;
  const Surface& rot = dec.rotated;
  Topology topo = flatsurf::topology(rot);
  int ncyl = static_cast<int>(dec.cylinders.size());

  std::vector<Circle> westC, eastC;
  std::vector<int> east_of(dec.scs.size(), -1);  // cylinder east of the SC
  for (int i = 0; i < ncyl; i++) {
    westC.push_back(make_circle(dec, dec.cylinders[i].west));
    eastC.push_back(make_circle(dec, dec.cylinders[i].east));
    for (int id : dec.cylinders[i].west) east_of[id] = i;
  }

  ChordIndex idx = ChordIndex::build(rot, dec.scs);

  struct Mark {
    FieldElement height;
    bool original;
  };
  std::map<int, std::vector<Mark>> marks_on_sc;
  struct CutVert {
    FieldElement depth;
    // original marked point by construction
  };
  struct Cut {
    FieldElement start;
    std::vector<CutVert> verts;
  };
  std::vector<std::vector<Cut>> cuts(ncyl);

  // cuts through the zeros / stop points on each left circle
  for (int i = 0; i < ncyl; i++)
    for (size_t j = 0; j < westC[i].scs.size(); j++)
      cuts[i].push_back(Cut{westC[i].prefix[j], {}});

  // locate genuinely marked points (regular classes that did not stop traces)
  if (!dec.no_singularity) {
    for (int k = 0; k < static_cast<int>(topo.vertices.size()); k++) {
      if (topo.vertices[k].singular()) continue;
      Corner c0 = topo.vertices[k].corners.front();
      Vec pos = rot.polys[c0.poly].vertex(c0.vertex);
      // on a saddle connection?
      bool on_sc = false;
      for (const auto& en : idx.by_poly[c0.poly]) {
        if (!(en.chord.lo.x == pos.x)) continue;
        if ((pos.y - en.chord.lo.y).sign() < 0 || (en.chord.hi.y - pos.y).sign() < 0) continue;
        marks_on_sc[en.sc].push_back(Mark{en.offset + (pos.y - en.chord.lo.y), true});
        on_sc = true;
        break;
      }
      if (on_sc) continue;
      // interior marked point: flow west to the left boundary circle
      CrossHit hit;
      if (!detail::cross_flow(rot, topo, idx, c0.poly, pos, -1, default_budget(),
                              hit, &c0))
        return std::nullopt;
      int cy = east_of[hit.sc];
      if (cy < 0) return std::nullopt;
      FieldElement coord = norm_mod(prefix_of(westC[cy], hit.sc) + hit.height,
                                    dec.cylinders[cy].circumference);
      // attach to an existing cut or create a new one
      bool attached = false;
      for (auto& cut : cuts[cy]) {
        if (cut.start == coord) {
          cut.verts.push_back(CutVert{hit.width});
          attached = true;
          break;
        }
      }
      if (!attached) {
        cuts[cy].push_back(Cut{coord, {CutVert{hit.width}}});
        // the new cut begins at a fresh mark on the left circle
        if (!hit.height.is_zero() && !(hit.height == dec.scs[hit.sc].length))
          marks_on_sc[hit.sc].push_back(Mark{hit.height, false});
      }
    }
  }

  for (int i = 0; i < ncyl; i++) {
    std::sort(cuts[i].begin(), cuts[i].end(),
              [](const Cut& a, const Cut& b) { return (a.start - b.start).sign() < 0; });
    // merge equal cut positions
    std::vector<Cut> merged;
    for (auto& cut : cuts[i]) {
      if (!merged.empty() && merged.back().start == cut.start) {
        for (auto& v : cut.verts) merged.back().verts.push_back(v);
      } else {
        merged.push_back(std::move(cut));
      }
    }
    for (auto& cut : merged)
      std::sort(cut.verts.begin(), cut.verts.end(),
                [](const CutVert& a, const CutVert& b) { return (a.depth - b.depth).sign() < 0; });
    cuts[i] = std::move(merged);
  }

  // cut endpoints become marks on the right circles
  for (int i = 0; i < ncyl; i++) {
    const auto& cyl = dec.cylinders[i];
    for (const Cut& cut : cuts[i]) {
      FieldElement end = norm_mod(cut.start + cyl.twist, cyl.circumference);
      auto [pos, sc, h] = locate(eastC[i], end);
      (void)pos;
      if (!h.is_zero() && !(h == dec.scs[sc].length))
        marks_on_sc[sc].push_back(Mark{h, false});
    }
  }

  // breakpoint lists per saddle connection: 0, marks..., length
  std::map<int, std::vector<Mark>> bps;
  for (int id = 0; id < static_cast<int>(dec.scs.size()); id++) {
    std::vector<Mark> v = marks_on_sc.count(id) ? marks_on_sc[id] : std::vector<Mark>{};
    std::sort(v.begin(), v.end(),
              [](const Mark& a, const Mark& b) { return (a.height - b.height).sign() < 0; });
    std::vector<Mark> out;
    out.push_back(Mark{rot.fe(Rat(0)), false});
    for (auto& m : v) {
      if (m.height.is_zero() || m.height == dec.scs[id].length) continue;
      if (!out.empty() && out.back().height == m.height) {
        out.back().original = out.back().original || m.original;
      } else {
        out.push_back(m);
      }
    }
    out.push_back(Mark{dec.scs[id].length, false});
    bps[id] = std::move(out);
  }
  auto bp_index = [&](int sc, const FieldElement& h) -> int {
    const auto& v = bps[sc];
    for (int t = 0; t < static_cast<int>(v.size()); t++)
      if (v[t].height == h) return t;
    throw std::logic_error("rebuild: height is not a breakpoint");
  };

  // --- assemble strips ------------------------------------------------------
  RebuildResult res;
  res.surf.field = rot.field;
  std::map<std::pair<int, int>, EdgeRef> east_side, west_side;
  // cut gluing lists: (cyl, cut index) -> edges in ascending depth order
  std::map<std::pair<int, int>, std::vector<int>> cut_bottom_poly, cut_top_poly;
  std::map<std::pair<int, int>, std::vector<int>> cut_bottom_edge, cut_top_edge;

  auto class_is_marked = [&](int sc_id, bool bottom) {
    int k = bottom ? dec.scs[sc_id].start_class : dec.scs[sc_id].end_class;
    return !topo.vertices[k].singular();
  };

  for (int i = 0; i < ncyl; i++) {
    const auto& cyl = dec.cylinders[i];
    const FieldElement& c = cyl.circumference;
    const FieldElement& h = cyl.height;
    int m = static_cast<int>(cuts[i].size());
    // circle events (coordinate, sc, breakpoint index, original flag)
    struct Ev {
      FieldElement coord;
      int sc, t;
      bool original;
    };
    auto circle_events = [&](const Circle& circ) {
      std::vector<Ev> evs;
      for (size_t j = 0; j < circ.scs.size(); j++) {
        int id = circ.scs[j];
        const auto& list = bps[id];
        // skip the final breakpoint: it coincides with the next junction
        for (int t = 0; t + 1 < static_cast<int>(list.size()); t++) {
          bool orig = t == 0 ? class_is_marked(id, true) : list[t].original;
          evs.push_back(Ev{norm_mod(circ.prefix[j] + list[t].height, circ.total), id, t, orig});
        }
      }
      std::sort(evs.begin(), evs.end(),
                [](const Ev& a, const Ev& b) { return (a.coord - b.coord).sign() < 0; });
      return evs;
    };
    auto wev = circle_events(westC[i]);
    auto eev = circle_events(eastC[i]);

    for (int j = 0; j < m; j++) {
      const Cut& bot = cuts[i][j];
      const Cut& top = cuts[i][(j + 1) % m];
      FieldElement ell = m == 1 ? c : norm_mod(top.start - bot.start, c);
      if (ell.is_zero()) throw std::logic_error("rebuild: empty strip");
      FieldElement q0 = norm_mod(bot.start + cyl.twist, c);

      // gather events strictly inside the east/west arcs, with local offsets
      auto inside = [&](const std::vector<Ev>& evs, const FieldElement& a0) {
        std::vector<std::pair<FieldElement, const Ev*>> out;
        for (const auto& e : evs) {
          FieldElement off = norm_mod(e.coord - a0, c);
          if (off.sign() > 0 && (off - ell).sign() < 0) out.emplace_back(off, &e);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return (a.first - b.first).sign() < 0; });
        return out;
      };
      auto einside = inside(eev, q0);
      auto winside = inside(wev, bot.start);

      Polygon poly;
      int pid = static_cast<int>(res.surf.polys.size());
      std::vector<std::pair<int, bool>> vert_marked;  // parallel original flags
      auto push = [&](FieldElement x, FieldElement y, bool orig) {
        poly.v.push_back(Vec{std::move(x), std::move(y)});
        vert_marked.emplace_back(static_cast<int>(poly.v.size()) - 1, orig);
      };
      const FieldElement z = rot.fe(Rat(0));

      // bottom edge, left to right (cut j)
      {
        auto [posb, scb, hb] = locate(westC[i], bot.start);
        (void)posb;
        bool corner_orig = hb.is_zero() ? class_is_marked(scb, true) : false;
        // a non-junction cut start is a spurious mark, never original
        push(z, z, corner_orig);
      }
      std::vector<int> bot_edges;
      for (const auto& v : bot.verts) {
        bot_edges.push_back(poly.size() - 1);
        push(v.depth, z, true);
      }
      bot_edges.push_back(poly.size() - 1);
      push(h, z, false);
      // right edge upward (east circle arc)
      struct SideEdge {
        int sc, t, edge;
      };
      std::vector<SideEdge> right_edges;
      {
        auto [p0, sc0, h0] = locate(eastC[i], q0);
        (void)p0;
        int sc = sc0, t = bp_index(sc0, h0);
        for (const auto& [off, e] : einside) {
          right_edges.push_back(SideEdge{sc, t, poly.size() - 1});
          push(h, off, e->original);
          sc = e->sc;
          t = e->t;
        }
        right_edges.push_back(SideEdge{sc, t, poly.size() - 1});
      }
      push(h, ell, false);
      // top edge, right to left (cut j+1)
      std::vector<int> top_edges;
      {
        for (auto it = top.verts.rbegin(); it != top.verts.rend(); ++it) {
          top_edges.push_back(poly.size() - 1);
          push(it->depth, ell, true);
        }
        top_edges.push_back(poly.size() - 1);
        std::reverse(top_edges.begin(), top_edges.end());
      }
      {
        auto [post, sct, ht] = locate(westC[i], top.start);
        (void)post;
        bool corner_orig = ht.is_zero() ? class_is_marked(sct, true) : false;
        push(z, ell, corner_orig);
      }
      // left edge downward (west circle arc, offsets descending)
      std::vector<SideEdge> left_edges;
      {
        // sub-edges from top to bottom; register ascending afterwards
        std::vector<std::tuple<int, int, int>> tmp;  // sc, t, edge index
        auto [p0, sc0, h0] = locate(westC[i], bot.start);
        (void)p0;
        // walk winside in reverse: each event is the lower end of the
        // sub-edge just created
        std::vector<std::pair<FieldElement, const Ev*>> rev(winside.rbegin(), winside.rend());
        for (const auto& [off, e] : rev) {
          tmp.emplace_back(e->sc, e->t, poly.size() - 1);
          push(z, off, e->original);
        }
        // final sub-edge down to (0,0): its lower end is the cut start
        tmp.emplace_back(sc0, bp_index(sc0, h0), poly.size() - 1);
        for (auto& [sc, t, edge] : tmp) left_edges.push_back(SideEdge{sc, t, edge});
      }
      // the closing edge of the polygon returns to vertex 0; edge index of
      // the last left sub-edge is size()-1
      res.surf.polys.push_back(poly);
      for (auto& [vi, orig] : vert_marked)
        if (orig) res.marked.insert({pid, vi});

      auto key = [&](int cyl_i, int cut_i) { return std::make_pair(cyl_i, cut_i); };
      cut_bottom_poly[key(i, j)].push_back(pid);
      cut_top_poly[key(i, (j + 1) % m)].push_back(pid);
      cut_bottom_edge[key(i, j)] = bot_edges;  // edge index == start vertex
      cut_top_edge[key(i, (j + 1) % m)] = top_edges;
      for (const auto& se : right_edges) {
        if (!east_side.emplace(std::make_pair(se.sc, se.t), EdgeRef{pid, se.edge}).second)
          throw std::logic_error("rebuild: duplicate east side edge");
      }
      for (const auto& se : left_edges) {
        if (!west_side.emplace(std::make_pair(se.sc, se.t), EdgeRef{pid, se.edge}).second)
          throw std::logic_error("rebuild: duplicate west side edge");
      }
    }
    // glue the cuts of this cylinder
    for (int j = 0; j < m; j++) {
      auto kb = std::make_pair(i, j);
      const auto& be = cut_bottom_edge[kb];
      const auto& te = cut_top_edge[kb];
      int pb = cut_bottom_poly[kb].front();
      int pt = cut_top_poly[kb].front();
      if (be.size() != te.size()) throw std::logic_error("rebuild: cut subdivision mismatch");
      for (size_t t = 0; t < be.size(); t++) {
        EdgeRef a{pb, be[t]}, b{pt, te[t]};
        res.surf.glue[a] = b;
        res.surf.glue[b] = a;
      }
    }
  }

  // glue the saddle connections
  for (int id = 0; id < static_cast<int>(dec.scs.size()); id++) {
    for (int t = 0; t + 1 < static_cast<int>(bps[id].size()); t++) {
      auto k = std::make_pair(id, t);
      auto ie = east_side.find(k);
      auto iw = west_side.find(k);
      if (ie == east_side.end() || iw == west_side.end())
        throw std::logic_error("rebuild: missing side edge");
      res.surf.glue[ie->second] = iw->second;
      res.surf.glue[iw->second] = ie->second;
    }
  }

  res.surf.validate();
  if (!(res.surf.area() == rot.area()))
    throw std::logic_error("rebuild: area mismatch");
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_translation_isomorphic(const Surface& a, const Surface& b) {
  if (!a.field->same_field(*b.field)) {
    // try coercion through equal defining data
    if (!(a.field->min_poly() == b.field->min_poly())) return false;
  }
  if (!(a.area() == b.area())) return false;
  if (flatsurf::translation_isomorphism(a, b)) return true;

  // fallback: compare intrinsic rectangular presentations obtained from the
  // vertical cylinder decomposition
  auto one = a.fe(Rat(1)), zero = a.fe(Rat(0));
  Direction vert{zero, one};
  Decomposition da = decompose(a, vert);
  Decomposition db = decompose(b, vert);
  if (!da.complete || !db.complete) return false;
  if (da.cylinders.size() != db.cylinders.size()) return false;
  auto ra = rebuild_rectangular(da);
  auto rb = rebuild_rectangular(db);
  if (!ra || !rb) return false;
  if (ra->marked.size() != rb->marked.size()) return false;
  auto iso = flatsurf::translation_isomorphism(ra->surf, rb->surf);
  if (!iso) return false;
  // the isomorphism must carry original marked points to original marked
  // points (the rebuild introduces auxiliary vertices of its own)
  for (const auto& [p, vi] : ra->marked) {
    const auto& pm = (*iso)[p];
    Vec img = flatsurf::apply_poly_map(pm, ra->surf.polys[p].vertex(vi));
    const Polygon& tp = rb->surf.polys[pm.target];
    int found = -1;
    for (int t = 0; t < tp.size(); t++)
      if (tp.vertex(t) == img) {
        found = t;
        break;
      }
    if (found < 0 || !rb->marked.count({pm.target, found})) return false;
  }
  return true;
}

}  // namespace flow
