// Internal tracing machinery shared by the flow sources and the invariants
// module.  Everything here works on a rotated surface whose flow direction
// is vertical.

#pragma once

#include "flow/flow.hpp"

#include <set>
#include <utility>

namespace flow::detail {

using exactfield::FieldElement;
using flatsurf::Topology;

struct TraceEvent {
  enum Kind { Singular, Transversal, Budget } kind = Budget;
  int vclass = -1;          // arrival vertex class (Singular)
  Ray arrival;              // arrival down-ray (Singular)
  FieldElement x;           // landing coordinate (Transversal)
  FieldElement rise;        // total vertical distance traveled
  std::vector<Chord> chords;
  std::vector<std::pair<int, FieldElement>> through_marks;  // (class, height)
};

class Tracer {
 public:
  Tracer(const Surface& s, const Topology& topo) : s_(s), topo_(topo) {}

  void set_stops(const std::set<int>* stops) { stops_ = stops; }
  void set_barrier(const Transversal* barrier) { barrier_ = barrier; }
  void set_budget(long b) { budget_ = b; }
  void set_record(bool r) { record_ = r; }

  TraceEvent run_from_ray(const Ray& r) const;      // r must be an up ray
  TraceEvent run_from_point(int poly, Vec pt) const;  // upward ray enters poly

 private:
  struct State;
  TraceEvent run(State st) const;

  const Surface& s_;
  const Topology& topo_;
  const std::set<int>* stops_ = nullptr;
  const Transversal* barrier_ = nullptr;
  long budget_ = 10000;
  bool record_ = false;
};

// Horizontal flow inside a decomposed surface: from pt in poly, flow east
// (dir = +1) or west (dir = -1) until hitting a saddle-connection chord.
// Passes through regular vertex classes.  Fails (returns false) on any
// degenerate incidence (vertex hit at a singular class, travel along an
// edge, chord endpoint hit) or budget exhaustion; callers retry with a
// different start height.
struct CrossHit {
  int sc = -1;                // saddle connection hit
  FieldElement height;        // position along the SC, from its bottom
  FieldElement width;         // horizontal distance traveled
};

// Arrivals exactly at a saddle connection endpoint report height 0 or the
// full length; callers that need an interior hit must reject those and
// retry from a different start height.  Pass start_vertex when pt is a
// (regular) polygon vertex; the flow then starts by passing through it.

struct ChordIndex {
  // chords grouped by polygon; (sc index, chord, height offset of chord.lo
  // above the SC's bottom end)
  struct Entry {
    int sc;
    Chord chord;
    FieldElement offset;
  };
  std::vector<std::vector<Entry>> by_poly;
  static ChordIndex build(const Surface& s, const std::vector<SaddleConnection>& scs);
};

bool cross_flow(const Surface& s, const Topology& topo, const ChordIndex& idx,
                int poly, Vec pt, int dir, long budget, CrossHit& out,
                const flatsurf::Corner* start_vertex = nullptr);

}  // namespace flow::detail
