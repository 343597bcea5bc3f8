// Directional flow on translation surfaces: exact separatrix tracing,
// cylinder decompositions, configuration classification, and the
// arithmetic identities satisfied by periodic directions.
//
// All tracing happens on a rotated copy of the surface where the chosen
// direction is vertical; the rotation is the similarity [[y, -x], [x, y]],
// which keeps coordinates inside the surface's number field.

#pragma once

#include "flatsurf/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flow {

using exactfield::FieldElement;
using exactfield::Rat;
using flatsurf::Corner;
using flatsurf::EdgeRef;
using flatsurf::Mat2;
using flatsurf::Surface;
using flatsurf::Vec;

// ---------------------------------------------------------------------------

struct Direction {
  FieldElement x, y;
  // canonical form: y > 0 scaled to y = 1; y == 0 becomes (1, 0)
  static Direction of(const FieldElement& x, const FieldElement& y);
  bool operator==(const Direction& o) const { return x == o.x && y == o.y; }
  bool is_horizontal() const { return y.is_zero(); }
};

Mat2 similarity_to_vertical(const flatsurf::FieldPtr& f, const Direction& d);

// default separatrix budget: FLATSURF_BUDGET env var, else 10000 crossings
long default_budget();

// ---------------------------------------------------------------------------
// Rays of the vertical foliation at a vertex class of the rotated surface.

struct Ray {
  Corner corner;        // owning corner (for along_edge, the edge is
                        // (corner.poly, corner.vertex))
  bool along_edge = false;
  bool up = true;
  auto operator<=>(const Ray&) const = default;
};

// a maximal vertical segment of a saddle connection inside one polygon
struct Chord {
  int poly;
  Vec lo, hi;  // lo.y < hi.y, equal x
  bool on_edge = false;
  int edge = -1;  // if on_edge: this chord runs along edge (poly, edge)
  bool dup = false;  // second polygon copy of the same edge-aligned segment
};

struct SaddleConnection {
  bool resolved = false;
  std::vector<Chord> chords;  // bottom to top (one entry per polygon visited)
  FieldElement length;        // vertical holonomy
  int start_class = -1, end_class = -1;
  Ray start_ray, end_ray;
};

struct Cylinder {
  FieldElement circumference, height, twist;
  std::vector<int> west;  // SC indices of the boundary left of the cylinder
  std::vector<int> east;  // SC indices of the boundary right of the cylinder
  bool simple = false;
  bool closed = false;            // geometry fully determined
  int involution_image = -2;      // -2 unknown, else cylinder index
  FieldElement modulus() const { return height / circumference; }
  FieldElement inverse_modulus() const { return circumference / height; }
};

struct Decomposition {
  Direction dir;
  Surface rotated;                 // the rotated surface the data refers to
  bool complete = false;
  bool no_singularity = false;     // torus-like: marked points used as stops
  std::vector<SaddleConnection> scs;
  std::vector<Cylinder> cylinders;
  // involution data on the rotated surface, when one exists
  bool has_involution = false;
  std::vector<int> sc_image;       // involution action on saddle connections
  int fixed_cylinders() const;
  int simple_cylinders() const;
};

// Decompose the surface in the given direction.  budget < 0 means
// default_budget().  The result is complete when every separatrix closed
// into a saddle connection and every cylinder was assembled.
Decomposition decompose(const Surface& s, const Direction& d, long budget = -1);

// ---------------------------------------------------------------------------
// Configuration labels for completely periodic directions on genus-3
// hyperelliptic-locus surfaces in stratum (2,2).  Labels "a".."k"; returns
// an explanatory string starting with '!' when the inputs do not qualify.
std::string classify_configuration(const Decomposition& dec);

// Same interface, fed directly with the combinatorial data (used by tests
// that build configurations by hand).
struct ConfigSignature {
  int n_cylinders = 0;
  int n_fixed = 0;
  std::vector<bool> simple;           // per cylinder
  std::vector<bool> fixed;            // per cylinder
  std::vector<std::pair<int, int>> boundary_counts;  // (west, east), sorted pair per cylinder
  int shared_between_fixed = 0;       // SCs appearing on both fixed cylinders (2-cyl case)
};
std::string classify_signature(const ConfigSignature& sig);
ConfigSignature signature_of(const Decomposition& dec);

// ---------------------------------------------------------------------------
// Arithmetic of completely periodic directions.

struct Commensurability {
  enum Type { Parabolic, Independent, SingleRelation, Other } type;
  std::vector<Rat> relation;  // for SingleRelation: integer coefficients
};
Commensurability commensurability_type(const std::vector<FieldElement>& moduli);

// Both flux identities (moduli-weighted and height-weighted sums of
// circumference conjugates) vanish at every nontrivial real embedding.
bool flux_identities_hold(const Decomposition& dec);

// ---------------------------------------------------------------------------
// Translation isomorphism with a decomposition-based normal form fallback
// for surfaces presented with different polygon multisets.
bool is_translation_isomorphic(const Surface& a, const Surface& b);

// ---------------------------------------------------------------------------
// Search for completely periodic directions: candidate directions come from
// differences of singular vertices in a bounded translation unfolding,
// with the bound L measured on the area-normalized surface.
std::vector<Direction> enumerate_cp_directions(const Surface& s, const Rat& L,
                                               long budget = -1);

// ---------------------------------------------------------------------------
// Internal tracing interface, shared with the invariants module.

struct VerticalRays {
  int vclass;
  bool singular;
  std::vector<Ray> cyclic;  // counterclockwise cyclic order
};

// rays of the vertical foliation at every vertex class
std::vector<VerticalRays> vertical_rays(const Surface& rot);

// Transversal for first-return maps: a horizontal open segment inside (or on
// the boundary of) one polygon of the rotated surface.
struct Transversal {
  int poly;
  FieldElement y;
  FieldElement x_lo, x_hi;
};

struct FlowHit {
  enum Kind { HitTransversal, HitSingular, BudgetExhausted } kind;
  FieldElement x;        // landing coordinate for HitTransversal
  FieldElement rise;     // total vertical distance traveled
};

// Flow a point of the transversal upward until it returns to the
// transversal (from below) or reaches a singularity.
FlowHit flow_up_from_transversal(const Surface& rot, const Transversal& t,
                                 const FieldElement& x, long budget);

// Trace the separatrix leaving along the given ray downward/upward until it
// crosses the transversal; used to find the discontinuities of first-return
// maps.  Returns nothing if the separatrix hits a singularity first or the
// budget runs out without a crossing.
std::optional<FieldElement> ray_hits_transversal(const Surface& rot, const Ray& ray,
                                                 const Transversal& t, long budget);

}  // namespace flow
