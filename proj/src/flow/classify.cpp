#include "flow/internal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace flow {

using exactfield::QPoly;

// ---------------------------------------------------------------------------
// Configuration signatures and labels.

ConfigSignature signature_of(const Decomposition& dec) {
  ConfigSignature sig;
  sig.n_cylinders = static_cast<int>(dec.cylinders.size());
  for (int i = 0; i < sig.n_cylinders; i++) {
    const Cylinder& c = dec.cylinders[i];
    bool fx = dec.has_involution && c.involution_image == i;
    sig.fixed.push_back(fx);
    sig.simple.push_back(c.simple);
    if (fx) sig.n_fixed++;
    int w = static_cast<int>(c.west.size());
    int e = static_cast<int>(c.east.size());
    sig.boundary_counts.emplace_back(std::min(w, e), std::max(w, e));
  }
  // saddle connections touching two distinct fixed cylinders
  std::vector<int> east_of(dec.scs.size(), -1), west_of(dec.scs.size(), -1);
  for (int i = 0; i < sig.n_cylinders; i++) {
    for (int id : dec.cylinders[i].west) east_of[id] = i;
    for (int id : dec.cylinders[i].east) west_of[id] = i;
  }
  for (size_t id = 0; id < dec.scs.size(); id++) {
    int a = west_of[id], b = east_of[id];
    if (a >= 0 && b >= 0 && a != b && sig.fixed[a] && sig.fixed[b])
      sig.shared_between_fixed++;
  }
  return sig;
}

std::string classify_signature(const ConfigSignature& sig) {
  int n = sig.n_cylinders;
  int nsimple = static_cast<int>(std::count(sig.simple.begin(), sig.simple.end(), true));
  switch (n) {
    case 2: {
      if (sig.n_fixed == 0) return "h";
      if (sig.n_fixed != 2) return "!two cylinders with one fixed";
      // Both cylinders are involution-invariant, so each has equally many
      // saddle connections on its two boundary circles; the total over both
      // cylinders is six, leaving exactly three splits.
      std::vector<int> sides;
      for (auto& [w, e] : sig.boundary_counts) {
        if (w != e) return "!fixed cylinder with unequal boundary counts";
        sides.push_back(w);
      }
      std::sort(sides.begin(), sides.end());
      if (sides == std::vector<int>{1, 5}) return "i";
      if (sides == std::vector<int>{2, 4}) return "j";
      if (sides == std::vector<int>{3, 3}) return "k";
      return "!two fixed cylinders with unexpected boundary counts";
    }
    case 3: {
      if (sig.n_fixed == 1) {
        if (nsimple == 0) return "a";
        if (nsimple == 1) return "b";
        return "!one fixed cylinder with too many simple cylinders";
      }
      if (sig.n_fixed == 3) {
        if (nsimple == 0) return "c";
        if (nsimple == 2) return "d";
        return "!three fixed cylinders with unexpected simple count";
      }
      return "!three cylinders with unexpected fixed count";
    }
    case 4: {
      if (sig.n_fixed != 2) return "!four cylinders with unexpected fixed count";
      if (nsimple == 1) return "g";
      if (nsimple == 2) {
        bool f0 = true, x0 = true;
        for (int i = 0; i < 4; i++) {
          if (!sig.simple[i]) continue;
          if (!sig.fixed[i]) f0 = false;
          if (sig.fixed[i]) x0 = false;
        }
        if (x0) return "e";  // the two simple cylinders are exchanged
        if (f0) return "f";  // the two simple cylinders are fixed
        return "!one simple cylinder fixed, one exchanged";
      }
      return "!four cylinders with unexpected simple count";
    }
    default:
      return "!cylinder count outside 2..4";
  }
}

std::string classify_configuration(const Decomposition& dec) {
  if (!dec.complete) return "!incomplete decomposition";
  if (dec.no_singularity) return "!no singularity (torus-like surface)";
  if (!dec.has_involution) return "!surface has no involution";
  std::vector<int> orders = flatsurf::stratum(dec.rotated);
  if (orders != std::vector<int>{2, 2}) return "!stratum is not (2,2)";
  if (dec.scs.size() != 6) return "!expected six saddle connections";
  return classify_signature(signature_of(dec));
}

// ---------------------------------------------------------------------------
// Commensurability of cylinder moduli.

Commensurability commensurability_type(const std::vector<FieldElement>& moduli) {
  Commensurability res;
  res.type = Commensurability::Other;
  if (moduli.empty()) {
    res.type = Commensurability::Parabolic;
    return res;
  }
  bool parabolic = true;
  for (size_t i = 1; i < moduli.size() && parabolic; i++)
    if (!(moduli[i] / moduli[0]).is_rational()) parabolic = false;
  if (parabolic) {
    res.type = Commensurability::Parabolic;
    return res;
  }
  auto rels = exactfield::rational_relations(moduli);
  if (rels.empty()) {
    res.type = Commensurability::Independent;
  } else if (rels.size() == 1) {
    res.type = Commensurability::SingleRelation;
    // scale to coprime integers
    std::vector<Rat> rel = rels[0];
    exactfield::Int lcm_den(1);
    for (const Rat& q : rel) {
      exactfield::Int d = q.get_den();
      lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    exactfield::Int g(0);
    for (Rat& q : rel) {
      q *= Rat(lcm_den);
      q.canonicalize();
      g = gcd(g, q.get_num());
    }
    if (g != 0)
      for (Rat& q : rel) {
        q /= Rat(g);
        q.canonicalize();
      }
    if (!rel.empty() && rel[0] < 0)
      for (Rat& q : rel) q = -q;
    res.relation = rel;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Flux identities.  With circumferences c_i and heights h_i in the field
// K = Q(alpha), both identities state that sum_i h_i * sigma(c_i) vanishes
// at every nontrivial real embedding sigma (the moduli-weighted form equals
// the height-weighted form because m_i * c_i = h_i exactly).  Writing
// c_i = sum_j c_ij alpha^j, the sum at sigma is G(sigma(alpha)) for the
// polynomial G(y) = sum_j (sum_i c_ij h_i) y^j over K.  The identity holds
// iff G is divisible by f(y)/(y - alpha), where f is the minimal polynomial
// of alpha; since deg G <= deg f - 1, this means G is a constant multiple
// of the quotient.

bool flux_identities_hold(const Decomposition& dec) {
  if (!dec.complete) return false;
  const auto& field = dec.rotated.field;
  int d = field->degree();
  if (d == 1) return true;  // no nontrivial embeddings

  auto zero = FieldElement::rational(field, Rat(0));
  std::vector<FieldElement> G(d, zero);
  for (const Cylinder& cyl : dec.cylinders) {
    const auto& cc = cyl.circumference.coords();
    for (int j = 0; j < d; j++)
      G[j] = G[j] + Rat(j < static_cast<int>(cc.size()) ? cc[j] : Rat(0)) * cyl.height;
  }

  // Q(y) = f(y) / (y - alpha) by synthetic division, coefficients in K.
  const auto& f = field->min_poly();
  FieldElement alpha = FieldElement::generator(field);
  std::vector<FieldElement> Q(d, zero);
  FieldElement carry = FieldElement::rational(field, Rat(1));  // leading coeff
  for (int j = d - 1; j >= 0; j--) {
    Q[j] = carry;
    carry = alpha * carry + Rat(f.c[j]) * FieldElement::rational(field, Rat(1));
  }
  // carry is now f(alpha) = 0; Q has degree d-1 with Q[d-1] = 1.
  if (!carry.is_zero()) throw std::logic_error("flux: synthetic division failed");

  // G must be const * Q; the constant is G[d-1] since Q[d-1] = 1.
  const FieldElement& k = G[d - 1];
  for (int j = 0; j < d; j++)
    if (!(G[j] == k * Q[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Search for completely periodic directions.  Candidate directions are the
// differences of singular-vertex positions in a translation unfolding of
// the surface, kept when their sup-norm is at most L after normalizing the
// area to 1 (compared exactly by squaring).

namespace {

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const {
    return flatsurf::Vec::lex_compare(a, b) < 0;
  }
};

}  // namespace

std::vector<Direction> enumerate_cp_directions(const Surface& s, const Rat& L,
                                               long budget) {
  if (budget < 0) budget = default_budget();
  auto topo = flatsurf::topology(s);
  FieldElement area = s.area();
  FieldElement bound2 = Rat(L * L) * area;  // (L * sqrt(area))^2

  bool any_singular = false;
  for (const auto& vc : topo.vertices) any_singular |= vc.singular();

  auto relevant = [&](const flatsurf::VertexClass& vc) {
    return any_singular ? vc.singular() : true;
  };

  std::vector<Direction> result;
  std::vector<Vec> seen;  // canonical direction vectors found so far

  auto fe_abs_le = [&](const FieldElement& v, const FieldElement& cap2) {
    return (v * v - cap2).sign() <= 0;
  };

  // unfold from every corner of every relevant vertex class
  std::set<Vec, VecLess> candidates;
  for (const auto& vc : topo.vertices) {
    if (!relevant(vc)) continue;
    const flatsurf::Corner& c0 = vc.corners.front();
    Vec v0 = s.polys[c0.poly].vertex(c0.vertex);

    // BFS over translated polygon placements near v0
    struct Placement {
      int poly;
      Vec shift;
    };
    auto pkey = [&](const Placement& p) { return std::make_pair(p.poly, p.shift); };
    struct PKeyLess {
      bool operator()(const std::pair<int, Vec>& a, const std::pair<int, Vec>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return flatsurf::Vec::lex_compare(a.second, b.second) < 0;
      }
    };
    std::set<std::pair<int, Vec>, PKeyLess> visited;
    std::vector<Placement> queue;
    Vec zshift{s.fe(Rat(0)), s.fe(Rat(0))};
    queue.push_back(Placement{c0.poly, zshift});
    visited.insert(pkey(queue[0]));
    for (size_t qi = 0; qi < queue.size(); qi++) {
      Placement pl = queue[qi];
      const flatsurf::Polygon& p = s.polys[pl.poly];
      // does the placed polygon meet the sup-ball around v0?
      bool near = false;
      for (int i = 0; i < p.size() && !near; i++) {
        Vec w = p.vertex(i) + pl.shift - v0;
        if (fe_abs_le(w.x, bound2) && fe_abs_le(w.y, bound2)) near = true;
      }
      if (!near && qi > 0) continue;
      // record singular (or all marked, in the torus case) vertices
      for (int i = 0; i < p.size(); i++) {
        int k = topo.vertex_class_of(flatsurf::Corner{pl.poly, i});
        if (!relevant(topo.vertices[k])) continue;
        Vec w = p.vertex(i) + pl.shift - v0;
        if (w.x.is_zero() && w.y.is_zero()) continue;
        if (!fe_abs_le(w.x, bound2) || !fe_abs_le(w.y, bound2)) continue;
        candidates.insert(w);
      }
      // expand across every gluing
      for (int i = 0; i < p.size(); i++) {
        flatsurf::EdgeRef e{pl.poly, i};
        const flatsurf::EdgeRef& f = s.partner(e);
        Placement np{f.poly, pl.shift + s.gluing_shift(f)};
        if (visited.insert(pkey(np)).second) queue.push_back(np);
      }
    }
  }

  for (const Vec& w : candidates) {
    Direction d = Direction::of(w.x, w.y);
    bool dup = false;
    for (const Vec& sv : seen)
      if (sv.x == d.x && sv.y == d.y) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back(Vec{d.x, d.y});
    Decomposition dec = decompose(s, d, budget);
    if (dec.complete) result.push_back(d);
  }
  return result;
}

}  // namespace flow
