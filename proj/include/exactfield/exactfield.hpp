// Exact arithmetic in real algebraic number fields of small degree.
//
// A field is described by a monic irreducible integer polynomial together
// with an isolating rational interval that pins down one of its real roots.
// Elements are rational coordinate vectors over the power basis.  All sign
// decisions are made exactly: an element is zero iff its coordinates are
// zero, and otherwise its sign is obtained by interval bisection of the
// defining root, which terminates because the value is a nonzero algebraic
// number.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exactfield {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q, coefficients stored low to high.

struct QPoly {
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);
  static QPoly from_ints(const std::vector<long>& coeffs);

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  void normalize();
  Rat eval(const Rat& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& b);
  bool operator==(const QPoly& o) const { return c == o.c; }
};

// Quotient and remainder of polynomial division over Q.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);  // monic gcd

// Monic integer polynomial (minimal polynomials of field generators).
struct MonicIntPoly {
  std::vector<Int> c;  // low to high, c.back() == 1

  int degree() const { return static_cast<int>(c.size()) - 1; }
  QPoly to_q() const;
  std::string to_string(const std::string& var = "X") const;
  bool operator==(const MonicIntPoly& o) const { return c == o.c; }

  static MonicIntPoly from_ints(const std::vector<long>& coeffs);
  static MonicIntPoly from_big(std::vector<Int> coeffs);
};

// Factor a monic integer polynomial of degree <= 4 into monic irreducible
// integer factors (with multiplicity, degree-sorted).  Uses rational root
// stripping plus a divisor search for quadratic factor pairs.
std::vector<MonicIntPoly> factor_monic(const MonicIntPoly& p);

bool is_irreducible(const MonicIntPoly& p);

// Number of distinct real roots of p in the open interval (lo, hi),
// computed with a Sturm sequence.
int sturm_count(const QPoly& p, const Rat& lo, const Rat& hi);

// Isolating intervals for all real roots of a squarefree polynomial,
// sorted increasingly.  Endpoints are rational and are never roots.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p);

// ---------------------------------------------------------------------------
// Number fields.

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct Embedding {
  int index;  // position in the increasing list of real roots
  Rat lo, hi;
};

class FieldElement;

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // Throws std::invalid_argument unless poly is irreducible of degree <= 4
  // and (lo, hi) isolates exactly one real root.
  static FieldPtr define(const MonicIntPoly& poly, const Rat& lo, const Rat& hi);
  static FieldPtr rationals();  // the degree-1 field Q, generator 0

  const MonicIntPoly& min_poly() const { return poly_; }
  int degree() const { return degree_; }
  std::pair<Rat, Rat> isolating_interval() const;

  // All real embeddings, sorted by root value; which_embedding() is the
  // index of the field's own root among them.
  const std::vector<Embedding>& embeddings() const;
  int which_embedding() const;

  // Shrink the stored isolating interval below the given width and return it.
  std::pair<Rat, Rat> refine(const Rat& width) const;

  bool same_field(const NumberField& o) const;

 private:
  NumberField() = default;
  MonicIntPoly poly_;
  int degree_ = 0;
  mutable Rat lo_, hi_;             // isolating interval, refined in place
  mutable int sign_lo_ = 0;         // sign of poly_ at lo_
  std::vector<QPoly> high_powers_;  // alpha^d .. alpha^(2d-2) reduced
  mutable std::vector<Embedding> embeddings_;
  mutable int own_embedding_ = -1;

  friend class FieldElement;
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
};

// ---------------------------------------------------------------------------
// Field elements.

class FieldElement {
 public:
  FieldElement() = default;  // invalid until assigned
  FieldElement(FieldPtr field, std::vector<Rat> coords);
  static FieldElement rational(const FieldPtr& field, const Rat& q);
  static FieldElement generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  int sign() const;            // -1, 0, +1, exact

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);

  friend FieldElement operator*(const Rat& s, const FieldElement& a);
  FieldElement inverse() const;  // throws on zero

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const FieldElement& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const FieldElement& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const FieldElement& o) const { return (*this - o).sign() >= 0; }

  // The same coordinates read in the k-th real embedding (0-based index
  // into field()->embeddings()).  Returned over a field object holding the
  // conjugate root's isolating interval.
  FieldElement conjugate(int k) const;

  // Rational interval of width <= eps containing the value.
  std::pair<Rat, Rat> approx(const Rat& eps) const;
  double to_double() const;

  std::string to_string() const;

  void check_compatible(const FieldElement& o) const;

 private:
  FieldPtr field_;
  std::vector<Rat> coords_;
};

// Coerce a rational into the field of a model element.
FieldElement coerce(const FieldElement& model, const Rat& q);

// Basis of the Q-kernel { (a_1..a_k) : sum a_i x_i = 0 } of a list of
// elements of a common field.  Each kernel vector is scaled to coprime
// integers with positive leading entry.
std::vector<std::vector<Rat>> rational_relations(const std::vector<FieldElement>& xs);

// Minimal polynomial of an element over Q (monic, integer after scaling
// is NOT guaranteed; returned over Q).
QPoly minimal_polynomial(const FieldElement& x);

// ---------------------------------------------------------------------------
// Wedge products over Q.

// Element of V wedge_Q V for V a Q-vector space of dimension dim with a
// distinguished basis; coordinates indexed by pairs i<j.
class WedgeQQ {
 public:
  explicit WedgeQQ(int dim = 0);
  int dim() const { return dim_; }
  Rat& at(int i, int j);          // i < j
  const Rat& at(int i, int j) const;
  bool is_zero() const;
  WedgeQQ operator+(const WedgeQQ& o) const;
  WedgeQQ operator-(const WedgeQQ& o) const;
  WedgeQQ operator*(const Rat& s) const;
  bool operator==(const WedgeQQ& o) const;

  // wedge of two coordinate vectors of length dim
  static WedgeQQ of(const std::vector<Rat>& a, const std::vector<Rat>& b);

 private:
  int dim_;
  std::vector<Rat> q_;  // packed upper triangle
  int pos(int i, int j) const;
};

// a wedge b for a, b in a common number field, over the power basis.
WedgeQQ wedge(const FieldElement& a, const FieldElement& b);

}  // namespace exactfield
