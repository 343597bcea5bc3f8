#include "exactfield/exactfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace exactfield {

// ---------------------------------------------------------------------------
// QPoly

QPoly::QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }

QPoly QPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rat> v;
  v.reserve(coeffs.size());
  for (long x : coeffs) v.emplace_back(x);
  return QPoly(std::move(v));
}

int QPoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != 0) return i;
  return -1;
}

void QPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

QPoly QPoly::derivative() const {
  if (c.size() <= 1) return QPoly();
  std::vector<Rat> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c[i];
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  int d = degree();
  if (d < 0) return *this;
  Rat lead = c[d];
  std::vector<Rat> v(c.begin(), c.begin() + d + 1);
  for (auto& x : v) x /= lead;
  return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.c.empty() || b.c.empty()) return QPoly();
  std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return QPoly(std::move(v));
}

QPoly operator*(const Rat& s, const QPoly& b) {
  std::vector<Rat> v = b.c;
  for (auto& x : v) x *= s;
  return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  int db = b.degree();
  if (db < 0) throw std::invalid_argument("division by zero polynomial");
  std::vector<Rat> rem = a.c;
  rem.resize(std::max<size_t>(rem.size(), 1));
  int da = a.degree();
  if (da < db) return {QPoly(), a};
  std::vector<Rat> q(da - db + 1, Rat(0));
  const Rat& lead = b.c[db];
  for (int i = da; i >= db; --i) {
    if (static_cast<int>(rem.size()) <= i || rem[i] == 0) continue;
    Rat f = rem[i] / lead;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(rem))};
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------------------
// MonicIntPoly

QPoly MonicIntPoly::to_q() const {
  std::vector<Rat> v;
  v.reserve(c.size());
  for (const auto& x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

MonicIntPoly MonicIntPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Int> v;
  v.reserve(coeffs.size());
  for (long x : coeffs) v.emplace_back(x);
  return from_big(std::move(v));
}

MonicIntPoly MonicIntPoly::from_big(std::vector<Int> coeffs) {
  if (coeffs.empty() || coeffs.back() != 1)
    throw std::invalid_argument("polynomial must be monic");
  return MonicIntPoly{std::move(coeffs)};
}

std::string MonicIntPoly::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = c[i];
    if (a == 0) continue;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int mag = abs(a);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Factorization, degree <= 4.

namespace {

std::vector<Int> divisors_with_sign(const Int& n) {
  std::vector<Int> out;
  Int m = abs(n);
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      out.push_back(-d);
      Int e = m / d;
      if (e != d) {
        out.push_back(e);
        out.push_back(-e);
      }
    }
  }
  return out;
}

// Divide monic integer p by monic integer q exactly if possible.
std::optional<MonicIntPoly> exact_div(const MonicIntPoly& p, const MonicIntPoly& q) {
  auto [quot, rem] = divmod(p.to_q(), q.to_q());
  if (!rem.is_zero()) return std::nullopt;
  std::vector<Int> v;
  for (const auto& x : quot.c) {
    if (x.get_den() != 1) return std::nullopt;
    v.push_back(x.get_num());
  }
  return MonicIntPoly::from_big(std::move(v));
}

}  // namespace

std::vector<MonicIntPoly> factor_monic(const MonicIntPoly& p) {
  if (p.degree() > 4) throw std::invalid_argument("factor_monic: degree cap is 4");
  std::vector<MonicIntPoly> out;
  MonicIntPoly rest = p;

  // Strip integer roots (rational roots of a monic integer polynomial are
  // integers dividing the constant term).
  bool progress = true;
  while (rest.degree() >= 1 && progress) {
    progress = false;
    if (rest.c[0] == 0) {
      out.push_back(MonicIntPoly::from_ints({0, 1}));
      auto q = exact_div(rest, MonicIntPoly::from_ints({0, 1}));
      rest = *q;
      progress = true;
      continue;
    }
    for (const Int& r : divisors_with_sign(rest.c[0])) {
      if (rest.to_q().eval(Rat(r)) == 0) {
        MonicIntPoly lin = MonicIntPoly::from_big({-r, Int(1)});
        out.push_back(lin);
        rest = *exact_div(rest, lin);
        progress = true;
        break;
      }
    }
  }

  int d = rest.degree();
  if (d == 0) {
    // nothing
  } else if (d == 1) {
    out.push_back(rest);
  } else if (d == 2) {
    // No integer roots remain, so irreducible over Q iff the discriminant
    // is not a perfect square; for a monic integer quadratic a rational
    // root would be an integer, so it is irreducible here.
    out.push_back(rest);
  } else if (d == 3) {
    // Monic cubic with no integer root is irreducible over Q.
    out.push_back(rest);
  } else {
    // Quartic with no linear factors: search for a monic quadratic factor
    // x^2 + a x + b with b dividing the constant term.
    bool split = false;
    for (const Int& b : divisors_with_sign(rest.c[0] == 0 ? Int(1) : rest.c[0])) {
      // bound |a| via the coefficient of x^3 and brute force.
      // From (x^2+ax+b)(x^2+cx+e): a + c = rest.c[3], so try all divisor b
      // and solve linearly for the remaining coefficients.
      // Let e = rest.c[0] / b, then:
      //   a + c = p3;  b + e + a c = p2;  a e + b c = p1
      if (b == 0 || rest.c[0] % b != 0) continue;
      Int e = rest.c[0] / b;
      const Int& p3 = rest.c[3];
      const Int& p2 = rest.c[2];
      const Int& p1 = rest.c[1];
      // c = p3 - a; substitute: b + e + a(p3 - a) = p2, a quadratic in a.
      //   -a^2 + p3 a + (b + e - p2) = 0  ->  a^2 - p3 a + (p2 - b - e) = 0
      Int disc = p3 * p3 - 4 * (p2 - b - e);
      if (disc < 0) continue;
      Int s = sqrt(disc);
      if (s * s != disc) continue;
      for (int pm = 0; pm < 2; ++pm) {
        Int num = pm == 0 ? Int(p3 + s) : Int(p3 - s);
        if (num % 2 != 0) continue;
        Int a = num / 2;
        Int cc = p3 - a;
        if (a * e + b * cc != p1) continue;
        MonicIntPoly f1 = MonicIntPoly::from_big({b, a, Int(1)});
        MonicIntPoly f2 = MonicIntPoly::from_big({e, cc, Int(1)});
        for (const auto& f : {f1, f2}) {
          auto sub = factor_monic(f);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        split = true;
        break;
      }
      if (split) break;
    }
    if (!split) out.push_back(rest);
  }

  std::sort(out.begin(), out.end(), [](const MonicIntPoly& x, const MonicIntPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    for (int i = x.degree(); i >= 0; --i)
      if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
    return false;
  });
  return out;
}

bool is_irreducible(const MonicIntPoly& p) {
  if (p.degree() < 1) return false;
  auto f = factor_monic(p);
  return f.size() == 1 && f[0].degree() == p.degree();
}

// ---------------------------------------------------------------------------
// Sturm sequences.

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq;
  seq.push_back(p);
  seq.push_back(p.derivative());
  while (!seq.back().is_zero()) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Rat(-1) * r);
  }
  return seq;
}

int sign_of(const Rat& x) { return sgn(x); }

int sign_variations(const std::vector<QPoly>& seq, const Rat& x) {
  int var = 0, last = 0;
  for (const auto& q : seq) {
    int s = sign_of(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

}  // namespace

int sturm_count(const QPoly& p, const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw std::invalid_argument("sturm_count: empty interval");
  QPoly sf = divmod(p, poly_gcd(p, p.derivative())).first;  // squarefree part
  auto seq = sturm_sequence(sf);
  int n = sign_variations(seq, lo) - sign_variations(seq, hi);
  // open interval: subtract endpoint roots
  if (sf.eval(hi) == 0) n -= 1;
  return n;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p) {
  QPoly sf = divmod(p, poly_gcd(p, p.derivative())).first.monic();
  int d = sf.degree();
  std::vector<std::pair<Rat, Rat>> out;
  if (d <= 0) return out;
  // Cauchy bound
  Rat bound = 0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, Rat(abs(sf.c[i].get_num()), sf.c[i].get_den()));
  bound += 1;
  auto seq = sturm_sequence(sf);
  auto count = [&](const Rat& a, const Rat& b) {
    int n = sign_variations(seq, a) - sign_variations(seq, b);
    if (sf.eval(b) == 0) n -= 1;
    if (sf.eval(a) == 0) n += 0;  // open at a: variation already excludes? keep exact below
    return n;
  };
  // Ensure endpoints of working intervals are never roots by nudging.
  auto not_root = [&](Rat x) {
    while (sf.eval(x) == 0) x += Rat(1, 1000003);
    return x;
  };
  std::vector<std::pair<Rat, Rat>> work{{not_root(-bound), not_root(bound)}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rat mid = not_root((a + b) / 2);
    work.emplace_back(a, mid);
    work.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// NumberField

FieldPtr NumberField::define(const MonicIntPoly& poly, const Rat& lo, const Rat& hi) {
  int d = poly.degree();
  if (d < 1 || d > 4)
    throw std::invalid_argument("field degree must be between 1 and 4");
  if (!is_irreducible(poly))
    throw std::invalid_argument("defining polynomial is not irreducible: " + poly.to_string());
  QPoly q = poly.to_q();
  if (d == 1) {
    // exactly one root, accept any interval containing it
    Rat root = -Rat(poly.c[0]);
    if (!(lo < root && root < hi))
      throw std::invalid_argument("interval does not contain the rational root");
  } else {
    if (q.eval(lo) == 0 || q.eval(hi) == 0)
      throw std::invalid_argument("interval endpoint is a root");
    if (sturm_count(q, lo, hi) != 1)
      throw std::invalid_argument("interval does not isolate exactly one root");
  }
  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->poly_ = poly;
  f->degree_ = d;
  f->lo_ = lo;
  f->hi_ = hi;
  f->sign_lo_ = sign_of(q.eval(lo));
  // high power reductions: alpha^k for k = d .. 2d-2
  if (d > 1) {
    std::vector<Rat> red(d);
    for (int i = 0; i < d; ++i) red[i] = -Rat(poly.c[i]);
    QPoly cur(red);  // alpha^d
    for (int k = d; k <= 2 * d - 2; ++k) {
      f->high_powers_.push_back(cur);
      // multiply by alpha and reduce
      std::vector<Rat> nxt(d + 1, Rat(0));
      for (size_t i = 0; i < cur.c.size(); ++i) nxt[i + 1] = cur.c[i];
      if (nxt.size() > static_cast<size_t>(d) && nxt[d] != 0) {
        Rat top = nxt[d];
        nxt[d] = 0;
        for (int i = 0; i < d; ++i) nxt[i] += top * red[i];
      }
      nxt.resize(d);
      cur = QPoly(std::move(nxt));
    }
  }
  return f;
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = define(MonicIntPoly::from_ints({0, 1}), Rat(-1), Rat(1));
  return q;
}

std::pair<Rat, Rat> NumberField::isolating_interval() const { return {lo_, hi_}; }

std::pair<Rat, Rat> NumberField::refine(const Rat& width) const {
  if (degree_ == 1) {
    Rat root = -Rat(poly_.c[0]);
    Rat h = width / 2;
    return {root - h, root + h};
  }
  QPoly q = poly_.to_q();
  while (hi_ - lo_ > width) {
    Rat mid = (lo_ + hi_) / 2;
    int sm = sign_of(q.eval(mid));
    if (sm == 0) {
      // cannot happen for irreducible degree >= 2, but guard anyway
      Rat quarter = (hi_ - lo_) / 4;
      mid = lo_ + quarter;
      sm = sign_of(q.eval(mid));
    }
    if (sm == sign_lo_) {
      lo_ = mid;
    } else {
      hi_ = mid;
    }
  }
  return {lo_, hi_};
}

const std::vector<Embedding>& NumberField::embeddings() const {
  if (embeddings_.empty()) {
    auto roots = isolate_real_roots(poly_.to_q());
    int idx = 0;
    for (auto& [a, b] : roots) {
      embeddings_.push_back(Embedding{idx++, a, b});
    }
    // locate the field's own root: refine our interval until it sits inside
    // exactly one candidate interval
    refine(Rat(1, 1));
    for (;;) {
      int found = -1;
      for (const auto& e : embeddings_) {
        // our root is in (lo_, hi_); if (lo_, hi_) sub of (e.lo, e.hi) done
        if (e.lo <= lo_ && hi_ <= e.hi) {
          found = e.index;
          break;
        }
      }
      if (found >= 0) {
        own_embedding_ = found;
        break;
      }
      refine((hi_ - lo_) / 4);
    }
  }
  return embeddings_;
}

int NumberField::which_embedding() const {
  embeddings();
  return own_embedding_;
}

bool NumberField::same_field(const NumberField& o) const {
  if (this == &o) return true;
  if (!(poly_ == o.poly_)) return false;
  if (degree_ == 1) return true;
  // same polynomial: same root iff the isolating intervals pin the same root
  return which_embedding() == o.which_embedding();
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw std::invalid_argument("null field");
  if (static_cast<int>(coords_.size()) != field_->degree())
    throw std::invalid_argument("coordinate length does not match field degree");
}

FieldElement FieldElement::rational(const FieldPtr& field, const Rat& q) {
  std::vector<Rat> v(field->degree(), Rat(0));
  v[0] = q;
  return FieldElement(field, std::move(v));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
  if (field->degree() == 1) return rational(field, -Rat(field->min_poly().c[0]));
  std::vector<Rat> v(field->degree(), Rat(0));
  v[1] = 1;
  return FieldElement(field, std::move(v));
}

void FieldElement::check_compatible(const FieldElement& o) const {
  if (!field_ || !o.field_) throw std::invalid_argument("uninitialized field element");
  if (!field_->same_field(*o.field_))
    throw std::invalid_argument("field elements live in different fields");
}

bool FieldElement::is_zero() const {
  for (const auto& x : coords_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rat FieldElement::rational_value() const {
  if (!is_rational()) throw std::logic_error("element is not rational");
  return coords_[0];
}

FieldElement FieldElement::operator-() const {
  std::vector<Rat> v = coords_;
  for (auto& x : v) x = -x;
  return FieldElement(field_, std::move(v));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  a.check_compatible(b);
  std::vector<Rat> v = a.coords_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += b.coords_[i];
  return FieldElement(a.field_, std::move(v));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  a.check_compatible(b);
  std::vector<Rat> v = a.coords_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= b.coords_[i];
  return FieldElement(a.field_, std::move(v));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.check_compatible(b);
  int d = a.field_->degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (a.coords_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coords_[j] == 0) continue;
      prod[i + j] += a.coords_[i] * b.coords_[j];
    }
  }
  std::vector<Rat> v(prod.begin(), prod.begin() + d);
  for (int k = d; k <= 2 * d - 2; ++k) {
    if (prod[k] == 0) continue;
    const QPoly& red = a.field_->high_powers_[k - d];
    for (size_t i = 0; i < red.c.size(); ++i) v[i] += prod[k] * red.c[i];
  }
  return FieldElement(a.field_, std::move(v));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) { return *this = *this + o; }
FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this = *this - o; }
FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = *this * o; }

FieldElement operator*(const Rat& s, const FieldElement& a) {
  std::vector<Rat> v = a.coords();
  for (auto& x : v) x *= s;
  return FieldElement(a.field(), std::move(v));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero field element");
  int d = field_->degree();
  if (d == 1) return rational(field_, Rat(1) / coords_[0]);
  // extended euclid: u * g + v * f = 1 with g this element's polynomial
  QPoly g(coords_);
  QPoly f = field_->min_poly().to_q();
  // iterative extended gcd over Q
  QPoly r0 = f, r1 = g;
  QPoly s0, s1;  // coefficients of g
  s0 = QPoly();
  s1 = QPoly(std::vector<Rat>{Rat(1)});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd = nonzero constant (f irreducible, g nonzero of smaller degree)
  if (r0.degree() != 0) throw std::logic_error("inverse: gcd not constant");
  QPoly u = Rat(1, 1) / r0.c[0] * s0;
  QPoly rem = divmod(u, f).second;
  std::vector<Rat> v(d, Rat(0));
  for (size_t i = 0; i < rem.c.size(); ++i) v[i] = rem.c[i];
  return FieldElement(field_, std::move(v));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
  check_compatible(o);
  return coords_ == o.coords_;
}

int FieldElement::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sign_of(coords_[0]);
  QPoly g(coords_);
  Rat width = Rat(1, 2);
  for (int iter = 0; iter < 20000; ++iter) {
    auto [lo, hi] = field_->refine(width);
    // interval Horner evaluation of g on [lo, hi]
    Rat a = 0, b = 0;  // running interval [a, b]
    for (int i = g.degree(); i >= 0; --i) {
      // multiply [a,b] by [lo,hi]
      Rat p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
      Rat na = std::min(std::min(p1, p2), std::min(p3, p4));
      Rat nb = std::max(std::max(p1, p2), std::max(p3, p4));
      a = na + g.c[i];
      b = nb + g.c[i];
    }
    if (a > 0) return 1;
    if (b < 0) return -1;
    width /= 16;
  }
  throw std::logic_error("sign: bisection failed to separate from zero");
}

FieldElement FieldElement::conjugate(int k) const {
  const auto& embs = field_->embeddings();
  if (k < 0 || k >= static_cast<int>(embs.size()))
    throw std::out_of_range("conjugate index out of range");
  if (k == field_->which_embedding()) return *this;
  FieldPtr conj = NumberField::define(field_->min_poly(), embs[k].lo, embs[k].hi);
  return FieldElement(conj, coords_);
}

std::pair<Rat, Rat> FieldElement::approx(const Rat& eps) const {
  if (is_rational()) return {coords_[0] - eps / 2, coords_[0] + eps / 2};
  QPoly g(coords_);
  Rat width = std::min(eps, Rat(1, 2));
  for (;;) {
    auto [lo, hi] = field_->refine(width);
    Rat a = 0, b = 0;
    for (int i = g.degree(); i >= 0; --i) {
      Rat p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
      Rat na = std::min(std::min(p1, p2), std::min(p3, p4));
      Rat nb = std::max(std::max(p1, p2), std::max(p3, p4));
      a = na + g.c[i];
      b = nb + g.c[i];
    }
    if (b - a <= eps) return {a, b};
    width /= 16;
  }
}

double FieldElement::to_double() const {
  auto [a, b] = approx(Rat(1, Int(1) << 48));
  return (a.get_d() + b.get_d()) / 2;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i];
  }
  os << "]";
  return os.str();
}

FieldElement coerce(const FieldElement& model, const Rat& q) {
  return FieldElement::rational(model.field(), q);
}

// ---------------------------------------------------------------------------
// Linear algebra over Q.

std::vector<std::vector<Rat>> rational_relations(const std::vector<FieldElement>& xs) {
  if (xs.empty()) return {};
  int d = xs[0].field()->degree();
  int k = static_cast<int>(xs.size());
  // rows: basis coordinates (d of them), columns: elements
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(k, Rat(0)));
  for (int j = 0; j < k; ++j) {
    xs[0].check_compatible(xs[j]);
    for (int i = 0; i < d; ++i) m[i][j] = xs[j].coords()[i];
  }
  // Gaussian elimination to reduced row echelon form; record pivot columns.
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < k && row < d; ++col) {
    int pr = -1;
    for (int r = row; r < d; ++r)
      if (m[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[pr], m[row]);
    Rat inv = Rat(1) / m[row][col];
    for (int c = col; c < k; ++c) m[row][c] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c = col; c < k; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  // kernel basis: one vector per free column
  std::vector<std::vector<Rat>> kernel;
  std::vector<bool> is_pivot(k, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(k, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][free];
    // scale to coprime integers, positive first nonzero entry
    Int lcm = 1;
    for (const auto& x : v) lcm = ::lcm(lcm, x.get_den());
    std::vector<Rat> w;
    Int g = 0;
    for (const auto& x : v) {
      Rat y = x * Rat(lcm);
      w.push_back(y);
      g = gcd(g, y.get_num());
    }
    if (g != 0) {
      int lead_sign = 0;
      for (auto& x : w) {
        x /= Rat(g);
        if (lead_sign == 0 && x != 0) lead_sign = sign_of(x);
      }
      if (lead_sign < 0)
        for (auto& x : w) x = -x;
    }
    kernel.push_back(std::move(w));
  }
  return kernel;
}

QPoly minimal_polynomial(const FieldElement& x) {
  const FieldPtr& f = x.field();
  int d = f->degree();
  std::vector<FieldElement> powers;
  FieldElement cur = FieldElement::rational(f, 1);
  powers.push_back(cur);
  for (int i = 1; i <= d; ++i) {
    cur = cur * x;
    powers.push_back(cur);
    auto rel = rational_relations(powers);
    if (!rel.empty()) {
      // first relation on 1, x, ..., x^i with nonzero top coefficient gives
      // the minimal polynomial
      const auto& v = rel[0];
      std::vector<Rat> coeffs(v.begin(), v.end());
      QPoly p{std::vector<Rat>(coeffs.begin(), coeffs.end())};
      return p.monic();
    }
  }
  throw std::logic_error("minimal_polynomial: no relation found");
}

// ---------------------------------------------------------------------------
// WedgeQQ

WedgeQQ::WedgeQQ(int dim) : dim_(dim), q_(dim * (dim - 1) / 2, Rat(0)) {}

int WedgeQQ::pos(int i, int j) const {
  if (!(0 <= i && i < j && j < dim_)) throw std::out_of_range("wedge index");
  // packed order (0,1),(0,2),...,(0,d-1),(1,2),...
  return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

Rat& WedgeQQ::at(int i, int j) { return q_[pos(i, j)]; }
const Rat& WedgeQQ::at(int i, int j) const { return q_[pos(i, j)]; }

bool WedgeQQ::is_zero() const {
  for (const auto& x : q_)
    if (x != 0) return false;
  return true;
}

WedgeQQ WedgeQQ::operator+(const WedgeQQ& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("wedge dim mismatch");
  WedgeQQ r(dim_);
  for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] + o.q_[i];
  return r;
}

WedgeQQ WedgeQQ::operator-(const WedgeQQ& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("wedge dim mismatch");
  WedgeQQ r(dim_);
  for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] - o.q_[i];
  return r;
}

WedgeQQ WedgeQQ::operator*(const Rat& s) const {
  WedgeQQ r(dim_);
  for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] * s;
  return r;
}

bool WedgeQQ::operator==(const WedgeQQ& o) const { return dim_ == o.dim_ && q_ == o.q_; }

WedgeQQ WedgeQQ::of(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wedge of unequal vectors");
  int d = static_cast<int>(a.size());
  WedgeQQ r(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) r.at(i, j) = a[i] * b[j] - a[j] * b[i];
  return r;
}

WedgeQQ wedge(const FieldElement& a, const FieldElement& b) {
  a.field() && b.field() ? void() : void();
  return WedgeQQ::of(a.coords(), b.coords());
}

}  // namespace exactfield
