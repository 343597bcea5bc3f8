#include "flatsurf/surface.hpp"

#include "json.hpp"

namespace flatsurf {

using nlohmann::json;
using exactfield::Int;
using exactfield::MonicIntPoly;
using exactfield::NumberField;

namespace {

json rat_to_json(const Rat& q) {
  // rationals are [num, den]; components are JSON integers when they fit
  // in 64 bits and decimal strings otherwise
  auto int_to_json = [](const Int& n) -> json {
    if (n.fits_slong_p()) return json(n.get_si());
    return json(n.get_str());
  };
  return json::array({int_to_json(q.get_num()), int_to_json(q.get_den())});
}

Rat rat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("rational must be [num, den]");
  auto int_from = [](const json& x) -> Int {
    if (x.is_number_integer()) return Int(static_cast<long>(x.get<long long>()));
    if (x.is_string()) return Int(x.get<std::string>());
    throw std::invalid_argument("rational component must be integer or string");
  };
  Rat q(int_from(j[0]), int_from(j[1]));
  q.canonicalize();
  return q;
}

json elem_to_json(const FieldElement& x) {
  json a = json::array();
  for (const auto& c : x.coords()) a.push_back(rat_to_json(c));
  return a;
}

FieldElement elem_from_json(const FieldPtr& f, const json& j) {
  std::vector<Rat> coords;
  for (const auto& c : j) coords.push_back(rat_from_json(c));
  return FieldElement(f, std::move(coords));
}

}  // namespace

std::string to_json(const Surface& s) {
  json j;
  json field;
  json poly = json::array();
  for (const auto& c : s.field->min_poly().c)
    poly.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
  field["poly"] = poly;
  auto [lo, hi] = s.field->isolating_interval();
  field["interval"] = json::array({rat_to_json(lo), rat_to_json(hi)});
  j["field"] = field;
  json polys = json::array();
  for (const auto& p : s.polys) {
    json pv = json::array();
    for (const auto& v : p.v) pv.push_back(json::array({elem_to_json(v.x), elem_to_json(v.y)}));
    polys.push_back(pv);
  }
  j["polygons"] = polys;
  json gl = json::array();
  for (const auto& [e, f] : s.glue) {
    if (f < e) continue;  // emit each unordered pair once
    gl.push_back(json::array({json::array({e.poly, e.edge}), json::array({f.poly, f.edge})}));
  }
  j["gluings"] = gl;
  // nlohmann objects keep keys sorted, giving a canonical rendering
  return j.dump(2);
}

Surface surface_from_json(const std::string& text) {
  json j = json::parse(text);
  Surface s;
  std::vector<Int> poly;
  for (const auto& c : j.at("field").at("poly")) {
    if (c.is_number_integer()) poly.emplace_back(static_cast<long>(c.get<long long>()));
    else poly.emplace_back(Int(c.get<std::string>()));
  }
  Rat lo = rat_from_json(j.at("field").at("interval")[0]);
  Rat hi = rat_from_json(j.at("field").at("interval")[1]);
  s.field = NumberField::define(MonicIntPoly::from_big(std::move(poly)), lo, hi);
  for (const auto& pj : j.at("polygons")) {
    Polygon p;
    for (const auto& vj : pj)
      p.v.push_back(Vec{elem_from_json(s.field, vj[0]), elem_from_json(s.field, vj[1])});
    s.polys.push_back(std::move(p));
  }
  for (const auto& gj : j.at("gluings")) {
    EdgeRef e{gj[0][0].get<int>(), gj[0][1].get<int>()};
    EdgeRef f{gj[1][0].get<int>(), gj[1][1].get<int>()};
    s.glue[e] = f;
    s.glue[f] = e;
  }
  return s;
}

}  // namespace flatsurf
