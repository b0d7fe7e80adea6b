#pragma once

// JSON encoding of scalars, dual quaternions, subspaces, transforms and the
// reports produced by the library.  Exact scalars are strings ("3", "-2/5",
// "1/2-3*i"); floats are JSON numbers, or [re, im] pairs when complex.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "dqk/algebra.hpp"
#include "dqk/dyads.hpp"
#include "dqk/error.hpp"
#include "dqk/matrix.hpp"
#include "dqk/motions.hpp"
#include "dqk/projgeom.hpp"
#include "dqk/quadreconstruct.hpp"
#include "dqk/scalar.hpp"
#include "dqk/transforms.hpp"

namespace dqk::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline mpq_class parse_rational(const std::string& text, const std::string& where) {
  auto bad = [&] { return ParseError(where + ": malformed rational \"" + text + "\""); };
  if (text.empty()) throw bad();
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  bool seen_digit = false, seen_slash = false, digit_after_slash = false;
  for (std::size_t k = pos; k < text.size(); ++k) {
    const char ch = text[k];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (ch == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) throw bad();
  const std::string body = text[0] == '+' ? text.substr(1) : text;
  mpq_class q;
  if (q.set_str(body, 10) != 0) throw bad();
  if (q.get_den() == 0) throw ParseError(where + ": zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

/// "a", "a+b*i", "a-b*i", "b*i", "i", "-i" with rational a, b.
inline Scalar parse_scalar_string(std::string text, const std::string& where) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
  if (text.empty()) throw ParseError(where + ": empty scalar");
  if (text.back() != 'i') return Scalar(parse_rational(text, where));
  std::string body = text.substr(0, text.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      split = k;
      break;
    }
  std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_text = split == std::string::npos ? body : body.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  const mpq_class re = re_text.empty() ? mpq_class(0) : parse_rational(re_text, where);
  return Scalar::gaussian(re, parse_rational(im_text, where));
}

}  // namespace detail

inline Scalar scalar_from_json(const Json& j, const std::string& where = "scalar", double tolerance = kDefaultTolerance) {
  if (j.is_string()) return detail::parse_scalar_string(j.get<std::string>(), where);
  if (j.is_number()) return Scalar::complex_float(j.get<double>(), 0.0, tolerance);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Scalar::complex_float(j[0].get<double>(), j[1].get<double>(), tolerance);
  throw ParseError(where + ": expected a scalar string, a number or a [re, im] pair");
}

inline Json to_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  const auto z = s.to_complex();
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

inline Vector vector_from_json(const Json& j, const std::string& where, std::size_t expected, double tolerance = kDefaultTolerance) {
  if (!j.is_array() || j.size() != expected)
    throw ParseError(where + ": expected an array of " + std::to_string(expected) + " scalars");
  Vector v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(scalar_from_json(j[k], where + "/" + std::to_string(k), tolerance));
  return v;
}

inline Json to_json(const Quaternion& q) { return to_json(q.coords()); }

inline Json to_json(const DualQuaternion& q) {
  Json out = Json::object();
  out["primal"] = to_json(q.primal);
  out["dual"] = to_json(q.dual);
  return out;
}

inline DualQuaternion dq_from_json(const Json& j, const std::string& where = "", double tolerance = kDefaultTolerance) {
  if (!j.is_object() || !j.contains("primal") || !j.contains("dual"))
    throw ParseError(where + ": expected an object with \"primal\" and \"dual\"");
  return {Quaternion::from_coords(vector_from_json(j["primal"], where + "/primal", 4, tolerance)),
          Quaternion::from_coords(vector_from_json(j["dual"], where + "/dual", 4, tolerance))};
}

/// Points of P^7 serialize as dual quaternions, points of other spaces as plain arrays.
inline Json to_json(const ProjPoint& p) {
  if (p.size() == 8) return to_json(p.dq());
  return to_json(p.coords());
}

inline ProjPoint point_from_json(const Json& j, const std::string& where = "", double tolerance = kDefaultTolerance) {
  Vector v;
  if (j.is_object()) {
    v = dq_from_json(j, where, tolerance).coords();
  } else if (j.is_array()) {
    v = vector_from_json(j, where, j.size(), tolerance);
  } else {
    throw ParseError(where + ": expected a point");
  }
  if (v.empty() || is_zero(v)) throw ParseError(where + ": the zero vector is not a point");
  return ProjPoint(v);
}

inline Json to_json(const Subspace& s) {
  Json out = Json::array();
  for (const auto& p : s.points()) out.push_back(to_json(p));
  return out;
}

inline Subspace subspace_from_json(const Json& j, const std::string& where = "", double tolerance = kDefaultTolerance) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty array of points");
  std::vector<ProjPoint> pts;
  for (std::size_t k = 0; k < j.size(); ++k) pts.push_back(point_from_json(j[k], where + "/" + std::to_string(k), tolerance));
  for (const auto& p : pts)
    if (p.size() != pts.front().size()) throw ParseError(where + ": points of different dimensions");
  return Subspace::span(pts);
}

inline Json to_json(const Line& l) { return Json::array({to_json(l.point(0)), to_json(l.point(1))}); }

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where = "",
                               double tolerance = kDefaultTolerance) {
  if (!j.is_array() || j.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[r], where + "/" + std::to_string(r), cols, tolerance);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline Json to_json(const Signature& s) { return Json::array({s.pos, s.neg, s.zero}); }

inline Json to_json(const QuadricForm& q) {
  Json out = Json::object();
  out["label"] = q.label_string();
  out["gram"] = to_json(q.gram);
  return out;
}

/// Accepts a label ("S", "N", "Y", "pencil(nu,sigma)") or {"gram": 8x8}.
inline QuadricForm quadric_from_json(const Json& j, const std::string& where = "") {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "S") return study_quadric();
    if (s == "N") return null_cone();
    if (s == "Y") return quadric_y_extended();
    if (s.rfind("pencil(", 0) == 0 && s.back() == ')') {
      const std::string inner = s.substr(7, s.size() - 8);
      const auto comma = inner.find(',');
      if (comma == std::string::npos) throw ParseError(where + ": malformed pencil label");
      try {
        return pencil_member(detail::parse_scalar_string(inner.substr(0, comma), where),
                             detail::parse_scalar_string(inner.substr(comma + 1), where));
      } catch (const DomainError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    throw ParseError(where + ": unknown quadric label \"" + s + "\"");
  }
  if (j.is_object() && j.contains("gram")) {
    const Matrix g = matrix_from_json(j["gram"], 8, 8, where + "/gram");
    if (!g.is_symmetric()) throw ParseError(where + "/gram: matrix is not symmetric");
    return {g, QuadricLabel::Custom, 0, 0};
  }
  throw ParseError(where + ": expected a quadric label or {\"gram\": ...}");
}

inline Json to_json(const AdmissibleTransform& t) {
  Json out = Json::object();
  out["matrix"] = to_json(t.matrix);
  if (t.factors) {
    out["l"] = to_json(t.factors->first);
    out["r"] = to_json(t.factors->second);
  }
  return out;
}

/// A transform file is either a bare 8x8 array or {"matrix": 8x8}.
inline Matrix transform_from_json(const Json& j, const std::string& where = "") {
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j["matrix"], 8, 8, where + "/matrix");
  return matrix_from_json(j, 8, 8, where);
}

inline Json to_json(const VerificationReport& r) {
  Json out = Json::object();
  out["pencil_fixed"] = r.pencil_fixed;
  out["shape_ok"] = r.shape_ok;
  out["rulings_preserved"] = r.rulings_preserved;
  out["overall"] = r.overall;
  return out;
}

// ---------------------------------------------------------------------------
// Dyads

inline Json to_json(const DyadSpec& s) {
  Json out = Json::object();
  out["kind"] = to_string(s.kind);
  out["h1"] = to_json(s.h1);
  out["h2"] = to_json(s.h2);
  out["base"] = to_json(s.base);
  return out;
}

inline DyadSpec dyad_spec_from_json(const Json& j, const std::string& where = "") {
  if (!j.is_object()) throw ParseError(where + ": expected a dyad object");
  for (const char* key : {"kind", "h1", "h2"})
    if (!j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  if (!j["kind"].is_string()) throw ParseError(where + "/kind: expected a string");
  DyadSpec s;
  try {
    s.kind = dyad_kind_from_string(j["kind"].get<std::string>());
  } catch (const DomainError& e) {
    throw ParseError(where + "/kind: " + e.what());
  }
  s.h1 = dq_from_json(j["h1"], where + "/h1");
  s.h2 = dq_from_json(j["h2"], where + "/h2");
  if (j.contains("base")) s.base = dq_from_json(j["base"], where + "/base");
  return s;
}

inline Json to_json(const ConstraintVariety& v) {
  Json out = Json::object();
  out["spec"] = to_json(v.spec);
  out["space"] = to_json(v.space);
  Json w = Json::object();
  for (const auto& n : v.witnesses) w[n.name] = to_json(n.space);
  out["witnesses"] = w;
  return out;
}

inline Json to_json(const ClassificationEvidence& e) {
  Json out = Json::object();
  out["signature"] = to_json(e.signature);
  out["eps_meet_dim"] = e.eps_meet_dim;
  Json lines = Json::array();
  for (const auto& l : e.null_lines) lines.push_back(to_json(l));
  out["null_lines"] = lines;
  out["null_lines_exact"] = e.null_lines_exact;
  if (e.quadrilateral) {
    Json q = Json::object();
    Json sides = Json::array(), verts = Json::array();
    for (const auto& l : e.quadrilateral->sides) sides.push_back(to_json(l));
    for (const auto& p : e.quadrilateral->vertices) verts.push_back(to_json(p));
    q["sides"] = sides;
    q["vertices"] = verts;
    out["quadrilateral"] = q;
  }
  if (e.e1) out["e1"] = to_json(*e.e1);
  if (e.fiber_image) out["fiber_image"] = to_json(*e.fiber_image);
  if (e.l1) out["l1"] = to_json(*e.l1);
  if (e.l2) out["l2"] = to_json(*e.l2);
  if (e.s1) out["s1"] = to_json(*e.s1);
  if (e.s2) out["s2"] = to_json(*e.s2);
  if (e.handedness) out["handedness"] = to_string(*e.handedness);
  if (!e.reason.empty()) out["reason"] = e.reason;
  return out;
}

inline Json to_json(const Classification& c) {
  Json out = Json::object();
  out["verdict"] = to_string(c.verdict);
  out["evidence"] = to_json(c.evidence);
  return out;
}

inline Json to_json(const Example2Report& r) {
  Json out = Json::object();
  out["m1_s1_null_in_eps_h"] = r.m1_s1_null_in_eps_h;
  out["n1_s1_null_off_eps_h"] = r.n1_s1_null_off_eps_h;
  out["conjugate_null_off_eps_h"] = r.conjugate_null_off_eps_h;
  out["quadric_not_contained"] = r.quadric_not_contained;
  out["all"] = r.all();
  return out;
}

// ---------------------------------------------------------------------------
// Motions

inline Json to_json(const MotionPoly& m) {
  Json out = Json::object();
  out["label"] = to_string(m.label);
  Json coeffs = Json::array();
  for (const auto& c : m.coefficients) coeffs.push_back(to_json(c));
  out["coefficients"] = coeffs;
  return out;
}

inline MotionPoly motion_from_json(const Json& j, const std::string& where = "") {
  if (!j.is_object() || !j.contains("coefficients") || !j["coefficients"].is_array())
    throw ParseError(where + ": expected {\"coefficients\": [...]} (highest degree first)");
  std::vector<DualQuaternion> coeffs;
  for (std::size_t k = 0; k < j["coefficients"].size(); ++k)
    coeffs.push_back(dq_from_json(j["coefficients"][k], where + "/coefficients/" + std::to_string(k)));
  try {
    return MotionPoly(coeffs, MotionLabel::Generic);
  } catch (const DomainError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Json to_json(const DarbouxReport& r) {
  Json out = Json::object();
  out["a"] = to_json(r.a);
  out["b"] = to_json(r.b);
  out["c"] = to_json(r.c);
  out["inverse"] = r.inverse;
  out["vertical"] = r.vertical;
  out["d"] = Json::array({to_json(r.d[0]), to_json(r.d[1])});
  out["f"] = Json::array({to_json(r.f[0]), to_json(r.f[1])});
  out["p"] = to_json(r.p);
  out["on_y"] = r.on_y;
  out["factor_identity"] = r.factor_identity;
  out["coincident"] = r.coincident;
  if (r.handedness) out["handedness"] = to_string(*r.handedness);
  return out;
}

inline Json to_json(const CSpaceReport& r) {
  Json out = Json::object();
  out["space"] = to_json(r.space);
  out["study_base"] = to_json(r.study_base);
  out["a"] = to_json(r.a);
  out["b"] = to_json(r.b);
  out["e1"] = to_json(r.e1);
  out["l1"] = to_json(r.l1);
  out["l2"] = to_json(r.l2);
  out["n"] = to_json(r.n);
  out["s1"] = to_json(r.s1);
  out["s2"] = to_json(r.s2);
  out["rho"] = to_json(r.rho);
  out["f"] = to_json(r.f);
  out["g1"] = to_json(r.g1);
  out["g2"] = to_json(r.g2);
  out["exact"] = r.exact;
  out["memberships"] = Json(std::vector<bool>(r.memberships.begin(), r.memberships.end()));
  out["lines_match"] = r.lines_match;
  if (r.verdict) out["verdict"] = to_string(*r.verdict);
  out["ok"] = r.ok();
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction

inline ProjectionCycle cycle_from_json(const Json& j, const std::string& where = "") {
  if (!j.is_object()) throw ParseError(where + ": expected a cycle object");
  for (const char* key : {"e", "f_points", "centers"})
    if (!j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  auto four = [&](const char* key) {
    const Json& arr = j[key];
    if (!arr.is_array() || arr.size() != 4) throw ParseError(where + "/" + key + ": expected four points");
    std::vector<ProjPoint> pts;
    for (std::size_t k = 0; k < 4; ++k) pts.push_back(point_from_json(arr[k], where + "/" + key + "/" + std::to_string(k)));
    return std::array<ProjPoint, 4>{pts[0], pts[1], pts[2], pts[3]};
  };
  return {subspace_from_json(j["e"], where + "/e"), four("f_points"), four("centers")};
}

inline Json to_json(const ProjectionCycle& c) {
  Json out = Json::object();
  out["e"] = to_json(c.e);
  Json f = Json::array(), m = Json::array();
  for (const auto& p : c.f_points) f.push_back(to_json(p));
  for (const auto& p : c.centers) m.push_back(to_json(p));
  out["f_points"] = f;
  out["centers"] = m;
  return out;
}

/// {"quadric": label or {"gram": ...}, "cycle": {...}, "e_basis": [4 points] (optional)}.
inline ReconstructionProblem reconstruction_problem_from_json(const Json& j, const std::string& where = "") {
  if (!j.is_object() || !j.contains("quadric") || !j.contains("cycle"))
    throw ParseError(where + ": expected {\"quadric\": ..., \"cycle\": ...}");
  ReconstructionProblem p{quadric_from_json(j["quadric"], where + "/quadric"), cycle_from_json(j["cycle"], where + "/cycle"),
                          std::nullopt};
  if (j.contains("e_basis")) {
    const Json& eb = j["e_basis"];
    if (!eb.is_array() || eb.size() != 4) throw ParseError(where + "/e_basis: expected four points");
    Matrix m(4, 8);
    for (std::size_t r = 0; r < 4; ++r) {
      const ProjPoint pt = point_from_json(eb[r], where + "/e_basis/" + std::to_string(r));
      if (pt.size() != 8) throw ParseError(where + "/e_basis: points must lie in P^7");
      for (std::size_t c = 0; c < 8; ++c) m(r, c) = pt[c];
    }
    p.e_basis = m;
  }
  return p;
}

inline Json to_json(const ReconstructionResult& r) {
  Json out = Json::object();
  static const char* names[4] = {"u1", "v1", "u2", "v2"};
  Json v = Json::object();
  for (std::size_t k = 0; k < 4; ++k) v[names[k]] = to_json(r.vertices[k]);
  out["vertices"] = v;
  out["zeta1"] = to_json(r.zeta1);
  out["eta1"] = to_json(r.eta1);
  out["zeta2"] = to_json(r.zeta2);
  out["on_quadric"] = r.on_quadric;
  out["incidences"] = r.incidences;
  out["projections"] = r.projections;
  out["ok"] = r.ok();
  return out;
}

/// Parses text as JSON, turning syntax errors into ParseError.
inline Json parse(const std::string& text, const std::string& where = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace dqk::io
