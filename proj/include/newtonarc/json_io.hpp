#ifndef NEWTONARC_JSON_IO_HPP
#define NEWTONARC_JSON_IO_HPP

// JSON encodings.  Exact scalars travel as strings ("3/2", "1 + 2*e") to
// avoid precision ambiguity; univariate polynomials as expression strings in
// t; rings as tagged objects.  Decoders accept the same forms the encoders
// emit, plus integers where a string would be pedantic.

#include <json.hpp>

#include "newtonarc/arc_models.hpp"
#include "newtonarc/groupoid.hpp"
#include "newtonarc/parse.hpp"
#include "newtonarc/zr.hpp"

namespace newtonarc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// rings
// ---------------------------------------------------------------------------

inline json ring_to_json(const RingPtr& ring) {
  switch (ring->kind()) {
    case Ring::Kind::rationals: return json{{"kind", "rationals"}};
    case Ring::Kind::prime_field: return json{{"kind", "fp"}, {"p", ring->prime()}};
    case Ring::Kind::test_ring: {
      json ideal = json::array();
      for (const auto& mono : ring->ideal()) {
        std::string s;
        for (std::size_t i = 0; i < mono.size(); ++i) {
          if (!mono[i]) continue;
          if (!s.empty()) s += "*";
          s += ring->generators()[i];
          if (mono[i] > 1) s += "^" + std::to_string(mono[i]);
        }
        ideal.push_back(s);
      }
      return json{{"kind", "test-ring"},
                  {"base", ring_to_json(ring->base())},
                  {"generators", ring->generators()},
                  {"ideal", ideal},
                  {"order", ring->nilpotency_order()}};
    }
  }
  fail("invalid-ring", "unencodable ring");
}

inline RingPtr ring_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "rationals" || s == "QQ") return Ring::rationals();
    fail("invalid-ring", "unknown ring name '" + s + "'");
  }
  if (!j.is_object() || !j.contains("kind"))
    fail("invalid-ring", "ring must be a string or an object with 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return Ring::rationals();
  if (kind == "fp") return Ring::prime_field(j.at("p").get<std::uint64_t>());
  if (kind == "test-ring") {
    RingPtr base = ring_from_json(j.at("base"));
    auto gens = j.at("generators").get<std::vector<std::string>>();
    unsigned order = j.at("order").get<unsigned>();
    std::vector<ExpVec> ideal;
    if (j.contains("ideal")) {
      // parse each ideal monomial over a scratch copy of the ring with a huge
      // order so nothing reduces away while reading exponents
      RingPtr scratch = Ring::test_ring(base, gens, {}, 64);
      for (const auto& s : j.at("ideal")) {
        MPoly m = parse_poly(s.get<std::string>(), {}, scratch);
        if (m.terms().size() != 1)
          fail("invalid-ring", "ideal entries must be single monomials");
        const auto& tt = m.as_constant().test_terms();
        if (tt.size() != 1) fail("invalid-ring", "ideal entries must be single monomials");
        ideal.push_back(tt.begin()->first);
      }
    }
    return Ring::test_ring(base, gens, ideal, order);
  }
  fail("invalid-ring", "unknown ring kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// scalars, univariate polynomials, series
// ---------------------------------------------------------------------------

inline Scalar scalar_from_json(const json& j, const RingPtr& ring) {
  if (j.is_number_integer()) return Scalar::of_int(ring, j.get<long long>());
  if (j.is_string()) return parse_scalar(j.get<std::string>(), ring);
  fail("invalid-input", "scalar must be a string or integer");
}

inline json scalar_to_json(const Scalar& s) { return s.to_string(); }

inline std::string upoly_to_string(const UPoly& p, const RingPtr& ring) {
  MPoly m = MPoly::zero(ring, {"t"});
  for (std::size_t i = 0; i < p.size(); ++i)
    m.add_term(ExpVec{static_cast<unsigned>(i)}, p[i]);
  return m.to_string();
}

inline UPoly upoly_from_string(const std::string& text, const RingPtr& ring) {
  MPoly m = parse_poly(text, {"t"}, ring);
  UPoly out;
  for (const auto& [e, c] : m.terms()) {
    if (e[0] >= out.size()) out.resize(e[0] + 1, Scalar::zero(ring));
    out[e[0]] = c;
  }
  upoly::trim(out);
  return out;
}

inline UPoly upoly_from_json(const json& j, const RingPtr& ring) {
  if (j.is_string()) return upoly_from_string(j.get<std::string>(), ring);
  if (j.is_array()) {
    UPoly out;
    for (const auto& c : j) out.push_back(scalar_from_json(c, ring));
    upoly::trim(out);
    return out;
  }
  if (j.is_number_integer()) return upoly::constant(Scalar::of_int(ring, j.get<long long>()));
  fail("invalid-input", "polynomial must be a string or coefficient array");
}

inline TruncSeries series_from_json(const json& j, const RingPtr& ring, unsigned T) {
  return TruncSeries::from_poly(ring, upoly_from_json(j, ring), T);
}

inline json series_to_coeff_array(const TruncSeries& s) {
  json a = json::array();
  for (unsigned i = 0; i < s.trunc(); ++i) a.push_back(s.coeff(i).to_string());
  return a;
}

inline json series_to_json(const TruncSeries& s) {
  return upoly_to_string(s.poly(), s.ring());
}

// ---------------------------------------------------------------------------
// multivariate polynomials (the spec schema) and systems
// ---------------------------------------------------------------------------

inline json mpoly_to_json(const MPoly& p) {
  json terms = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(json{{"exp", it->first}, {"coef", it->second.to_string()}});
  return json{{"vars", p.vars()}, {"terms", terms}};
}

inline MPoly mpoly_from_json(const json& j, const RingPtr& ring,
                             const std::vector<std::string>& default_vars = {}) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), default_vars, ring);
  if (j.is_object()) {
    auto vars = j.contains("vars") ? j.at("vars").get<std::vector<std::string>>()
                                   : default_vars;
    MPoly p = MPoly::zero(ring, vars);
    for (const auto& t : j.at("terms")) {
      ExpVec e = t.at("exp").get<ExpVec>();
      if (e.size() != vars.size()) fail("invalid-input", "term arity mismatch");
      p.add_term(e, scalar_from_json(t.at("coef"), ring));
    }
    return p;
  }
  fail("invalid-input", "polynomial must be a string or {vars, terms} object");
}

inline json system_to_json(const SystemPtr& S) {
  json f = json::array();
  for (const auto& fi : S->f) f.push_back(fi.to_string());
  return json{{"n", S->n}, {"l", S->l}, {"f", f}, {"ring", ring_to_json(S->ring)}};
}

inline SystemPtr system_from_json(const json& j) {
  RingPtr ring = ring_from_json(j.at("ring"));
  unsigned n = j.at("n").get<unsigned>();
  unsigned l = j.at("l").get<unsigned>();
  std::vector<std::string> texts;
  for (const auto& s : j.at("f")) texts.push_back(s.get<std::string>());
  return build_system(texts, n, l, ring);
}

// ---------------------------------------------------------------------------
// Z_r points, arcs, arrows, reports
// ---------------------------------------------------------------------------

inline json zr_point_to_json(const ZrPoint& p) {
  json xb = json::array(), yb = json::array();
  for (const auto& x : p.xbar) xb.push_back(upoly_to_string(x.rep(), p.R));
  for (const auto& y : p.ybar) yb.push_back(upoly_to_string(y.rep(), p.R));
  return json{{"r", p.r},
              {"ring", ring_to_json(p.R)},
              {"q", upoly_to_string(p.q, p.R)},
              {"xbar", xb},
              {"ybar", yb}};
}

inline ZrPoint zr_point_from_json(const json& j, const SystemPtr& S,
                                  const RingPtr& fallback_ring = nullptr) {
  RingPtr R = j.contains("ring") ? ring_from_json(j.at("ring")) : fallback_ring;
  if (!R) fail("invalid-input", "point needs a ring");
  unsigned r = j.at("r").get<unsigned>();
  UPoly q = upoly_from_json(j.at("q"), R);
  std::vector<UPoly> xb, yb;
  for (const auto& s : j.at("xbar")) xb.push_back(upoly_from_json(s, R));
  for (const auto& s : j.at("ybar")) yb.push_back(upoly_from_json(s, R));
  return make_zr_point(S, r, R, q, xb, yb);
}

inline ZrExtPoint zr_ext_point_from_json(const json& j, const SystemPtr& S,
                                         const RingPtr& fallback_ring = nullptr) {
  RingPtr R = j.contains("ring") ? ring_from_json(j.at("ring")) : fallback_ring;
  if (!R) fail("invalid-input", "point needs a ring");
  unsigned r = j.at("r").get<unsigned>();
  UPoly q = upoly_from_json(j.at("q"), R);
  std::vector<UPoly> xb, yb;
  for (const auto& s : j.at("xbar")) xb.push_back(upoly_from_json(s, R));
  for (const auto& s : j.at("ybar")) yb.push_back(upoly_from_json(s, R));
  return make_zr_ext_point(S, r, R, q, xb, yb);
}

inline json membership_to_json(const MembershipReport& r) {
  return json{{"pass", r.pass}, {"failed", r.failed}, {"details", r.details}};
}

inline json arc_to_json(const Arc& a) {
  json xs = json::array(), ys = json::array();
  unsigned T = 0;
  for (const auto& s : a.x) {
    xs.push_back(series_to_json(s));
    T = s.trunc();
  }
  for (const auto& s : a.y) ys.push_back(series_to_json(s));
  return json{{"x", xs}, {"y", ys}, {"T", T}};
}

inline Arc arc_from_json(const json& j, const RingPtr& ring, unsigned default_T = 0) {
  unsigned T = j.contains("T") ? j.at("T").get<unsigned>() : default_T;
  if (T == 0) fail("invalid-input", "arc needs a truncation order T");
  Arc a;
  for (const auto& s : j.at("x")) a.x.push_back(series_from_json(s, ring, T));
  for (const auto& s : j.at("y")) a.y.push_back(series_from_json(s, ring, T));
  return a;
}

inline json xpoint_to_json(const XPoint& p) {
  json xs = json::array(), ys = json::array();
  for (const auto& c : p.x) xs.push_back(c.to_string());
  for (const auto& c : p.y) ys.push_back(c.to_string());
  return json{{"x", xs}, {"y", ys}};
}

inline XPoint xpoint_from_json(const json& j, const RingPtr& ring) {
  XPoint p;
  for (const auto& c : j.at("x")) p.x.push_back(scalar_from_json(c, ring));
  for (const auto& c : j.at("y")) p.y.push_back(scalar_from_json(c, ring));
  return p;
}

inline json arrow_to_json(const Arrow& a) {
  json xi = json::array(), eta = json::array();
  for (const auto& c : a.xi) xi.push_back(c.to_string());
  for (const auto& c : a.eta) eta.push_back(c.to_string());
  return json{{"base", xpoint_to_json(a.base)},
              {"xi", xi},
              {"eta", eta},
              {"r", a.r},
              {"v", a.v.to_string()}};
}

inline Arrow arrow_from_json(const json& j, const SystemPtr& S, const RingPtr& ring) {
  XPoint base = xpoint_from_json(j.at("base"), ring);
  std::vector<Scalar> xi, eta;
  for (const auto& c : j.at("xi")) xi.push_back(scalar_from_json(c, ring));
  for (const auto& c : j.at("eta")) eta.push_back(scalar_from_json(c, ring));
  return make_arrow(S, j.at("r").get<unsigned>(), ring, base, std::move(xi), std::move(eta));
}

inline json fiber_report_to_json(const FiberGroupReport& rep) {
  json out{{"kind", fiber_kind_name(rep.kind)},
           {"n", rep.n},
           {"characteristic", rep.characteristic},
           {"singular", rep.z_singular},
           {"z", xpoint_to_json(rep.z)},
           {"r", rep.r}};
  if (rep.multiplicity) out["multiplicity"] = *rep.multiplicity;
  if (rep.multiplicity_at_least_3) out["multiplicity-at-least"] = 3;
  if (rep.S->l == 1) {
    out["a"] = rep.a_coeff.to_string();
    json dfdx = json::array();
    for (const auto& c : rep.dfdx) dfdx.push_back(c.to_string());
    out["dfdx"] = dfdx;
  }
  return out;
}

inline json r2_witness_to_json(const R2Witness& w, const RingPtr& ring) {
  return json{{"q", upoly_to_string(w.q, ring)},
              {"xbar", upoly_to_string(w.xbar, ring)},
              {"ybar", upoly_to_string(w.ybar, ring)},
              {"fiber-size", w.fiber_size}};
}

inline json r2_report_to_json(const R2ScanReport& rep, const RingPtr& ring) {
  json empty = json::array(), multi = json::array();
  for (const auto& w : rep.empty_fibers) empty.push_back(r2_witness_to_json(w, ring));
  for (const auto& w : rep.multi_fibers) multi.push_back(r2_witness_to_json(w, ring));
  json out{{"degenerate", rep.degenerate},
           {"z3-points", rep.z3_points},
           {"ext-points", rep.ext_points},
           {"empty-fibers", empty},
           {"multi-fibers", multi}};
  if (rep.degenerate) out["reason"] = rep.degenerate_reason;
  return out;
}

inline json gk_split_to_json(const GkSplit& s) {
  json tail = json::array();
  for (const auto& t : s.tail) tail.push_back(upoly_to_string(t, s.zr.R));
  return json{{"point", zr_point_to_json(s.zr)}, {"tail", tail}};
}

inline json xyarc_to_json(const XYArc& a) {
  json xs = json::array();
  for (const auto& s : a.x) xs.push_back(series_to_json(s));
  return json{{"x", xs},
              {"xlast", series_to_json(a.xlast)},
              {"y", series_to_json(a.y)},
              {"T", a.xlast.trunc()}};
}

inline XYArc xyarc_from_json(const json& j, const RingPtr& ring, unsigned T) {
  XYArc a;
  for (const auto& s : j.at("x")) a.x.push_back(series_from_json(s, ring, T));
  a.xlast = series_from_json(j.at("xlast"), ring, T);
  a.y = series_from_json(j.at("y"), ring, T);
  return a;
}

inline json factorization_to_json(const FactorizedDeformation& F) {
  json xi = json::array(), xt = json::array();
  for (const auto& c : F.xi) xi.push_back(c.to_string());
  for (const auto& s : F.xtilde) xt.push_back(series_to_json(s));
  return json{{"alpha", F.alpha.to_string()},
              {"u", series_to_json(F.u)},
              {"xi", xi},
              {"xtilde", xt}};
}

inline FactorizedDeformation factorization_from_json(const json& j, const RingPtr& ring,
                                                     unsigned T) {
  FactorizedDeformation F;
  F.alpha = scalar_from_json(j.at("alpha"), ring);
  F.u = series_from_json(j.at("u"), ring, T - 1);
  for (const auto& c : j.at("xi")) F.xi.push_back(scalar_from_json(c, ring));
  for (const auto& s : j.at("xtilde")) F.xtilde.push_back(series_from_json(s, ring, T - 1));
  return F;
}

}  // namespace newtonarc

#endif
