#ifndef NEWTONARC_CLI_HPP
#define NEWTONARC_CLI_HPP

// Command-line surface.  Every data-driven subcommand reads one JSON document
// (stdin by default, or --in FILE) and writes one JSON document to stdout.
// Exit codes: 0 success, 1 domain error ({"error":{code,message,location}}),
// 2 usage error.  Identical inputs produce byte-identical output.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "newtonarc/fuzz.hpp"
#include "newtonarc/json_io.hpp"

namespace newtonarc::cli {

struct Flags {
  std::string in = "-";
  std::string out_format = "json";
  std::string ring;  // overrides the input document's top-level "ring"
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string campaign;
  unsigned trunc = 0;
  FuzzBounds bounds;
};

inline const char* usage_text() {
  return
      "usage: newtonarc <command> [flags] < input.json\n"
      "\n"
      "commands:\n"
      "  wdiv                      Weierstrass division of a truncated series\n"
      "  zr check                  membership report for a Z_r point\n"
      "  zr lift                   Newton lift Z_r x V_{r+1} -> Z_{r+1} (r >= 3)\n"
      "  zr scan-r2                exhaustive level-2 fiber scan for y(y-P(x))\n"
      "  zr from-arc               reduce an arc to a Z_r point\n"
      "  zr to-arc                 solve the Z-system back to an arc\n"
      "  grp from-endpoints|compose|inverse|unit|level|fiber|lie|fuzz\n"
      "  arc factor|unfactor       the xy+g factorization and its inverse\n"
      "  arc split|join            finite-type data + free tail of an arc\n"
      "  sys build|chart           build a system / compute chart polynomials\n"
      "  poly parse|eval|diff|div  polynomial utilities\n"
      "  modq invert               inversion in R[t]/(q^m)\n"
      "\n"
      "flags: --in FILE  --ring RING  --seed N  --campaign NAME  --trunc T\n"
      "       --samples N  --out json\n";
}

inline json read_input(const Flags& flags, std::istream& fallback) {
  json j;
  if (flags.in == "-") {
    fallback >> j;
  } else {
    std::ifstream f(flags.in);
    if (!f) fail("invalid-input", "cannot open input file " + flags.in);
    f >> j;
  }
  if (!flags.ring.empty()) {
    // --ring overrides the document's top-level ring; accepts the JSON form
    // or a bare name like rationals
    json r = json::accept(flags.ring) ? json::parse(flags.ring) : json(flags.ring);
    j["ring"] = r;
  }
  return j;
}

// ring of the gamma0 data: the base field when the point ring is a test ring
inline RingPtr base_field_of(const RingPtr& R) {
  return R->is_field() ? R : R->base();
}

inline json cmd_wdiv(const json& in) {
  RingPtr ring = ring_from_json(in.at("ring"));
  std::vector<Scalar> coeffs;
  for (const auto& c : in.at("coeffs")) coeffs.push_back(scalar_from_json(c, ring));
  if (in.contains("T")) coeffs.resize(in.at("T").get<unsigned>(), Scalar::zero(ring));
  TruncSeries F = TruncSeries::from_coeffs(ring, coeffs);
  auto w = weierstrass_divide(F);
  return json{{"q", upoly_to_string(w.q, ring)},
              {"u", series_to_coeff_array(w.u)},
              {"d", w.d}};
}

inline json cmd_zr_check(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  ZrPoint p = zr_point_from_json(in.at("point"), S, S->ring);
  return membership_to_json(check_membership(p));
}

inline json cmd_zr_lift(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  ZrExtPoint e = zr_ext_point_from_json(in.at("point"), S, S->ring);
  return zr_point_to_json(newton_inverse(e));
}

inline json cmd_zr_scan_r2(const json& in) {
  std::uint64_t p = in.at("p").get<std::uint64_t>();
  std::uint64_t budget = in.contains("budget") ? in.at("budget").get<std::uint64_t>() : 1000000;
  RingPtr Fp = p == 2 ? Ring::prime_field(2) : Ring::prime_field(p);
  MPoly P = mpoly_from_json(in.at("P"), Fp, {"x"});
  auto report = r2_counterexample_scan(P, p, budget);
  return r2_report_to_json(report, Fp);
}

inline json cmd_zr_from_arc(const json& in, const Flags& flags) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  unsigned r = in.at("r").get<unsigned>();
  Arc arc = arc_from_json(in.at("arc"), R, flags.trunc);
  return zr_point_to_json(arc_to_zr(S, arc, r));
}

inline json cmd_zr_to_arc(const json& in, const Flags& flags) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.at("point").contains("ring") ? ring_from_json(in.at("point").at("ring"))
                                              : S->ring;
  ZrPoint p = zr_point_from_json(in.at("point"), S, R);
  unsigned T = in.contains("T") ? in.at("T").get<unsigned>() : flags.trunc;
  Arc gamma0 = arc_from_json(in.at("gamma0"), base_field_of(R), T);
  std::vector<UPoly> tail;
  if (in.contains("tail"))
    for (const auto& s : in.at("tail")) tail.push_back(upoly_from_json(s, R));
  Arc out = solve_z_system(S, gamma0, p, tail, T);
  return arc_to_json(out);
}

inline json cmd_grp_from_endpoints(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  unsigned r = in.at("r").get<unsigned>();
  XPoint p = xpoint_from_json(in.at("p"), R);
  XPoint pt = xpoint_from_json(in.at("pt"), R);
  return arrow_to_json(arrow_from_endpoints(S, r, R, p, pt));
}

inline json cmd_grp_compose(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  Arrow a1 = arrow_from_json(in.at("a1"), S, R);
  Arrow a2 = arrow_from_json(in.at("a2"), S, R);
  return arrow_to_json(compose(a1, a2));
}

inline json cmd_grp_inverse(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  return arrow_to_json(inverse(arrow_from_json(in.at("arrow"), S, R)));
}

inline json cmd_grp_unit(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  XPoint base = xpoint_from_json(in.at("base"), R);
  return arrow_to_json(unit_arrow(S, in.at("r").get<unsigned>(), R, base));
}

inline json cmd_grp_level(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  return arrow_to_json(level_map(arrow_from_json(in.at("arrow"), S, R)));
}

inline json cmd_grp_fiber(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  unsigned r = in.at("r").get<unsigned>();
  XPoint z = xpoint_from_json(in.at("z"), R);
  std::optional<unsigned> mult;
  if (in.contains("multiplicity")) mult = in.at("multiplicity").get<unsigned>();
  return fiber_report_to_json(fiber_group(S, r, R, z, mult));
}

inline json cmd_grp_lie(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  unsigned r = in.at("r").get<unsigned>();
  XPoint p = xpoint_from_json(in.at("p"), R);
  json vecs = json::array();
  for (const auto& w : lie_algebroid_basis(S, r, R, p)) {
    json row = json::array();
    for (const auto& c : w) row.push_back(c.to_string());
    vecs.push_back(row);
  }
  return json{{"vectors", vecs}};
}

inline json fuzz_report_to_json(const FuzzReport& rep) {
  return json{{"campaign", rep.campaign},
              {"seed", rep.seed},
              {"pass", rep.pass},
              {"cases", rep.cases},
              {"checks", rep.checks},
              {"failures", rep.failures},
              {"bounds",
               json{{"p-max", rep.bounds.p_max},
                    {"n-max", rep.bounds.n_max},
                    {"l-max", rep.bounds.l_max},
                    {"degree-max", rep.bounds.degree_max},
                    {"a-max", rep.bounds.a_max},
                    {"samples", rep.bounds.samples}}}};
}

inline json cmd_grp_fuzz(const Flags& flags, const json* maybe_in) {
  std::string campaign = flags.campaign;
  std::uint64_t seed = flags.seed;
  FuzzBounds bounds = flags.bounds;
  if (campaign.empty() && maybe_in) {
    campaign = maybe_in->at("campaign").get<std::string>();
    if (maybe_in->contains("seed")) seed = maybe_in->at("seed").get<std::uint64_t>();
    if (maybe_in->contains("bounds")) {
      const json& b = maybe_in->at("bounds");
      if (b.contains("p-max")) bounds.p_max = b.at("p-max").get<std::uint64_t>();
      if (b.contains("a-max")) bounds.a_max = b.at("a-max").get<unsigned>();
      if (b.contains("samples")) bounds.samples = b.at("samples").get<std::uint64_t>();
    }
  }
  if (campaign.empty()) fail("invalid-input", "fuzz needs --campaign or a JSON config");
  return fuzz_report_to_json(run_campaign(campaign, seed, bounds));
}

// g lives in numbered variables x1..xn (x_{n+1} is the distinguished one)
inline std::vector<std::string> xy_gvars(unsigned n) {
  std::vector<std::string> vars;
  for (unsigned i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

inline json cmd_arc_factor(const json& in) {
  RingPtr A = ring_from_json(in.at("ring"));
  unsigned T = in.at("T").get<unsigned>();
  MPoly g = mpoly_from_json(in.at("g"), base_field_of(A),
                            xy_gvars(in.at("n").get<unsigned>()));
  auto inst = make_xy_instance(g, A, T);
  XYArc arc = xyarc_from_json(in.at("arc"), A, T);
  return factorization_to_json(factorize(inst, arc));
}

inline json cmd_arc_unfactor(const json& in) {
  RingPtr A = ring_from_json(in.at("ring"));
  unsigned T = in.at("T").get<unsigned>();
  MPoly g = mpoly_from_json(in.at("g"), base_field_of(A),
                            xy_gvars(in.at("n").get<unsigned>()));
  auto inst = make_xy_instance(g, A, T);
  FactorizedDeformation F = factorization_from_json(in.at("collection"), A, T);
  return xyarc_to_json(unfactorize(inst, F));
}

inline json cmd_arc_split(const json& in, const Flags& flags) {
  SystemPtr S = system_from_json(in.at("system"));
  RingPtr R = in.contains("ring") ? ring_from_json(in.at("ring")) : S->ring;
  unsigned r = in.at("r").get<unsigned>();
  unsigned T = in.contains("T") ? in.at("T").get<unsigned>() : flags.trunc;
  Arc arc = arc_from_json(in.at("arc"), R, T);
  Arc gamma0 = arc_from_json(in.at("gamma0"), base_field_of(R), T);
  return gk_split_to_json(gk_split(S, gamma0, arc, r));
}

inline json cmd_arc_join(const json& in, const Flags& flags) {
  return cmd_zr_to_arc(in, flags);
}

inline json cmd_sys_build(const json& in) {
  SystemPtr S = system_from_json(in);
  json C = json::array(), Chat = json::array();
  for (unsigned i = 0; i < S->l; ++i) {
    json crow = json::array(), chrow = json::array();
    for (unsigned j = 0; j < S->l; ++j) {
      crow.push_back(S->C.at(i, j).to_string());
      chrow.push_back(S->Chat.at(i, j).to_string());
    }
    C.push_back(crow);
    Chat.push_back(chrow);
  }
  json out = system_to_json(S);
  out["Q"] = S->Q.to_string();
  out["C"] = C;
  out["Chat"] = Chat;
  return out;
}

inline json cmd_sys_chart(const json& in) {
  SystemPtr S = system_from_json(in.at("system"));
  unsigned r = in.at("r").get<unsigned>();
  auto cp = chart_polys(S, r);
  json u = json::array();
  for (const auto& ui : cp->u) u.push_back(ui.to_string());
  return json{{"r", r}, {"vars", cp->vars}, {"u", u}, {"v", cp->v.to_string()}};
}

inline json cmd_poly(const std::string& sub, const json& in) {
  RingPtr ring = ring_from_json(in.at("ring"));
  auto vars = in.contains("vars") ? in.at("vars").get<std::vector<std::string>>()
                                  : std::vector<std::string>{};
  if (sub == "parse") {
    MPoly p = parse_poly(in.at("text").get<std::string>(), vars, ring);
    json out = mpoly_to_json(p);
    out["canonical"] = p.to_string();
    return out;
  }
  if (sub == "eval") {
    MPoly p = mpoly_from_json(in.at("poly"), ring, vars);
    std::map<std::string, Scalar> point;
    for (const auto& [k, v] : in.at("point").items())
      point.emplace(k, scalar_from_json(v, ring));
    return json{{"value", eval_at_scalars(p, point, ring).to_string()}};
  }
  if (sub == "diff") {
    MPoly p = mpoly_from_json(in.at("poly"), ring, vars);
    return json{{"result", partial_derivative(p, in.at("var").get<std::string>()).to_string()}};
  }
  if (sub == "div") {
    MPoly num = mpoly_from_json(in.at("num"), ring, vars);
    MPoly den = mpoly_from_json(in.at("den"), ring, vars);
    return json{{"result", exact_divide(num, den).to_string()}};
  }
  fail("invalid-input", "unknown poly subcommand '" + sub + "'");
}

inline json cmd_modq_invert(const json& in) {
  RingPtr ring = ring_from_json(in.at("ring"));
  UPoly q = upoly_from_json(in.at("q"), ring);
  unsigned m = in.at("m").get<unsigned>();
  auto ctx = make_modq_ctx(ring, q, m);
  ModQ x = ModQ::from_poly(ctx, upoly_from_json(in.at("x"), ring));
  return json{{"inverse", upoly_to_string(x.invert().rep(), ring)}};
}

inline int run_command(std::vector<std::string> args, std::istream& in_stream,
                       std::ostream& out, std::ostream& err) {
  Flags flags;
  std::vector<std::string> words;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto need_value = [&](const char* name) -> std::string {
      if (i + 1 >= args.size()) {
        fail("usage", std::string("missing value for ") + name);
      }
      return args[++i];
    };
    try {
      if (a == "--in") flags.in = need_value("--in");
      else if (a == "--ring") flags.ring = need_value("--ring");
      else if (a == "--seed") { flags.seed = std::stoull(need_value("--seed")); flags.seed_set = true; }
      else if (a == "--campaign") flags.campaign = need_value("--campaign");
      else if (a == "--trunc") flags.trunc = static_cast<unsigned>(std::stoul(need_value("--trunc")));
      else if (a == "--samples") flags.bounds.samples = std::stoull(need_value("--samples"));
      else if (a == "--out") flags.out_format = need_value("--out");
      else if (a == "--help" || a == "-h") { err << usage_text(); return 0; }
      else if (a.rfind("--", 0) == 0) { err << "unknown flag " << a << "\n" << usage_text(); return 2; }
      else words.push_back(a);
    } catch (const Error&) {
      err << usage_text();
      return 2;
    } catch (const std::exception&) {
      err << "bad numeric flag value\n";
      return 2;
    }
  }
  if (flags.out_format != "json") {
    err << "only --out json is supported\n";
    return 2;
  }
  if (words.empty()) {
    err << usage_text();
    return 2;
  }

  auto sub = [&](std::size_t k) { return words.size() > k ? words[k] : std::string(); };
  try {
    json result;
    const std::string& cmd = words[0];
    if (cmd == "wdiv" && words.size() == 1) {
      result = cmd_wdiv(read_input(flags, in_stream));
    } else if (cmd == "zr" && words.size() == 2) {
      const std::string& s = sub(1);
      if (s == "check") result = cmd_zr_check(read_input(flags, in_stream));
      else if (s == "lift") result = cmd_zr_lift(read_input(flags, in_stream));
      else if (s == "scan-r2") result = cmd_zr_scan_r2(read_input(flags, in_stream));
      else if (s == "from-arc") result = cmd_zr_from_arc(read_input(flags, in_stream), flags);
      else if (s == "to-arc") result = cmd_zr_to_arc(read_input(flags, in_stream), flags);
      else { err << usage_text(); return 2; }
    } else if (cmd == "grp" && words.size() == 2) {
      const std::string& s = sub(1);
      if (s == "fuzz") {
        json cfg;
        bool have_cfg = flags.campaign.empty();
        if (have_cfg) cfg = read_input(flags, in_stream);
        result = cmd_grp_fuzz(flags, have_cfg ? &cfg : nullptr);
      } else if (s == "from-endpoints") result = cmd_grp_from_endpoints(read_input(flags, in_stream));
      else if (s == "compose") result = cmd_grp_compose(read_input(flags, in_stream));
      else if (s == "inverse") result = cmd_grp_inverse(read_input(flags, in_stream));
      else if (s == "unit") result = cmd_grp_unit(read_input(flags, in_stream));
      else if (s == "level") result = cmd_grp_level(read_input(flags, in_stream));
      else if (s == "fiber") result = cmd_grp_fiber(read_input(flags, in_stream));
      else if (s == "lie") result = cmd_grp_lie(read_input(flags, in_stream));
      else { err << usage_text(); return 2; }
    } else if (cmd == "arc" && words.size() == 2) {
      const std::string& s = sub(1);
      if (s == "factor") result = cmd_arc_factor(read_input(flags, in_stream));
      else if (s == "unfactor") result = cmd_arc_unfactor(read_input(flags, in_stream));
      else if (s == "split") result = cmd_arc_split(read_input(flags, in_stream), flags);
      else if (s == "join") result = cmd_arc_join(read_input(flags, in_stream), flags);
      else { err << usage_text(); return 2; }
    } else if (cmd == "sys" && words.size() == 2) {
      const std::string& s = sub(1);
      if (s == "build") result = cmd_sys_build(read_input(flags, in_stream));
      else if (s == "chart") result = cmd_sys_chart(read_input(flags, in_stream));
      else { err << usage_text(); return 2; }
    } else if (cmd == "poly" && words.size() == 2) {
      result = cmd_poly(sub(1), read_input(flags, in_stream));
    } else if (cmd == "modq" && words.size() == 2 && sub(1) == "invert") {
      result = cmd_modq_invert(read_input(flags, in_stream));
    } else {
      err << usage_text();
      return 2;
    }
    out << result.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    json j{{"error",
            json{{"code", e.code()}, {"message", e.what()}, {"location", e.location()}}}};
    out << j.dump(2) << "\n";
    return 1;
  } catch (const json::exception& e) {
    json j{{"error", json{{"code", "invalid-input"},
                          {"message", std::string("malformed JSON input: ") + e.what()},
                          {"location", ""}}}};
    out << j.dump(2) << "\n";
    return 1;
  }
}

}  // namespace newtonarc::cli

#endif
