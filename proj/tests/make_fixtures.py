#!/usr/bin/env python3
"""Regenerate the CLI regression fixtures.

Runs the built binary on each scripted input, asserts the pinned values that
the unit suites already established, and freezes (argv, stdin, exit, output)
into tests/fixtures/*.json.  Usage:  python3 tests/make_fixtures.py <binary>
"""

import json
import pathlib
import subprocess
import sys

BIN = sys.argv[1] if len(sys.argv) > 1 else "build/tools/newtonarc"
OUT = pathlib.Path(__file__).parent / "fixtures"
OUT.mkdir(exist_ok=True)

QQ = {"kind": "rationals"}
F7 = {"kind": "fp", "p": 7}
F5 = {"kind": "fp", "p": 5}
F2 = {"kind": "fp", "p": 2}
DUAL = {"kind": "test-ring", "base": QQ, "generators": ["e"], "ideal": [], "order": 2}
EPS3 = {"kind": "test-ring", "base": QQ, "generators": ["e"], "ideal": [], "order": 3}

SYS_PARAB = lambda ring: {"n": 1, "l": 1, "f": ["y^2 - x"], "ring": ring}
SYS_CUSP = lambda ring: {"n": 1, "l": 1, "f": ["y^2 - x^3"], "ring": ring}
SYS_BRANCH = lambda ring: {"n": 1, "l": 1, "f": ["y*(y - x)"], "ring": ring}

count = 0


def fixture(name, argv, stdin, want_exit=0, check=None, error_code=None):
    global count
    p = subprocess.run([BIN] + argv, input=json.dumps(stdin), capture_output=True, text=True)
    got = json.loads(p.stdout) if p.stdout.strip() else None
    assert p.returncode == want_exit, f"{name}: exit {p.returncode} != {want_exit}\n{p.stdout}{p.stderr}"
    if error_code is not None:
        assert got["error"]["code"] == error_code, f"{name}: {got}"
    if check:
        check(got)
    doc = {"name": name, "argv": argv, "stdin": stdin, "want_exit": want_exit, "want": got}
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    count += 1


# --- algebra-core ----------------------------------------------------------

fixture("poly_eval_parabola_point", ["poly", "eval"],
        {"ring": QQ, "vars": ["x", "y"], "poly": "y^2 - x", "point": {"x": "4", "y": "2"}},
        check=lambda g: g["value"] == "0")
fixture("poly_eval_mod7", ["poly", "eval"],
        {"ring": F7, "vars": ["x", "y"], "poly": "y^2 - x", "point": {"x": "1", "y": "3"}},
        check=lambda g: g["value"] == "1")
fixture("poly_eval_missing_variable", ["poly", "eval"],
        {"ring": QQ, "vars": ["x", "y"], "poly": "y^2 - x", "point": {"x": "1"}},
        want_exit=1, error_code="missing-variable")

fixture("poly_diff_dy", ["poly", "diff"],
        {"ring": QQ, "vars": ["x", "y"], "poly": "y^2 - x^3", "var": "y"},
        check=lambda g: g["result"] == "2*y")
fixture("poly_diff_dx", ["poly", "diff"],
        {"ring": QQ, "vars": ["x", "y"], "poly": "y^2 - x^3", "var": "x"},
        check=lambda g: g["result"] == "-3*x^2")
fixture("poly_diff_char2", ["poly", "diff"],
        {"ring": F2, "vars": ["x", "y"], "poly": "y^2 + x*y - x", "var": "y"},
        check=lambda g: g["result"] == "x")
fixture("poly_diff_unknown_var", ["poly", "diff"],
        {"ring": QQ, "vars": ["x", "y"], "poly": "y^2", "var": "zz"},
        want_exit=1, error_code="unknown-variable")

fixture("poly_div_difference_of_squares", ["poly", "div"],
        {"ring": QQ, "vars": ["x"], "num": "x^2 - 1", "den": "x - 1"},
        check=lambda g: g["result"] == "x + 1")
fixture("poly_div_not_divisible", ["poly", "div"],
        {"ring": QQ, "vars": ["x"], "num": "x^2 + 1", "den": "x - 1"},
        want_exit=1, error_code="not-divisible")
fixture("poly_div_q_degree_matching", ["poly", "div"],
        {"ring": QQ, "vars": ["x", "y", "h"], "num": "(2*y)^2*h^2", "den": "(2*y)^2"},
        check=lambda g: g["result"] == "h^2")

fixture("poly_parse_cuspidal", ["poly", "parse"],
        {"ring": QQ, "vars": ["x", "y"], "text": "y^2 - x^3"},
        check=lambda g: g["canonical"] == "-x^3 + y^2")
fixture("poly_parse_expansion", ["poly", "parse"],
        {"ring": QQ, "vars": ["x", "y"], "text": "y*(y - x)"},
        check=lambda g: g["canonical"] == "-x*y + y^2")
fixture("poly_parse_fraction_mod7", ["poly", "parse"],
        {"ring": F7, "vars": ["x", "y"], "text": "3/2*x + 1"},
        check=lambda g: g["canonical"] == "5*x + 1")
fixture("poly_parse_syntax_error", ["poly", "parse"],
        {"ring": QQ, "vars": ["x"], "text": "x + "},
        want_exit=1, error_code="syntax-error")
fixture("poly_parse_unknown_identifier", ["poly", "parse"],
        {"ring": QQ, "vars": ["x"], "text": "x + z"},
        want_exit=1, error_code="unknown-identifier")

fixture("modq_invert_one", ["modq", "invert"],
        {"ring": QQ, "q": "t", "m": 2, "x": "1"},
        check=lambda g: g["inverse"] == "1")
fixture("modq_invert_geometric", ["modq", "invert"],
        {"ring": QQ, "q": "t", "m": 2, "x": "1 + t"},
        check=lambda g: g["inverse"] == "-t + 1")
fixture("modq_invert_dual", ["modq", "invert"],
        {"ring": DUAL, "q": "t", "m": 1, "x": "2 + e"},
        check=lambda g: "1/2" in g["inverse"] and "1/4" in g["inverse"])
fixture("modq_invert_nonunit", ["modq", "invert"],
        {"ring": QQ, "q": "t", "m": 3, "x": "t"},
        want_exit=1, error_code="not-a-unit")

# --- weierstrass -----------------------------------------------------------

fixture("wdiv_field_t2", ["wdiv"],
        {"ring": QQ, "coeffs": ["0", "0", "1", "0"]},
        check=lambda g: g["q"] == "t^2" and g["d"] == 2 and g["u"][0] == "1")
fixture("wdiv_dual_example", ["wdiv"],
        {"ring": DUAL, "coeffs": ["e", "0", "1", "e", "0", "0"]},
        check=lambda g: g["q"] == "t^2 + e" and g["u"][:2] == ["1", "e"] and g["d"] == 2)
fixture("wdiv_residue_zero", ["wdiv"],
        {"ring": DUAL, "coeffs": ["e", "e", "0"]},
        want_exit=1, error_code="residue-is-zero")
fixture("wdiv_insufficient_truncation", ["wdiv"],
        {"ring": DUAL, "coeffs": ["0", "1"]},
        want_exit=1, error_code="insufficient-truncation")

# --- system ----------------------------------------------------------------

fixture("sys_build_parabola", ["sys", "build"], SYS_PARAB(QQ),
        check=lambda g: g["Q"] == "2*y" and g["Chat"] == [["1"]])
fixture("sys_build_cusp", ["sys", "build"], SYS_CUSP(QQ),
        check=lambda g: g["Q"] == "2*y")
fixture("sys_build_two_eq", ["sys", "build"],
        {"n": 1, "l": 2, "f": ["y1 + y2^2", "y2 + x"], "ring": QQ},
        check=lambda g: g["Q"] == "1" and g["C"] == [["1", "2*y2"], ["0", "1"]])
fixture("sys_build_l_mismatch", ["sys", "build"],
        {"n": 1, "l": 1, "f": ["y^2 - x", "y^2"], "ring": QQ},
        want_exit=1, error_code="invalid-system")

fixture("sys_chart_parabola_r2", ["sys", "chart"],
        {"system": SYS_PARAB(QQ), "r": 2},
        check=lambda g: g["u"] == ["eta^2 - xi"] and g["v"] == "2*eta + 1")
fixture("sys_chart_cusp_r2", ["sys", "chart"],
        {"system": SYS_CUSP(QQ), "r": 2},
        check=lambda g: g["v"] == "2*eta + 1")

# --- newton-zr -------------------------------------------------------------

fixture("zr_check_pass", ["zr", "check"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2"], "ybar": ["t"]}},
        check=lambda g: g["pass"] is True)
fixture("zr_check_fail_condition6", ["zr", "check"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2"], "ybar": ["0"]}},
        check=lambda g: g["pass"] is False and 6 in g["failed"])
fixture("zr_check_fail_condition3", ["zr", "check"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2 + t"], "ybar": ["t"]}},
        check=lambda g: g["pass"] is False and 3 in g["failed"])

fixture("zr_lift_worked_example", ["zr", "lift"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2 + t^3"], "ybar": ["t"]}},
        check=lambda g: g["ybar"] == ["1/2*t^2 + t"] and g["r"] == 4)
fixture("zr_lift_zero_correction", ["zr", "lift"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2"], "ybar": ["t"]}},
        check=lambda g: g["ybar"] == ["t"])
fixture("zr_lift_r2_rejected", ["zr", "lift"],
        {"system": SYS_PARAB(QQ),
         "point": {"ring": QQ, "r": 2, "q": "t", "xbar": ["t^2"], "ybar": ["t"]}},
        want_exit=1, error_code="precondition-violated")

fixture("zr_scan_r2_footnote", ["zr", "scan-r2"], {"p": 5, "P": "x"},
        check=lambda g: (not g["degenerate"]) and len(g["empty-fibers"]) >= 1
        and len(g["multi-fibers"]) >= 1)
fixture("zr_scan_r2_degenerate_P0", ["zr", "scan-r2"], {"p": 5, "P": "0"},
        check=lambda g: g["degenerate"] is True)
fixture("zr_scan_r2_degenerate_char2", ["zr", "scan-r2"], {"p": 2, "P": "x"},
        check=lambda g: g["degenerate"] is True)
fixture("zr_scan_r2_budget", ["zr", "scan-r2"], {"p": 5, "P": "x", "budget": 10},
        want_exit=1, error_code="search-space-too-large")

fixture("zr_from_arc_gamma0", ["zr", "from-arc"],
        {"system": SYS_PARAB(QQ), "ring": QQ, "r": 3,
         "arc": {"x": ["t^2"], "y": ["t"], "T": 8}},
        check=lambda g: g["q"] == "t" and g["xbar"] == ["t^2"] and g["ybar"] == ["t"])
fixture("zr_from_arc_dual", ["zr", "from-arc"],
        {"system": SYS_PARAB(DUAL), "ring": DUAL, "r": 3,
         "arc": {"x": ["(t + e)^2"], "y": ["t + e"], "T": 8}},
        check=lambda g: g["q"] == "t + e")
fixture("zr_from_arc_residue_zero", ["zr", "from-arc"],
        {"system": SYS_PARAB(DUAL), "ring": DUAL, "r": 3,
         "arc": {"x": ["0"], "y": ["e"], "T": 8}},
        want_exit=1, error_code="residue-is-zero")

fixture("zr_to_arc_gamma0_over_field", ["zr", "to-arc"],
        {"system": SYS_PARAB(QQ),
         "gamma0": {"x": ["t^2"], "y": ["t"], "T": 8},
         "point": {"ring": QQ, "r": 3, "q": "t", "xbar": ["t^2"], "ybar": ["t"]},
         "T": 8},
        check=lambda g: g["x"] == ["t^2"] and g["y"] == ["t"])
fixture("zr_to_arc_dual_worked", ["zr", "to-arc"],
        {"system": SYS_PARAB(DUAL),
         "gamma0": {"x": ["t^2"], "y": ["t"], "T": 8},
         "point": {"ring": DUAL, "r": 3, "q": "t",
                   "xbar": ["(1 + e)*t^2"], "ybar": ["(1 + 1/2*e)*t"]},
         "T": 8},
        check=lambda g: g["x"] == ["(e + 1)*t^2"] and g["y"] == ["(1/2*e + 1)*t"])
fixture("zr_to_arc_no_solution", ["zr", "to-arc"],
        {"system": SYS_PARAB(DUAL),
         "gamma0": {"x": ["t^2"], "y": ["t"], "T": 8},
         "point": {"ring": DUAL, "r": 3, "q": "t", "xbar": ["(1 + e)*t^2"], "ybar": ["t"]},
         "T": 8},
        want_exit=1, error_code="no-solution")

# --- newton-groupoid -------------------------------------------------------

ARROW_EXAMPLE = {"base": {"x": ["1"], "y": ["1"]}, "xi": ["6"], "eta": ["4"], "r": 2}

fixture("grp_from_endpoints_f7", ["grp", "from-endpoints"],
        {"system": SYS_PARAB(F7), "r": 2,
         "p": {"x": ["1"], "y": ["1"]}, "pt": {"x": ["4"], "y": ["2"]}},
        check=lambda g: g["xi"] == ["6"] and g["eta"] == ["4"] and g["v"] == "2")
fixture("grp_from_endpoints_unit", ["grp", "from-endpoints"],
        {"system": SYS_PARAB(F7), "r": 2,
         "p": {"x": ["1"], "y": ["1"]}, "pt": {"x": ["1"], "y": ["1"]}},
        check=lambda g: g["xi"] == ["0"] and g["eta"] == ["0"] and g["v"] == "1")
fixture("grp_from_endpoints_different", ["grp", "from-endpoints"],
        {"system": SYS_PARAB(F7), "r": 2,
         "p": {"x": ["0"], "y": ["0"]}, "pt": {"x": ["1"], "y": ["1"]}},
        want_exit=1, error_code="on-the-different")

fixture("grp_compose_worked", ["grp", "compose"],
        {"system": SYS_PARAB(F7),
         "a1": ARROW_EXAMPLE,
         "a2": {"base": {"x": ["4"], "y": ["2"]}, "xi": ["6"], "eta": ["2"], "r": 2}},
        check=lambda g: g["xi"] == ["2"] and g["eta"] == ["1"] and g["v"] == "4")
fixture("grp_compose_mismatch", ["grp", "compose"],
        {"system": SYS_PARAB(F7),
         "a1": ARROW_EXAMPLE, "a2": ARROW_EXAMPLE},
        want_exit=1, error_code="endpoint-mismatch")

fixture("grp_inverse_worked", ["grp", "inverse"],
        {"system": SYS_PARAB(F7), "arrow": ARROW_EXAMPLE},
        check=lambda g: g["base"] == {"x": ["4"], "y": ["2"]})
fixture("grp_unit_arrow", ["grp", "unit"],
        {"system": SYS_PARAB(F7), "r": 2, "base": {"x": ["1"], "y": ["1"]}},
        check=lambda g: g["xi"] == ["0"] and g["v"] == "1")
fixture("grp_level_map", ["grp", "level"],
        {"system": SYS_PARAB(F7),
         "arrow": {"base": {"x": ["1"], "y": ["1"]}, "xi": ["3"], "eta": ["2"], "r": 3}},
        check=lambda g: g["r"] == 2 and g["xi"] == ["6"] and g["eta"] == ["4"])

fixture("grp_fiber_parabola_r2", ["grp", "fiber"],
        {"system": SYS_PARAB(QQ), "r": 2, "z": {"x": ["0"], "y": ["0"]}},
        check=lambda g: g["kind"] == "multiplicative-semidirect" and g["multiplicity"] == 2
        and g["a"] == "1" and g["dfdx"] == ["-1"])
fixture("grp_fiber_cusp_r2", ["grp", "fiber"],
        {"system": SYS_CUSP(QQ), "r": 2, "z": {"x": ["0"], "y": ["0"]}},
        check=lambda g: g["kind"] == "two-torsion-times-additive" and g["singular"] is True)
fixture("grp_fiber_parabola_r3", ["grp", "fiber"],
        {"system": SYS_PARAB(QQ), "r": 3, "z": {"x": ["0"], "y": ["0"]}},
        check=lambda g: g["kind"] == "additive")
fixture("grp_fiber_char2", ["grp", "fiber"],
        {"system": {"n": 1, "l": 1, "f": ["y^2 + x*y - x"], "ring": F2}, "r": 2,
         "z": {"x": ["0"], "y": ["0"]}},
        check=lambda g: g["kind"] == "additive" and g["characteristic"] == 2)
fixture("grp_fiber_not_on_different", ["grp", "fiber"],
        {"system": SYS_PARAB(QQ), "r": 2, "z": {"x": ["1"], "y": ["1"]}},
        want_exit=1, error_code="not-on-different")
fixture("grp_fiber_not_normal_form", ["grp", "fiber"],
        {"system": {"n": 1, "l": 2, "f": ["y1 + y2^2", "y2^2 - x"], "ring": QQ}, "r": 2,
         "z": {"x": ["0"], "y": ["0", "0"]}},
        want_exit=1, error_code="not-in-normal-form")

fixture("grp_lie_worked", ["grp", "lie"],
        {"system": SYS_PARAB(QQ), "r": 2, "p": {"x": ["1"], "y": ["1"]}},
        check=lambda g: g["vectors"] == [["4", "2"]])
fixture("grp_lie_on_different", ["grp", "lie"],
        {"system": SYS_PARAB(QQ), "r": 2, "p": {"x": ["0"], "y": ["0"]}},
        check=lambda g: g["vectors"] == [["0", "0"]])

fixture("grp_fuzz_small_zr", ["grp", "fuzz", "--seed", "7", "--campaign", "zr-bijection",
                             "--samples", "40"],
        {},
        check=lambda g: g["pass"] is True and g["cases"] == 40)

# --- arc-models ------------------------------------------------------------

fixture("arc_factor_dual_example", ["arc", "factor"],
        {"ring": DUAL, "T": 6, "n": 1, "g": "x1^2",
         "arc": {"x": ["e"], "xlast": "t + e", "y": "0"}},
        check=lambda g: g["alpha"] == "-e" and g["u"] == "1" and g["xi"] == ["e"]
        and g["xtilde"] == ["0"])
fixture("arc_factor_gamma0", ["arc", "factor"],
        {"ring": DUAL, "T": 6, "n": 1, "g": "x1^2",
         "arc": {"x": ["0"], "xlast": "t", "y": "0"}},
        check=lambda g: g["alpha"] == "0" and g["xi"] == ["0"])
fixture("arc_factor_constraint_violated", ["arc", "factor"],
        {"ring": EPS3, "T": 6, "n": 1, "g": "x1^2",
         "arc": {"x": ["e"], "xlast": "t", "y": "0"}},
        want_exit=1, error_code="constraint-violated")
fixture("arc_unfactor_dual_example", ["arc", "unfactor"],
        {"ring": DUAL, "T": 6, "n": 1, "g": "x1^2",
         "collection": {"alpha": "-e", "u": "1", "xi": ["e"], "xtilde": ["0"]}},
        check=lambda g: g["xlast"] == "t + e" and g["x"] == ["e"] and g["y"] == "0")
fixture("arc_unfactor_constraint_violated", ["arc", "unfactor"],
        {"ring": EPS3, "T": 6, "n": 1, "g": "x1^2",
         "collection": {"alpha": "0", "u": "1", "xi": ["e"], "xtilde": ["0"]}},
        want_exit=1, error_code="constraint-violated")

fixture("arc_split_dual", ["arc", "split"],
        {"system": SYS_PARAB(DUAL), "ring": DUAL, "r": 3, "T": 8,
         "gamma0": {"x": ["t^2"], "y": ["t"]},
         "arc": {"x": ["(t + e)^2"], "y": ["t + e"]}},
        check=lambda g: g["point"]["q"] == "t + e" and g["tail"] == ["0"])
fixture("arc_join_dual", ["arc", "join"],
        {"system": SYS_PARAB(DUAL), "T": 8,
         "gamma0": {"x": ["t^2"], "y": ["t"]},
         "point": {"ring": DUAL, "r": 3, "q": "t + e",
                   "xbar": ["t^2 + 2*e*t"], "ybar": ["t + e"]},
         "tail": ["0"]},
        check=lambda g: g["y"] == ["t + e"])

print(f"wrote {count} fixtures to {OUT}")
