"""
Command-line frontend: skeinlab <subcommand> [options].

Exit status 0 on success, 1 when a computation fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import fusion, golden, knot, verlinde
from .jw import (
    expected_partial_trace,
    identity_coefficient,
    is_idempotent,
    jw_build,
    jw_partial_trace,
    jw_terms,
    jw_trace,
    kills_turnbacks,
)
from .poly import LaurentPoly, PolyError
from .qnum import Specialization, SpecializationError, q_characteristic, qbinom_at, qint_at, root_of_unity

SUBCOMMANDS = ("jones", "bracket", "colored-jones", "kauffman", "alexander", "rmatrix", "stats", "distinct",
               "qnum", "jw", "fusion", "verlinde", "golden")

DEFAULT_SEED = 20240601


class InputError(Exception):
    """Bad user input; exit status 2."""


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    output: str = "text"
    tol: float | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.output not in ("text", "json", "csv"):
            raise InputError(f"unknown output format {self.output!r}")
        if self.tol is not None and not self.tol > 0:
            raise InputError("tolerance must be > 0")

    def opt(self, name, default=None):
        v = self.options.get(name)
        return default if v is None else v


@dataclass
class Outcome:
    status: int
    data: dict
    text: str
    rows: list = field(default_factory=list)  # CSV rows, header first


# -- input helpers

def _read_text(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _diagram(cfg: RunConfig) -> knot.PDCode:
    pd, braid = cfg.opt("pd"), cfg.opt("braid")
    if (pd is None) == (braid is None):
        raise InputError("give exactly one of --pd or --braid")
    try:
        if pd is not None:
            if os.path.isfile(pd):
                pd = _read_text(pd)
            return knot.parse_pd(pd)
        return knot.braid_closure_pd(_braid(cfg))
    except knot.KnotError as exc:
        raise InputError(str(exc)) from None


def _braid(cfg: RunConfig) -> knot.BraidWord:
    text = cfg.opt("braid")
    if text is None:
        raise InputError("this subcommand needs --braid")
    try:
        return knot.BraidWord.parse(text, cfg.opt("strands"))
    except knot.KnotError as exc:
        raise InputError(str(exc)) from None


def _int_list(text: str, what: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise InputError(f"cannot parse {what} {text!r}") from None


def _load_json(text: str, what: str):
    if os.path.isfile(text):
        text = _read_text(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad {what} JSON: {exc.msg}") from None


def _ring(cfg: RunConfig) -> fusion.FusionRing:
    name = cfg.opt("ring")
    if name is None:
        raise InputError("fusion needs --ring")
    try:
        if name.endswith(".json") or os.path.isfile(name):
            return fusion.ring_from_json(_load_json(name, "ring"))
        return fusion.builtin_ring(name)
    except (fusion.FusionError, ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None


def _object(r: fusion.FusionRing, text: str | None):
    if text is None:
        raise InputError("fusion needs --object")
    if text.startswith("["):
        vec = _load_json(text, "object")
        if not isinstance(vec, list) or len(vec) != r.rank or any(not isinstance(v, int) or v < 0 for v in vec):
            raise InputError(f"object vector must list {r.rank} nonnegative integers")
        return vec
    try:
        r.index(text)
    except (fusion.FusionError, KeyError, ValueError):
        raise InputError(f"unknown object {text!r}; labels are {list(r.labels)}") from None
    return text


def _spec(text: str) -> Specialization:
    """'generic', 'q=2', 'q=2,p=13', 'root=1/8' (q = exp(2 pi i/8)), 'q=-1'."""
    try:
        if text == "generic":
            return Specialization.generic()
        parts = dict(p.split("=", 1) for p in text.split(","))
        if "root" in parts:
            num, den = parts["root"].split("/")
            return Specialization.complex_at(root_of_unity(int(num), int(den)))
        q = parts["q"]
        if "p" in parts and int(parts["p"]) > 0:
            return Specialization.finite_field(int(parts["p"]), int(q))
        if q in ("1", "-1"):
            return Specialization.complex_at(int(q))
        return Specialization.rational(Fraction(q))
    except (ValueError, KeyError, SpecializationError, ZeroDivisionError) as exc:
        raise InputError(f"bad specialization {text!r}: {exc}") from None


# -- formatting

def _num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, complex):
        return [round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0]
    if isinstance(v, (float, np.floating)):
        return round(float(v), 12) + 0.0
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def _poly_out(p) -> dict:
    return {"text": str(p), "coeffs": p.to_json()}


# -- subcommands

def _cmd_invariant(cfg: RunConfig) -> Outcome:
    pd = _diagram(cfg)
    sub = cfg.subcommand
    if sub == "jones":
        p = knot.jones(pd)
    elif sub == "bracket":
        p = knot.kauffman_bracket(pd, cfg.opt("method", "dp"))
    elif sub == "colored-jones":
        colors = _int_list(cfg.opt("colors", ""), "colors")
        if not colors:
            raise InputError("colored-jones needs --colors")
        try:
            p = knot.colored_jones(pd, colors)
        except knot.KnotError as exc:
            raise InputError(str(exc)) from None
    else:
        p = knot.kauffman_polynomial(pd, normalized=not cfg.opt("unnormalized", False))
    data = {"invariant": sub, "diagram": str(pd), "polynomial": _poly_out(p)}
    if sub == "kauffman":
        rows = [["a_exponent", "z_exponent", "coefficient"]] + [[a, z, v] for (a, z), v in p.items()]
    else:
        rows = [["half_exponent", "coefficient"]] + [[k, v] for k, v in p.items()]
    return Outcome(0, data, str(p), rows)


def _cmd_alexander(cfg: RunConfig) -> Outcome:
    text = cfg.opt("seifert")
    if text is None:
        raise InputError("alexander needs --seifert (JSON matrix or file)")
    m = _load_json(text, "Seifert matrix")
    if not isinstance(m, list) or any(not isinstance(r, list) or len(r) != len(m) for r in m):
        raise InputError("Seifert matrix must be a square list of lists")
    p = knot.alexander_from_seifert(m)
    data = {"invariant": "alexander", "seifert": m, "polynomial": _poly_out(p)}
    return Outcome(0, data, str(p), [["half_exponent", "coefficient"]] + [[k, v] for k, v in p.items()])


def _cmd_rmatrix(cfg: RunConfig) -> Outcome:
    b = _braid(cfg)
    via_r = knot.jones_via_rmatrix(b)
    skein = knot.jones(knot.braid_closure_pd(b))
    cal = knot.RM_CALIBRATION
    data = {
        "braid": str(b),
        "rmatrix": _poly_out(via_r),
        "skein": _poly_out(skein),
        "agree": via_r == skein,
        "calibration": {"enhancement": [str(h) for h in cal.enhancement], "substitution": cal.substitution,
                        "unit_per_component": str(cal.unit_per_component)},
    }
    text = f"R-matrix: {via_r}\nskein:    {skein}\nagree: {via_r == skein}"
    return Outcome(0 if via_r == skein else 1, data, text)


def _cmd_stats(cfg: RunConfig) -> Outcome:
    if cfg.opt("poly") is not None:
        try:
            p = LaurentPoly.from_json(_load_json(cfg.opt("poly"), "polynomial"))
        except PolyError as exc:
            raise InputError(str(exc)) from None
    else:
        p = knot.jones(_diagram(cfg))
    s = knot.poly_stats(p)
    data = {"polynomial": _poly_out(p), "coeff_sum_abs": s.coeff_sum_abs, "max_abs_coeff": s.max_abs_coeff,
            "spread": str(s.spread), "zero": s.zero}
    rows = [["statistic", "value"], ["coeff_sum_abs", s.coeff_sum_abs], ["max_abs_coeff", s.max_abs_coeff],
            ["spread", str(s.spread)]]
    text = f"{p}\nsum |c| = {s.coeff_sum_abs}, max |c| = {s.max_abs_coeff}, spread = {s.spread}"
    return Outcome(0, data, text, rows)


def _census(cfg: RunConfig) -> list:
    path = cfg.opt("census")
    if path is None:
        return [("3_1", knot.trefoil()), ("4_1", knot.figure_eight())]
    try:
        return knot.read_census_csv(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except knot.KnotError as exc:
        raise InputError(str(exc)) from None


def _cmd_distinct(cfg: RunConfig) -> Outcome:
    items = _census(cfg)
    name = cfg.opt("invariant", "jones")
    if name not in knot.INVARIANTS:
        raise InputError(f"unknown invariant {name!r}")
    rep = knot.distinct_values(items, name, jobs=max(1, cfg.opt("jobs", 1)))
    failures = rep.failures
    data = {"invariant": name, "n_items": rep.n_items, "n_distinct": rep.n_distinct,
            "percentage": round(rep.percentage, 6), "collisions": rep.collisions,
            "failures": [{"name": n, "error": e} for n, e in failures]}
    lines = [f"{name}: {rep.n_distinct} distinct of {rep.n_items} ({rep.percentage:.1f}%)"]
    lines += [f"collision: {', '.join(c)}" for c in rep.collisions]
    lines += [f"failed: {n}: {e}" for n, e in failures]
    errors = dict(failures)
    rows = [["name", "value"]] + [[n, str(v) if v is not None else f"error: {errors[n]}"] for n, v in rep.values]
    status = 1 if items and not rep.n_items else 0
    return Outcome(status, data, "\n".join(lines), rows)


def _cmd_qnum(cfg: RunConfig) -> Outcome:
    specs = [_spec(s) for s in cfg.opt("spec", ["q=1"])]
    a = int(cfg.opt("a", 8))
    binom = cfg.opt("binom", False)
    cols = list(range(a + 1))
    header = ["specialization"] + [f"[{a} choose {b}]" if binom else f"[{b}]" for b in cols]
    rows, table = [header], []
    for s in specs:
        try:
            vals = [qbinom_at(a, b, s) if binom else qint_at(b, s) for b in cols]
        except SpecializationError as exc:
            raise InputError(str(exc)) from None
        vals = [str(v) if s.kind == "generic" else _num(v) for v in vals]
        qc = q_characteristic(s)
        table.append({"specialization": s.label(), "values": vals,
                      "q_characteristic": None if qc == math.inf else int(qc)})
        rows.append([s.label()] + [_fmt_cell(v) for v in vals])
    text = "\n".join(",".join(str(c) for c in r) for r in rows)
    return Outcome(0, {"a": a, "binomial": bool(binom), "rows": table}, text, rows)


def _fmt_cell(v) -> str:
    if isinstance(v, list):
        re_, im = v
        return f"{re_:g}" if abs(im) < 1e-12 else f"{re_:g}{im:+g}i"
    return str(v)


def _cmd_jw(cfg: RunConfig) -> Outcome:
    i = cfg.opt("index")
    if i is None or i < 0:
        raise InputError("jw needs --index i >= 0")
    e = jw_build(i)
    terms = [(str(d), str(c)) for d, c in jw_terms(i)]
    data = {"index": i, "n_terms": len(terms), "trace": _poly_out(jw_trace(i)),
            "terms": [{"diagram": d, "coefficient": c} for d, c in terms]}
    lines = [f"JW_{i}: {len(terms)} terms, trace {jw_trace(i)}"]
    status = 0
    if cfg.opt("verify", False):
        checks = {
            "identity coefficient 1": identity_coefficient(e) == 1,
            "kills turnbacks": kills_turnbacks(e),
            "idempotent": is_idempotent(e, direct=i <= 6),
        }
        if i >= 1:
            checks["partial trace"] = jw_partial_trace(e) == expected_partial_trace(i)
        data["checks"] = checks
        lines += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks.items()]
        status = 0 if all(checks.values()) else 1
    if not cfg.opt("summary", False):
        lines += [f"  {c} * {d}" for d, c in terms]
    rows = [["diagram", "coefficient"]] + [list(t) for t in terms]
    return Outcome(status, data, "\n".join(lines), rows)


def _cmd_fusion(cfg: RunConfig) -> Outcome:
    r = _ring(cfg)
    data: dict = {"ring": r.name or cfg.opt("ring"), "labels": list(r.labels)}
    lines, rows = [], []
    tol = cfg.tol or 1e-12
    x = _object(r, cfg.opt("object")) if cfg.opt("object") is not None else None
    wants = [k for k in ("bn", "pf", "asymptotic") if cfg.opt(k) not in (None, False)]
    if x is None and wants:
        raise InputError("--bn, --pf and --asymptotic need --object")
    if x is not None:
        data["action_matrix"] = fusion.action_matrix(r, x)
    if cfg.opt("bn") is not None:
        n = cfg.opt("bn")
        if n < 0:
            raise InputError("--bn must be >= 0")
        b = fusion.growth_bn(r, x, n)
        data["bn"] = b
        lines.append(",".join(map(str, b)))
        rows = [["n", "b_n"]] + [[k, v] for k, v in enumerate(b)]
    if cfg.opt("pf", False):
        pf = fusion.pf_data(data["action_matrix"], tol)
        data["pf"] = {"eigenvalue": _num(pf.eigenvalue), "right": [_num(t) for t in pf.right_eigenvector],
                      "left": [_num(t) for t in pf.left_eigenvector], "residual": float(f"{pf.residual:.3e}")}
        lines.append(f"PFdim = {pf.eigenvalue:.12g}, right eigenvector {[round(t, 12) for t in pf.right_eigenvector]}")
    if cfg.opt("asymptotic", False):
        a = fusion.growth_asymptotic(r, x, cfg.tol or 1e-8)
        data["asymptotic"] = {"eigenvalue": _num(a.eigenvalue), "period": a.period,
                              "constants": [_num(c) for c in a.constants]}
        consts = ", ".join(f"{c.real:.12g}" if abs(c.imag) < 1e-12 else f"{c:.12g}" for c in a.constants)
        lines.append(f"b_n ~ ({consts}) x {a.eigenvalue:.12g}^n, period {a.period}")
    if not wants:
        data["pfdim_ring"] = _num(fusion.pfdim_ring(r, tol))
        lines.append(f"{len(r.labels)} simples {list(r.labels)}, PFdim = {fusion.pfdim_ring(r, tol):.12g}")
    return Outcome(0, data, "\n".join(lines), rows)


def _cmd_verlinde(cfg: RunConfig) -> Outcome:
    k = cfg.opt("level")
    if k is None:
        raise InputError("verlinde needs --level")
    try:
        d = verlinde.modular_data_sl2(k, cfg.opt("q_index", 1))
    except verlinde.ModularError as exc:
        raise InputError(str(exc)) from None
    data = verlinde.modular_data_to_json(d)
    lines = [f"level {k}, q = exp(pi i {d.q_index}/{k}), rank {d.rank}, dim = {d.global_dim.real:.12g}",
             "dims: " + " ".join(f"{v.real:.6g}" for v in d.dims)]
    status = 0
    if cfg.opt("verify", False):
        tol = cfg.tol or verlinde.DEFAULT_TOL
        rep = verlinde.verify_modular_identities(d, tol)
        vf = verlinde.verlinde_formula_check(d, tol=tol)
        data["checks"] = [{"name": c.name, "passed": c.passed, "deviation": float(f"{c.deviation:.3e}")}
                          for c in rep.checks]
        data["verlinde_formula"] = {"passed": vf.passed, "n_checks": len(vf.checks),
                                    "failures": [c.name for c in vf.failures()]}
        lines += rep.lines()
        lines.append(f"{'PASS' if vf.passed else 'FAIL'} Verlinde formula ({len(vf.checks)} structure constants)")
        status = 0 if rep.passed and vf.passed else 1
    return Outcome(status, data, "\n".join(lines))


def _cmd_golden(cfg: RunConfig) -> Outcome:
    only = cfg.opt("only")
    if cfg.opt("list", False):
        ex = golden.examples()
        data = {"examples": [{"id": g.id, "tag": g.tag, "title": g.title} for g in ex]}
        rows = [["id", "tag", "title"]] + [[g.id, g.tag, g.title] for g in ex]
        return Outcome(0, data, "\n".join(f"{g.id:28s} [{g.tag}] {g.title}" for g in ex), rows)
    try:
        results = golden.run_golden(only)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    ok = all(r.passed for r in results)
    data = {"passed": ok, "results": [{"id": r.id, "tag": r.tag, "passed": r.passed, "detail": r.detail}
                                      for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.id} [{r.tag}] {r.title}" + ("" if r.passed else f": {r.detail}")
             for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} passed")
    rows = [["id", "tag", "passed", "detail"]] + [[r.id, r.tag, r.passed, r.detail] for r in results]
    return Outcome(0 if ok else 1, data, "\n".join(lines), rows)


_DISPATCH = {
    "jones": _cmd_invariant,
    "bracket": _cmd_invariant,
    "colored-jones": _cmd_invariant,
    "kauffman": _cmd_invariant,
    "alexander": _cmd_alexander,
    "rmatrix": _cmd_rmatrix,
    "stats": _cmd_stats,
    "distinct": _cmd_distinct,
    "qnum": _cmd_qnum,
    "jw": _cmd_jw,
    "fusion": _cmd_fusion,
    "verlinde": _cmd_verlinde,
    "golden": _cmd_golden,
}


def run(cfg: RunConfig) -> Outcome:
    random.seed(cfg.seed)
    np.random.seed(cfg.seed % 2 ** 32)
    try:
        return _DISPATCH[cfg.subcommand](cfg)
    except InputError as exc:
        return Outcome(2, {"error": str(exc)}, f"error: {exc}")
    except Exception as exc:  # noqa: BLE001 - any other failure is a computation error
        return Outcome(1, {"error": f"{type(exc).__name__}: {exc}"}, f"error: {type(exc).__name__}: {exc}")


def emit(out: Outcome, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(out.data, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv" and out.rows:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(out.rows)
        stream.write(buf.getvalue())
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k in sorted(out.data):
            w.writerow([k, json.dumps(out.data[k], sort_keys=True)])
        stream.write(buf.getvalue())
    elif out.text:
        stream.write(out.text + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json", help="emit JSON")
    fmt.add_argument("--csv", dest="output", action="store_const", const="csv", help="emit CSV")
    common.add_argument("--tol", type=float, help="numeric tolerance override")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps")

    diagram = argparse.ArgumentParser(add_help=False)
    diagram.add_argument("--pd", help="PD code text or a file containing one")
    diagram.add_argument("--braid", help="braid word, e.g. '1 1 -2'")
    diagram.add_argument("--strands", type=int, help="number of braid strands")

    p = argparse.ArgumentParser(prog="skeinlab", description="Quantum link invariants and fusion-ring analytics.")
    sub = p.add_subparsers(dest="subcommand", required=True, metavar="subcommand")

    s = sub.add_parser("jones", parents=[common, diagram], help="Jones polynomial")
    s = sub.add_parser("bracket", parents=[common, diagram], help="Kauffman bracket")
    s.add_argument("--method", choices=("dp", "statesum"), default="dp")
    s = sub.add_parser("colored-jones", parents=[common, diagram], help="colored Jones polynomial")
    s.add_argument("--colors", help="one color per component, e.g. 2,1")
    s = sub.add_parser("kauffman", parents=[common, diagram], help="two-variable Kauffman polynomial")
    s.add_argument("--unnormalized", action="store_true", help="unknot evaluates to the circle value")
    s = sub.add_parser("alexander", parents=[common], help="Alexander polynomial from a Seifert matrix")
    s.add_argument("--seifert", help="JSON matrix or a file containing one")
    sub.add_parser("rmatrix", parents=[common, diagram], help="Jones via the R-matrix state sum")
    s = sub.add_parser("stats", parents=[common, diagram], help="coefficient statistics")
    s.add_argument("--poly", help="polynomial JSON (half-exponent -> coefficient) instead of a diagram")
    s = sub.add_parser("distinct", parents=[common], help="distinct-value share over a census")
    s.add_argument("--census", help="CSV with name,pd columns (default: trefoil and figure-eight)")
    s.add_argument("--invariant", default="jones", choices=sorted(knot.INVARIANTS))
    s.add_argument("--jobs", type=int, default=1, help="worker threads")
    s = sub.add_parser("qnum", parents=[common], help="quantum number and binomial tables")
    s.add_argument("--spec", action="append",
                   help="repeatable: generic | q=Q | q=Q,p=P | root=N/D (q = exp(2 pi i N/D))")
    s.add_argument("--a", type=int, default=8, help="largest [a] or the top of the binomial")
    s.add_argument("--binom", action="store_true", help="tabulate [a choose b] instead of [b]")
    s = sub.add_parser("jw", parents=[common], help="Jones-Wenzl projector")
    s.add_argument("--index", type=int)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--summary", action="store_true", help="omit the term list")
    s = sub.add_parser("fusion", parents=[common], help="fusion-ring analytics")
    s.add_argument("--ring", help="fib, s3, dihedral8, sl2:k, so3:k, ty:n, group:n, or a JSON file")
    s.add_argument("--object", help="basis label or a JSON vector of multiplicities")
    s.add_argument("--bn", type=int, help="growth sequence b_0..b_N")
    s.add_argument("--pf", action="store_true", help="Perron-Frobenius data")
    s.add_argument("--asymptotic", action="store_true", help="asymptotic formula for b_n")
    s = sub.add_parser("verlinde", parents=[common], help="sl2 modular data")
    s.add_argument("--level", type=int)
    s.add_argument("--q-index", dest="q_index", type=int, default=1)
    s.add_argument("--verify", action="store_true")
    s = sub.add_parser("golden", parents=[common], help="run the golden examples")
    s.add_argument("--list", action="store_true")
    s.add_argument("only", nargs="?", help="run one example id or every example with this tag")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "output", "tol", "seed")}
    return RunConfig(ns.subcommand, opts, ns.output or "text", ns.tol, ns.seed)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = run(cfg)
    if out.status and "error" in out.data and cfg.output == "text":
        print(out.text, file=sys.stderr)
    else:
        emit(out, cfg.output)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
