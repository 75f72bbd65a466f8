"""``ordramsey`` command line: one subcommand per module.

Exit status: 0 on success, 1 when a checked property fails, 2 on usage or
input errors. JSON reports carry ``"schema": 1`` and are written with sorted
keys so that equal inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import constructions, density, exact, lll, scanning, shifts
from .coloring import EdgeColoring
from .formats import FormatError, format_og, load_og, load_permutation, parse_permutation, read_text
from .ordered import (OrderedGraph, OrderedMatching, find_ordered_embedding,
                      interval_chromatic_number)
from .rng import DEFAULT_SEED

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    seed: int = DEFAULT_SEED
    format: str = "text"
    out: Optional[str] = None
    threads: Optional[int] = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        common = {"cmd", "seed", "format", "out", "threads", "func"}
        return cls(ns.cmd, ns.seed, ns.format, ns.out, ns.threads,
                   {k: v for k, v in vars(ns).items() if k not in common})


@dataclass
class Report:
    payload: dict
    text: str
    csv_rows: Optional[list] = None
    status: int = EXIT_OK


def _json(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(o: Any):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _flat_rows(payload: dict) -> list:
    rows = [["key", "value"]]
    for k in sorted(payload):
        v = payload[k]
        rows.append([k, json.dumps(v, sort_keys=True, default=_jsonable) if isinstance(v, (dict, list, tuple)) else v])
    return rows


def _workers(cfg: RunConfig) -> int:
    return cfg.threads if cfg.threads else (os.cpu_count() or 1)


def _pattern(spec: str) -> OrderedGraph:
    """A ``.og`` path, or one of the built-in names ``edge`` / ``K<m>``."""
    if Path(spec).exists():
        return load_og(spec)
    if spec == "edge":
        return OrderedGraph.single_edge()
    m = re.fullmatch(r"[Kk](\d+)", spec)
    if m:
        return OrderedGraph.complete(int(m.group(1)))
    raise UsageError(f"pattern {spec!r}: no such file, and not a built-in name (edge, K<m>)")


def _permutation(ns) -> tuple[int, ...]:
    if getattr(ns, "perm", None):
        return load_permutation(ns.perm)
    if getattr(ns, "pi", None):
        return parse_permutation(ns.pi)
    raise UsageError("give a permutation with --perm FILE or --pi 'p1 p2 ...'")


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {s!r}") from None


# ---------------------------------------------------------------- subcommands

def cmd_construct(cfg: RunConfig) -> Report:
    o = cfg.options
    if o["kind"] == "m-t":
        if o["t"] is None:
            raise UsageError("construct m-t needs --t")
        m, lay = constructions.build_M_t(o["t"])
    else:
        if o["k"] is None or o["t"] is None:
            raise UsageError("construct m-kt needs --k and --t")
        m, lay = constructions.build_M_kt(o["k"], o["t"])
    chi, _ = interval_chromatic_number(m)
    payload = {"kind": o["kind"], "n_vertices": m.n_vertices, "n_edges": m.n_edges,
               "interval_chromatic_number": chi, "edges": m.edge_list(), "layout": lay.to_dict()}
    rows = [["u", "v"]] + [list(e) for e in m.edge_list()]
    return Report(payload, format_og(m), rows)


def cmd_verify(cfg: RunConfig) -> Report:
    o = cfg.options
    what = o["what"]
    if what == "density":
        t = _need(o, "t")
        ce = constructions.density_counterexample(t, o["min_length"])
        payload = {"check": what, "t": t, "min_length": o["min_length"] or 2 * t, "holds": ce is None,
                   "counterexample": ce}
        text = "true\n" if ce is None else f"false {ce}\n"
        return Report(payload, text, None, EXIT_OK if ce is None else EXIT_VIOLATION)
    if what == "lemma6":
        rep = constructions.verify_lemma6(_need(o, "k"), _need(o, "t"), strict=o["strict"])
        ok = rep.part_a and rep.part_b
        payload = {"check": what, **rep.to_dict(), "holds": ok}
        text = f"part_a={str(rep.part_a).lower()} part_b={str(rep.part_b).lower()}" + \
               (" (part_a vacuous)" if rep.part_a_vacuous else "") + "\n"
        return Report(payload, text, None, EXIT_OK if ok else EXIT_VIOLATION)
    if what == "superblocks":
        k, t = _need(o, "k"), _need(o, "t")
        ok = constructions.verify_superblock_pairs(k, t)
        return Report({"check": what, "k": k, "t": t, "holds": ok}, f"{str(ok).lower()}\n", None,
                      EXIT_OK if ok else EXIT_VIOLATION)
    if what == "certificate":
        if not (o["coloring"] and o["red"] and o["blue"]):
            raise UsageError("verify certificate needs --coloring, --red and --blue")
        chi = EdgeColoring.from_text(read_text(o["coloring"]))
        G, H = _pattern(o["red"]), _pattern(o["blue"])
        red = find_ordered_embedding(chi.red_graph(), G)
        blue = find_ordered_embedding(chi.blue_graph(), H)
        ok = red is None and blue is None
        payload = {"check": what, "N": chi.n, "holds": ok, "red_copy": red, "blue_copy": blue}
        return Report(payload, f"{str(ok).lower()}\n", None, EXIT_OK if ok else EXIT_VIOLATION)
    if what == "shift":
        pi = _permutation(argparse.Namespace(**o))
        L, w = shifts.shift_statistic(pi)
        ok = w is None or w.is_valid_for(pi)
        if len(pi) <= shifts.BRUTEFORCE_MAX_N:
            ok = ok and shifts.shift_statistic_bruteforce(pi) == L
        return Report({"check": what, "pi": pi, "L": L, "holds": ok}, f"{str(ok).lower()}\n", None,
                      EXIT_OK if ok else EXIT_VIOLATION)
    raise UsageError(f"unknown check {what!r}")


def _need(o: dict, key: str):
    if o.get(key) is None:
        raise UsageError(f"--{key} is required here")
    return o[key]


def cmd_lstat(cfg: RunConfig) -> Report:
    o = cfg.options
    if o["perm"] or o["pi"]:
        pi = _permutation(argparse.Namespace(**o))
        L, w = shifts.shift_statistic(pi)
        payload = {"pi": pi, "L": L, "witness": None if w is None else
                   {"delta": w.delta, "C": w.c_indices, "D": w.d_indices}}
        if o["bruteforce"]:
            payload["L_bruteforce"] = shifts.shift_statistic_bruteforce(pi)
        return Report(payload, f"{L}\n", [["L"], [L]])
    n = _need(o, "n")
    dist = shifts.sample_L_distribution(n, o["samples"], cfg.seed, enumerate_all=o["enumerate"],
                                        threshold=o["threshold"], workers=_workers(cfg))
    payload = {**dist.summary(), "histogram": [list(r) for r in dist.histogram_rows()]}
    rows = [["value", "count"]] + [list(r) for r in dist.histogram_rows()]
    s = dist.summary()
    text = (f"n={s['n']} samples={s['samples']} max={s['max']} mean={s['mean']:.6f} "
            f"threshold={s['threshold']:.6f} exceedance_rate={s['exceedance_rate']:.6f}\n")
    return Report(payload, text, rows)


def cmd_scan(cfg: RunConfig) -> Report:
    o = cfg.options
    if o["coloring"]:
        if not o["pattern"]:
            raise UsageError("scan --coloring needs --pattern (a perfect-bipartite matching .og)")
        chi = EdgeColoring.from_text(read_text(o["coloring"]))
        m = OrderedMatching.from_graph(load_og(o["pattern"]))
        ell = _fraction(o["ell"]) if o["ell"] else None
        res = scanning.scan_certificate_check(chi, m, ell=ell, T=o["T"])
        bad = res.verdict is scanning.Verdict.COUNTEREXAMPLE and res.preconditions_met
        return Report(res.to_dict(), f"{res.verdict.value}\n", None, EXIT_VIOLATION if bad else EXIT_OK)
    if not o["matrix"]:
        raise UsageError("scan needs --matrix FILE (with a permutation) or --coloring FILE --pattern FILE")
    a = scanning.ColorMatrix.from_text(read_text(o["matrix"]))
    pi = _permutation(argparse.Namespace(**o))
    T = o["T"] if o["T"] else scanning.default_thread_count(len(pi), max(shifts.shift_statistic(pi)[0], 1))
    trace = scanning.multi_thread_scan(a, pi, T)
    ok = trace.succeeded
    text = f"succeeded threads: {' '.join(map(str, ok)) if ok else 'none'}\n"
    rows = [["thread", "success", "row", "col_start", "col_end"]]
    for th in trace.threads:
        for sgm in th.segments:
            rows.append([th.thread, int(th.success), sgm.row, sgm.col_start, sgm.col_end])
    return Report(trace.to_dict(), text, rows)


def cmd_exact(cfg: RunConfig) -> Report:
    o = cfg.options
    if not (o["red"] and o["blue"]):
        raise UsageError("exact needs --pattern-red and --pattern-blue")
    G, H = _pattern(o["red"]), _pattern(o["blue"])
    engine = o["engine"]
    if o["specialize_triangle"]:
        if H != OrderedGraph.complete(3):
            raise UsageError("--specialize-triangle requires the blue pattern to be K3")
        engine = "triangle"
    try:
        res = exact.ordered_ramsey(G, H, o["nmax"], budget=o["budget"], engine=engine)
    except exact.BudgetExceeded as e:
        payload = {"value": None, "budget_exceeded": {"N": e.N, "nodes": e.nodes}, "engine": engine}
        return Report(payload, f"unknown (budget exhausted at N={e.N})\n")
    value = res.value if isinstance(res.value, int) else str(res.value)
    cert = res.lower_certificate
    if cert is not None and o["certificate"]:
        Path(o["certificate"]).write_text(cert.to_text())
    payload = {"value": value, "engine": engine, "nmax": o["nmax"],
               "steps": [{"N": s.N, "arrows": s.arrows, "nodes": s.nodes_explored} for s in res.steps],
               "certificate": cert.to_text() if cert else None}
    rows = [["N", "arrows", "nodes"]] + [[s.N, int(s.arrows), s.nodes_explored] for s in res.steps]
    return Report(payload, f"{value}\n", rows)


def cmd_lll(cfg: RunConfig) -> Report:
    o = cfg.options
    if o["sample"]:
        v = _need(o, "v")
        scale = float(o["gamma_scale"]) if o["gamma_scale"] else float(v) ** float(_fraction(o["gamma"] or "1/4"))
        smp = lll.sample_lll_coloring(v, scale, cfg.seed, o["s"])
        c = smp.census()
        return Report(c, " ".join(f"{k}={c[k]}" for k in sorted(c)) + "\n")
    if o["preset"]:
        a, b, g, d = lll.PRESET_TUPLES[o["preset"]]
    else:
        if not (o["alpha"] and o["beta"] and o["gamma"]):
            raise UsageError("lll needs --preset NAME or --alpha, --beta, --gamma [--delta]")
        a, b, g, d = (_fraction(x) for x in (o["alpha"], o["beta"], o["gamma"], o["delta"] or "0"))
    p = lll.LLLParams(a, b, g, d, o["n"])
    base = math.e if o["log_base"] == "e" else 2
    rep = lll.audit_lll_conditions(p, log_base=base)
    bad = any(rep.sign_changes_after_crossover.values())
    d_ = rep.to_dict()
    text = " ".join(f"{f}={rep.margins[f]:.6g}" for f in "PQR") + \
        f" inequalities_ok={str(rep.inequalities['ok']).lower()} crossover={rep.crossover_n}\n"
    return Report(d_, text, None, EXIT_VIOLATION if bad else EXIT_OK)


def cmd_density(cfg: RunConfig) -> Report:
    o = cfg.options
    base = math.e if o["log_base"] == "e" else 2
    rep = density.run_density_experiment(o["n"], o["samples"], cfg.seed, log_base=base,
                                         enumerate_all=o["enumerate"], workers=_workers(cfg))
    s = rep.summary()
    text = (f"n={rep.n} samples={rep.samples} prop1_fail_rate={rep.prop1_fail_rate:.6f} "
            f"prop2_fail_rate={rep.prop2_fail_rate:.6f}\n")
    rows = [density.CSV_HEADER] + [r.csv_row() for r in rep.rows]
    return Report(s, text, rows)


def cmd_bound(cfg: RunConfig) -> Report:
    o = cfg.options
    n = o["n"]
    if o["ell"] is None:
        b = scanning.theorem4_bound(n)
        return Report({"n": n, "ell": "3*sqrt(n)", "bound": b}, f"{b}\n", [["n", "bound"], [n, b]])
    ell = _fraction(o["ell"])
    b = scanning.theorem5_bound(n, ell)
    return Report({"n": n, "ell": ell, "bound": b, "threads": scanning.default_thread_count(n, ell)},
                  f"{b}\n", [["n", "ell", "bound"], [n, str(ell), b]])


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text", help="report format (default: text)")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default: 0)")
    common.add_argument("--threads", type=int, metavar="K", help="worker processes for sampling (default: all cores)")

    p = argparse.ArgumentParser(prog="ordramsey", description="Ordered matchings versus triangles: "
                                "constructions, scanning, shift statistics, exact search.")
    sub = p.add_subparsers(dest="cmd", metavar="COMMAND", required=True)

    c = sub.add_parser("construct", parents=[common], help="build M_t or M_{k,t}",
                       description="Emit M_t or M_{k,t} as an ordered graph (text) or with its layout (json).")
    c.add_argument("kind", choices=["m-t", "m-kt"], help="which construction")
    c.add_argument("--k", type=int, help="number of classes (m-kt)")
    c.add_argument("--t", type=int, help="grid size")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a structural property or a certificate",
                       description="Checks: density (M_t), lemma6 (M_{k,t}), superblocks, certificate, shift.")
    v.add_argument("what", choices=["density", "lemma6", "superblocks", "certificate", "shift"], help="which check")
    v.add_argument("--k", type=int, help="number of classes (lemma6, superblocks)")
    v.add_argument("--t", type=int, help="grid size (density, lemma6, superblocks)")
    v.add_argument("--min-length", type=int, help="interval length for the density check (default: 2t)")
    v.add_argument("--strict", action="store_true", help="lemma6: fail when part (a) is vacuous")
    v.add_argument("--coloring", metavar="FILE", help="edge coloring to check (certificate)")
    v.add_argument("--red", metavar="PATTERN", help="red pattern (certificate)")
    v.add_argument("--blue", metavar="PATTERN", help="blue pattern (certificate)")
    v.add_argument("--perm", metavar="FILE", help="permutation file (shift)")
    v.add_argument("--pi", metavar="'P1 P2 ...'", help="permutation inline (shift)")
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("lstat", parents=[common], help="shift statistic L of one or many permutations",
                        description="L(pi) for one permutation, or its distribution over random or all permutations.")
    ls.add_argument("--perm", metavar="FILE", help="permutation file (one line)")
    ls.add_argument("--pi", metavar="'P1 P2 ...'", help="permutation inline")
    ls.add_argument("--bruteforce", action="store_true", help="also run the exhaustive oracle (n <= 10)")
    ls.add_argument("--n", type=int, help="permutation size for sampling")
    ls.add_argument("--samples", type=int, default=1000, help="random permutations to draw (default: 1000)")
    ls.add_argument("--enumerate", action="store_true", help="all n! permutations instead of sampling")
    ls.add_argument("--threshold", type=float, help="exceedance threshold (default: 3 sqrt(n))")
    ls.set_defaults(func=cmd_lstat)

    sc = sub.add_parser("scan", parents=[common], help="multi-thread scan or full certificate check",
                        description="Scan a color matrix for a red matching, or classify a coloring of K_2N.")
    sc.add_argument("--matrix", metavar="FILE", help="R/B grid")
    sc.add_argument("--perm", metavar="FILE", help="permutation file for --matrix")
    sc.add_argument("--pi", metavar="'P1 P2 ...'", help="permutation inline for --matrix")
    sc.add_argument("--T", type=int, help="number of threads (default: ceil(sqrt(n / max(L, 1))))")
    sc.add_argument("--coloring", metavar="FILE", help="edge coloring of K_2N")
    sc.add_argument("--pattern", metavar="FILE", help="perfect-bipartite matching (.og)")
    sc.add_argument("--ell", help="shift bound used for thread count and precondition (rational)")
    sc.set_defaults(func=cmd_scan)

    ex = sub.add_parser("exact", parents=[common], help="exact ordered Ramsey number",
                        description="Smallest N <= nmax with every coloring of K_N holding a red G or a blue H. "
                        "Patterns are .og files or the names edge, K<m>.")
    ex.add_argument("--pattern-red", "--red", dest="red", metavar="PATTERN", help="pattern G wanted in red")
    ex.add_argument("--pattern-blue", "--blue", dest="blue", metavar="PATTERN", help="pattern H wanted in blue")
    ex.add_argument("--nmax", type=int, required=True, help="largest N tried")
    ex.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET, help="node budget per N")
    ex.add_argument("--engine", choices=["dfs", "sat"], default="dfs", help="backtracking or SAT solver (default: dfs)")
    ex.add_argument("--specialize-triangle", action="store_true", help="triangle-free blue search (blue = K3)")
    ex.add_argument("--certificate", metavar="PATH", help="write the largest good coloring found")
    ex.set_defaults(func=cmd_exact)

    lp = sub.add_parser("lll", parents=[common], help="local-lemma parameter audit or random coloring census",
                        description="Audit the local-lemma conditions at scale n, or sample the sparse-blue coloring.")
    lp.add_argument("--preset", choices=sorted(lll.PRESET_TUPLES), help="use a stored parameter tuple")
    lp.add_argument("--alpha", help="rational, e.g. 3/4")
    lp.add_argument("--beta", help="rational")
    lp.add_argument("--gamma", help="rational; with --sample, sets gamma_scale = v^gamma")
    lp.add_argument("--delta", help="rational (default: 0)")
    lp.add_argument("--n", type=float, default=1e6, help="evaluation scale (default: 1e6)")
    lp.add_argument("--log-base", choices=["2", "e"], default="2", help="base of lg in the exponents (default: 2)")
    lp.add_argument("--sample", action="store_true", help="sample a coloring instead of auditing")
    lp.add_argument("--v", type=int, help="vertices of the sampled coloring")
    lp.add_argument("--gamma-scale", help="n^gamma; blue probability is 1/(2 gamma_scale)")
    lp.add_argument("--s", type=int, default=2, help="side of the red K_{s,s} census")
    lp.set_defaults(func=cmd_lll)

    dn = sub.add_parser("density", parents=[common], help="interval density of random matchings",
                        description="Failure rates of both interval-density properties over random matchings.")
    dn.add_argument("--n", type=int, required=True, help="matching size (2n vertices)")
    dn.add_argument("--samples", type=int, default=200, help="random matchings (default: 200)")
    dn.add_argument("--enumerate", action="store_true", help="all n! matchings (small n)")
    dn.add_argument("--log-base", choices=["2", "e"], default="2", help="base of lg in the thresholds (default: 2)")
    dn.set_defaults(func=cmd_density)

    b = sub.add_parser("bound", parents=[common], help="upper bound 4n(sqrt(n ell) + 1)",
                       description="ceil(4n(sqrt(n ell) + 1)); without --ell, ell = 3 sqrt(n).")
    b.add_argument("--n", type=int, required=True, help="matching size")
    b.add_argument("--ell", help="shift bound (rational)")
    b.set_defaults(func=cmd_bound)
    return p


def render(cfg: RunConfig, rep: Report) -> str:
    if cfg.format == "json":
        return _json(rep.payload)
    if cfg.format == "csv":
        return _csv(rep.csv_rows if rep.csv_rows is not None else _flat_rows(rep.payload))
    return rep.text


def dispatch(cfg: RunConfig, func) -> int:
    rep = func(cfg)
    out = render(cfg, rep)
    if cfg.out:
        Path(cfg.out).write_text(out)
    else:
        sys.stdout.write(out)
    return rep.status


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return dispatch(cfg, ns.func)
    except (UsageError, FormatError, ValueError, OSError) as e:
        print(f"ordramsey {cfg.subcommand}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
