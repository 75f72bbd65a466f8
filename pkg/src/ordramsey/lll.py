"""Local-lemma audit for the random red/blue coloring with sparse blue edges.

Edges of ``K_{n^beta}`` are blue independently with probability
``p = 1/(2 n^gamma)``. Three families of bad events are controlled: blue
triangles (P), red copies of graphs from a family of size ``<= e^{n^beta lg n}``
(Q) and red ordered ``K_{s,s}`` with ``s = 10 n^{1-alpha} lg n`` (R). The weights
are ``x = 1/(4 n^{3 gamma})``, ``y = e^{-2 n^beta lg n}``, ``z = e^{-21 n^{1-alpha} lg^2 n}``.

All quantities are natural-log internally. ``lg`` is the logarithm in the
chosen ``log_base`` (2 by default); it only enters as a multiplier inside
exponents, so switching it rescales those terms and nothing else.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

import numpy as np

from .coloring import EdgeColoring, random_coloring
from .rng import generator

Number = Union[int, float, Fraction]

PRESET_TUPLES = {
    "thm-bipartite": (Fraction(3, 4), Fraction(1, 2), Fraction(1, 4), Fraction(0)),
    "thm-kpartite": (Fraction(2, 3), Fraction(2, 3), Fraction(1, 3), Fraction(1, 6)),
}


class NumericInstability(ArithmeticError):
    def __init__(self, term: str, value: float):
        super().__init__(f"term {term!r} is not finite ({value})")
        self.term = term


@dataclass(frozen=True)
class LLLParams:
    alpha: Number
    beta: Number
    gamma: Number
    delta: Number = 0
    n: float = 10 ** 6

    def __post_init__(self):
        vals = (self.alpha, self.beta, self.gamma, self.delta)
        if not all(math.isfinite(float(v)) for v in vals):
            raise ValueError("parameters must be finite")
        if min(self.alpha, self.beta, self.gamma) <= 0 or self.delta < 0:
            raise ValueError("need alpha, beta, gamma > 0 and delta >= 0")
        if self.n < 2:
            raise ValueError("n must be at least 2")

    def at(self, n: float) -> "LLLParams":
        return LLLParams(self.alpha, self.beta, self.gamma, self.delta, n)


def _exact(v: Number) -> Fraction:
    return Fraction(v) if isinstance(v, (Rational, float)) else Fraction(str(v))


def check_param_inequalities(p: LLLParams) -> dict:
    """The three constraints, decided in exact rational arithmetic."""
    a, b, g, d = (_exact(v) for v in (p.alpha, p.beta, p.gamma, p.delta))
    checks = {
        "alpha+beta+gamma-delta<=3/2": a + b + g - d <= Fraction(3, 2),
        "beta<=2*gamma": b <= 2 * g,
        "alpha+gamma<=1": a + g <= 1,
    }
    violated = [k for k, ok in checks.items() if not ok]
    return {"ok": not violated, "violated": violated}


def _lg(n: float, base: float) -> float:
    return math.log(n) / math.log(base)


@dataclass(frozen=True)
class LLLWeights:
    log_x: float
    log_y: float
    log_z: float

    @classmethod
    def for_params(cls, p: LLLParams, log_base: float = 2) -> "LLLWeights":
        n, lg = float(p.n), _lg(p.n, log_base)
        a, b, g = float(p.alpha), float(p.beta), float(p.gamma)
        return cls(-math.log(4) - 3 * g * math.log(n),
                   -2 * n ** b * lg,
                   -21 * n ** (1 - a) * lg * lg)


@dataclass(frozen=True)
class EventBudget:
    log_IP: float
    log_IQ: float
    log_IR: float

    @classmethod
    def for_params(cls, p: LLLParams, log_base: float = 2) -> "EventBudget":
        n, lg = float(p.n), _lg(p.n, log_base)
        a, b = float(p.alpha), float(p.beta)
        return cls(3 * b * math.log(n), n ** b * lg, 20 * n ** (1 - a) * lg * lg)


def _log_one_minus(log_w: float) -> float:
    """``log(1 - w)`` from ``log w``."""
    return math.log1p(-math.exp(log_w))


def _times_log_one_minus(log_count: float, log_w: float) -> float:
    """``count * log(1 - w)`` without forming ``count`` (which may overflow)."""
    w = math.exp(log_w)
    if w == 0.0:
        return 0.0
    # -log1p(-w) = w (1 + w/2 + ...); take its log before adding log_count
    return -math.exp(log_count + math.log(-math.log1p(-w)))


@dataclass
class LLLAudit:
    params: dict
    n: float
    log_base: float
    margins: dict  # full log-space margins, positive = condition holds
    exponent_margins: dict  # the simplified inequalities at exponent level
    weights_log: dict
    budget_log: dict
    inequalities: dict
    crossover_n: Optional[dict] = None
    sign_changes_after_crossover: Optional[dict] = None
    base_sensitive: list = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return all(v > 0 for v in self.margins.values()) and all(v > 0 for v in self.exponent_margins.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["all_positive"] = self.all_positive
        return d


def _margins(p: LLLParams, log_base: float) -> tuple[dict, dict, LLLWeights, EventBudget]:
    n, lg = float(p.n), _lg(p.n, log_base)
    a, b, g, d = (float(v) for v in (p.alpha, p.beta, p.gamma, p.delta))
    w = LLLWeights.for_params(p, log_base)
    eb = EventBudget.for_params(p, log_base)
    log_p = -math.log(2) - g * math.log(n)
    l1p = _log_one_minus(log_p)

    # (1 - y)^{|I_Q|} (1 - z)^{|I_R|}: the concrete (1 - o(1)) factor
    tail = _times_log_one_minus(eb.log_IQ, w.log_y) + _times_log_one_minus(eb.log_IR, w.log_z)
    deps_P_of_P = 3 * n ** b
    deps_P_of_Q = 40 * n ** (1.5 - a + b + d) * lg
    deps_P_of_R = 100 * n ** (2 - 2 * a + b) * lg * lg
    edges_Q = 40 * n ** (1.5 - a + d) * lg
    edges_R = 100 * n ** (2 - 2 * a) * lg * lg
    l1x = _log_one_minus(w.log_x)

    terms = {
        "P.lhs": w.log_x + deps_P_of_P * l1x + tail,
        "P.pr": -math.log(8) - 3 * g * math.log(n),
        "Q.lhs": w.log_y + deps_P_of_Q * l1x + tail,
        "Q.pr": edges_Q * l1p,
        "R.lhs": w.log_z + deps_P_of_R * l1x + tail,
        "R.pr": edges_R * l1p,
    }
    for k, v in terms.items():
        if not math.isfinite(v):
            raise NumericInstability(k, v)
    margins = {f: terms[f + ".lhs"] - terms[f + ".pr"] for f in "PQR"}
    expo = {
        "P": math.log(2) - 0.75 * n ** (b - 3 * g),
        "Q": 20 * n ** (1.5 - a - g + d) - 2 * n ** b - 10 * n ** (1.5 - a + b - 3 * g + d),
        "R": 50 * n ** (2 - 2 * a - g) - 21 * n ** (1 - a) - 25 * n ** (2 - 2 * a + b - 3 * g),
    }
    return margins, expo, w, eb


def crossover_grid(lo: float = 2, hi: float = 1e8, points: int = 241) -> list[int]:
    return sorted({int(round(x)) for x in np.geomspace(lo, hi, points)})


def audit_lll_conditions(p: LLLParams, *, log_base: float = 2, scan: bool = True,
                         grid: Optional[list] = None) -> LLLAudit:
    """Signed margins of the three local-lemma conditions at scale ``p.n``.

    ``margins[f]`` is ``log(weight side) - log(Pr[event])`` with every product
    evaluated exactly in log space; ``exponent_margins[f]`` is the simplified
    sufficient inequality (right side minus left side). With ``scan`` the
    crossover over a log grid on ``[2, 1e8]`` is reported per family: the
    first grid point from which both margins stay positive.
    """
    margins, expo, w, eb = _margins(p, log_base)
    other = math.e if log_base == 2 else 2
    m2, e2, _, _ = _margins(p, other)
    sensitive = [f for f in "PQR" if (margins[f] > 0) != (m2[f] > 0) or (expo[f] > 0) != (e2[f] > 0)]
    rep = LLLAudit(
        params={k: str(getattr(p, k)) for k in ("alpha", "beta", "gamma", "delta")},
        n=p.n, log_base=log_base, margins=margins, exponent_margins=expo,
        weights_log={"x": w.log_x, "y": w.log_y, "z": w.log_z},
        budget_log={"IP": eb.log_IP, "IQ": eb.log_IQ, "IR": eb.log_IR},
        inequalities=check_param_inequalities(p), base_sensitive=sensitive,
    )
    if scan:
        rep.crossover_n, rep.sign_changes_after_crossover = _crossover(p, log_base, grid or crossover_grid())
    return rep


def _crossover(p: LLLParams, log_base: float, grid: list) -> tuple[dict, dict]:
    ok = {f: [] for f in "PQR"}
    for n in grid:
        m, e, _, _ = _margins(p.at(n), log_base)
        for f in "PQR":
            ok[f].append(m[f] > 0 and e[f] > 0)
    cross, changes = {}, {}
    for f, flags in ok.items():
        last_bad = max((i for i, v in enumerate(flags) if not v), default=-1)
        cross[f] = grid[last_bad + 1] if last_bad + 1 < len(grid) else None
        first_good = next((i for i, v in enumerate(flags) if v), None)
        changes[f] = first_good is not None and not all(flags[first_good:])
    return cross, changes


@dataclass
class LLLSample:
    coloring: EdgeColoring
    p_blue: float
    blue_edges: int
    blue_triangles: int
    s: int
    red_kss: float
    red_kss_exact: bool
    red_kss_stderr: float = 0.0

    def census(self) -> dict:
        return {"v": self.coloring.n, "p_blue": self.p_blue, "blue_edges": self.blue_edges,
                "blue_triangles": self.blue_triangles, "s": self.s, "red_kss": self.red_kss,
                "red_kss_exact": self.red_kss_exact, "red_kss_stderr": self.red_kss_stderr}


def count_blue_triangles(chi: EdgeColoring) -> int:
    a = chi.to_array().astype(np.int64)
    return int(np.trace(a @ a @ a) // 6)


def _kss_at(red: list[int], A: tuple[int, ...], s: int) -> int:
    common = ~0
    for u in A:
        common &= red[u]
    common &= ~((1 << (A[-1] + 1)) - 1)  # second class lies after the first
    return math.comb(bin(common).count("1"), s)


def count_red_kss(chi: EdgeColoring, s: int) -> int:
    """Exact number of red ordered ``K_{s,s}`` (first class entirely before the second)."""
    from itertools import combinations

    red = chi.red_masks()
    return sum(_kss_at(red, A, s) for A in combinations(range(chi.n), s))


def sample_lll_coloring(v: int, gamma_scale: float, seed: int = 0, s: int = 2, *,
                        exact_max_s: int = 3, kss_samples: int = 20000) -> LLLSample:
    """Random coloring of ``K_v`` with blue probability ``1/(2 gamma_scale)``.

    ``gamma_scale`` plays the role of ``n^gamma``; ``inf`` gives the all-red
    coloring. Red ``K_{s,s}`` are counted exactly for ``s <= exact_max_s`` and
    estimated from ``kss_samples`` uniform first classes otherwise.
    """
    if v < 2:
        raise ValueError("v must be at least 2")
    if not gamma_scale >= 1:
        raise ValueError("gamma_scale must be >= 1")
    p = 0.0 if math.isinf(gamma_scale) else 1.0 / (2.0 * gamma_scale)
    rng = generator(seed, 0)
    chi = random_coloring(v, p, rng)
    blue = bin(chi.bits).count("1")
    if s <= exact_max_s:
        return LLLSample(chi, p, blue, count_blue_triangles(chi), s, float(count_red_kss(chi, s)), True)
    red = chi.red_masks()
    total = math.comb(v, s)
    srng = generator(seed, 1)
    vals = np.empty(kss_samples)
    for i in range(kss_samples):
        A = tuple(sorted(int(x) for x in srng.choice(v, size=s, replace=False)))
        vals[i] = _kss_at(red, A, s)
    est = total * float(vals.mean())
    se = total * float(vals.std(ddof=1)) / math.sqrt(kss_samples) if kss_samples > 1 else float("inf")
    return LLLSample(chi, p, blue, count_blue_triangles(chi), s, est, False, se)
