#!/usr/bin/env python3
"""Local-lemma margins for the built-in parameter tuples across n, in both log bases."""
import math
from dataclasses import dataclass

from _config import parse_config
from ordramsey.lll import PRESET_TUPLES, LLLParams, audit_lll_conditions


@dataclass
class Config:
    ns: str = "1e3,1e4,1e6,1e9"


def main(cfg: Config):
    for name, t in PRESET_TUPLES.items():
        print(f"{name}  (alpha, beta, gamma, delta) = {tuple(str(x) for x in t)}")
        for base in (2, math.e):
            for n in (float(x) for x in cfg.ns.split(",")):
                rep = audit_lll_conditions(LLLParams(*t, n=n), log_base=base)
                m = "  ".join(f"{k}={v:+.3e}" for k, v in sorted(rep.margins.items()))
                print(f"  base={base:.3g} n={n:.0e}  {m}  ok={rep.all_positive}")
        print(f"  crossover (base 2): {audit_lll_conditions(LLLParams(*t)).crossover_n}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
