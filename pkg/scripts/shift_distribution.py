#!/usr/bin/env python3
"""Distribution of the shift statistic L over random permutations.

Prints mean, max and the rate of L > threshold (default 3 sqrt(n)) for a
range of n, and writes the histograms as JSON.
"""
import json
import math
import time
from dataclasses import asdict, dataclass

from _config import parse_config
from ordramsey.shifts import sample_L_distribution


@dataclass
class Config:
    ns: str = "50,100,200,400"
    samples: int = 1000
    seed: int = 0
    workers: int = 1
    out: str = "shift_distribution.json"


def run(cfg: Config) -> list:
    rows = []
    for n in (int(x) for x in cfg.ns.split(",")):
        t0 = time.perf_counter()
        d = sample_L_distribution(n, cfg.samples, seed=cfg.seed, workers=cfg.workers)
        rows.append(dict(d.summary(), seconds=round(time.perf_counter() - t0, 2)))
        print(f"n={n:5d}  mean L={d.mean:7.2f}  mean/sqrt(n)={d.mean / math.sqrt(n):.3f}  "
              f"max={d.max:4d}  P[L>{d.threshold:.1f}]={d.exceedance_rate:.4f}")
    return rows


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__)
    rows = run(cfg)
    with open(cfg.out, "w") as fh:
        json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2, sort_keys=True)
