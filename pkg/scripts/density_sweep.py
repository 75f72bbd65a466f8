#!/usr/bin/env python3
"""Failure rates of the two interval-density properties of random matchings."""
import csv
import time
from dataclasses import dataclass

from _config import parse_config
from ordramsey.density import run_density_experiment


@dataclass
class Config:
    ns: str = "500,1000,2000"
    samples: int = 200
    seed: int = 0
    log_base: float = 2.0
    workers: int = 1
    out: str = "density_sweep.csv"


def main(cfg: Config):
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "samples", "L", "s_lo", "s_hi", "prop1_fail_rate", "prop2_fail_rate", "seconds"])
        for n in (int(x) for x in cfg.ns.split(",")):
            t0 = time.perf_counter()
            rep = run_density_experiment(n, cfg.samples, cfg.seed, log_base=cfg.log_base, workers=cfg.workers)
            s = rep.s_checked or ["", ""]
            dt = round(time.perf_counter() - t0, 1)
            w.writerow([n, rep.samples, rep.length_threshold, s[0], s[-1], rep.prop1_fail_rate,
                        rep.prop2_fail_rate, dt])
            print(f"n={n} L={rep.length_threshold} fail1={rep.prop1_fail_rate:.3f} "
                  f"fail2={rep.prop2_fail_rate:.3f} ({dt}s)")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
