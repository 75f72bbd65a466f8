#!/usr/bin/env python3
"""Exact r_<(M, K3) for every perfect-bipartite matching M on up to 2n vertices,
next to the scanning upper bound ceil(4n(sqrt(n max(L,1)) + 1))."""
from dataclasses import dataclass
from itertools import permutations

from _config import parse_config
from ordramsey.exact import ordered_ramsey
from ordramsey.ordered import OrderedGraph, matching_from_permutation
from ordramsey.scanning import theorem5_bound
from ordramsey.shifts import shift_statistic


@dataclass
class Config:
    max_n: int = 4
    engine: str = "sat"


def main(cfg: Config):
    k3 = OrderedGraph.complete(3)
    print(f"{'pi':>10} {'L':>3} {'r':>4} {'bound':>6}")
    for n in range(1, cfg.max_n + 1):
        for pi in permutations(range(1, n + 1)):
            L = shift_statistic(pi)[0]
            bound = theorem5_bound(n, max(L, 1))
            r = ordered_ramsey(matching_from_permutation(pi), k3, bound, engine=cfg.engine).value
            print(f"{''.join(map(str, pi)):>10} {L:>3} {str(r):>4} {bound:>6}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
