"""Edge counts between pairs of intervals via 2D prefix sums."""
from __future__ import annotations

import numpy as np


def prefix_sums(adj: np.ndarray) -> np.ndarray:
    s = np.zeros((adj.shape[0] + 1, adj.shape[1] + 1), dtype=np.int32)
    np.cumsum(np.cumsum(adj, axis=0, dtype=np.int32), axis=1, out=s[1:, 1:])
    return s


def window_pair_counts(s: np.ndarray, rows: tuple[int, int], cols: tuple[int, int],
                       len_r: int, len_c: int) -> np.ndarray:
    """Counts for every row window of length ``len_r`` inside ``rows`` and
    every column window of length ``len_c`` inside ``cols``.

    ``rows``/``cols`` are inclusive 1-based ranges; ``s`` is from
    :func:`prefix_sums`. Entry ``[a, b]`` is the window pair starting at
    ``rows[0] + a`` and ``cols[0] + b``.
    """
    r0, r1 = rows[0] - 1, rows[1] - len_r + 1  # 0-based starts, exclusive end
    c0, c1 = cols[0] - 1, cols[1] - len_c + 1
    if r1 <= r0 or c1 <= c0:
        return np.zeros((max(r1 - r0, 0), max(c1 - c0, 0)), dtype=np.int32)
    top = s[r0 + len_r:r1 + len_r]
    bot = s[r0:r1]
    return (top[:, c0 + len_c:c1 + len_c] - bot[:, c0 + len_c:c1 + len_c]
            - top[:, c0:c1] + bot[:, c0:c1])
