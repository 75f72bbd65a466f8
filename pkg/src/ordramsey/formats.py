"""Plain-text formats read and written by the command line.

* ordered graph (``.og``): first line ``n m``, then ``m`` lines ``u v``
  (1-based, any order; ``#`` starts a comment).
* permutation line: ``pi(1) pi(2) ... pi(n)`` separated by spaces.
* color matrix: ``N`` lines of ``R``/``B`` characters.
* edge coloring: ``N`` then ``C(N,2)`` ``R``/``B`` characters in lexicographic
  edge order (line breaks ignored).
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .ordered import OrderedGraph, check_permutation

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            out.append(ln)
    return out


def parse_og(text: str) -> OrderedGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty ordered-graph file")
    try:
        head = [int(x) for x in lines[0].split()]
        if len(head) != 2:
            raise FormatError("first line must be 'n m'")
        n, m = head
        edges = []
        for k, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"line {k}: expected 'u v', got {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(f"non-integer entry: {e}") from None
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, file has {len(edges)}")
    try:
        g = OrderedGraph(n, frozenset(edges))
    except ValueError as e:
        raise FormatError(str(e)) from None
    if g.n_edges != m:
        raise FormatError("duplicate edges")
    return g


def format_og(g: OrderedGraph) -> str:
    return "".join([f"{g.n_vertices} {g.n_edges}\n"] + [f"{u} {v}\n" for u, v in g.edge_list()])


def parse_permutation(text: str) -> tuple[int, ...]:
    lines = _lines(text)
    if len(lines) != 1:
        raise FormatError("a permutation file holds exactly one non-empty line")
    try:
        return check_permutation([int(x) for x in lines[0].replace(",", " ").split()])
    except ValueError as e:
        raise FormatError(f"not a permutation: {e}") from None


def format_permutation(pi) -> str:
    return " ".join(map(str, pi)) + "\n"


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None


def load_og(path: PathLike) -> OrderedGraph:
    return parse_og(read_text(path))


def load_permutation(path: PathLike) -> tuple[int, ...]:
    return parse_permutation(read_text(path))
