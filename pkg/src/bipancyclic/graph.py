"""Balanced bipartite graphs, Hamilton labelings, signed matrices, witnesses.

All indices in this module's public surface are 1-based; residues are
mapped into 1..n, so index 0 means n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np

from . import _kernels
from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InvalidInput,
    InvalidLabeling,
    NotCanonical,
    ParseError,
)

# rows are packed into int64 masks
MAX_N = 62

Vertex = Tuple[str, int]


def wrap(i: int, n: int) -> int:
    """Map any integer index into 1..n."""
    return (i - 1) % n + 1


@dataclass(frozen=True)
class BalancedBipartiteGraph:
    """Bipartite graph on X = {x_1..x_n}, Y = {y_1..y_n}.

    ``rows[i-1]`` is a bitmask whose bit ``j-1`` is set iff x_i ~ y_j.
    """

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise InvalidInput(f"n must lie in 1..{MAX_N}, got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidInput("one row mask per x vertex required")
        full = (1 << self.n) - 1
        if any(r & ~full or r < 0 for r in self.rows):
            raise IndexOutOfRange("row mask has bits outside 1..n")

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def adj(self) -> np.ndarray:
        """n x n boolean adjacency, ``adj[i-1, j-1]`` iff x_i ~ y_j."""
        bits = (np.array(self.rows, dtype=np.int64)[:, None] >> np.arange(self.n)) & 1
        return bits.astype(bool)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[wrap(i, self.n) - 1] >> (wrap(j, self.n) - 1) & 1)

    def neighbours(self, side: str, index: int) -> list[int]:
        if side == "x":
            r = self.rows[index - 1]
            return [j + 1 for j in range(self.n) if r >> j & 1]
        if side == "y":
            return [i + 1 for i in range(self.n) if self.rows[i] >> (index - 1) & 1]
        raise ValueError(f"unknown side {side!r}")

    def degree(self, side: str, index: int) -> int:
        if not 1 <= index <= self.n:
            raise IndexOutOfRange(f"{side}{index} outside 1..{self.n}")
        return len(self.neighbours(side, index))

    def degrees(self) -> tuple[list[int], list[int]]:
        a = self.adj
        return a.sum(axis=1).tolist(), a.sum(axis=0).tolist()

    def size(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def edges(self) -> list[tuple[int, int]]:
        """Edges (i, j) sorted by x index, then y index."""
        return [
            (i + 1, j + 1)
            for i, r in enumerate(self.rows)
            for j in range(self.n)
            if r >> j & 1
        ]

    def is_regular(self, d: Optional[int] = None) -> bool:
        xs, ys = self.degrees()
        if d is None:
            d = xs[0]
        return all(v == d for v in xs) and all(v == d for v in ys)

    def is_half_regular(self) -> bool:
        """n/2-regular; impossible for odd n."""
        return self.n % 2 == 0 and self.is_regular(self.n // 2)

    def is_canonical(self) -> bool:
        """x_i y_i and x_{i+1} y_i are edges for every i."""
        return all(
            self.has_edge(i, i) and self.has_edge(i + 1, i) for i in range(1, self.n + 1)
        )


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> BalancedBipartiteGraph:
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise InvalidInput(f"n must be an integer in 1..{MAX_N}, got {n!r}")
    rows = [0] * n
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexOutOfRange(f"edge ({i}, {j}) outside 1..{n}")
        if rows[i - 1] >> (j - 1) & 1:
            raise DuplicateEdge(f"edge ({i}, {j}) listed twice")
        rows[i - 1] |= 1 << (j - 1)
    return BalancedBipartiteGraph(n, tuple(rows))


def from_offsets(n: int, offsets: Iterable[int]) -> BalancedBipartiteGraph:
    """Circulant graph with x_i ~ y_{i+o} for every offset o."""
    offsets = list(offsets)
    return from_edge_list(n, [(i, wrap(i + o, n)) for i in range(1, n + 1) for o in offsets])


_EDGE_LINE = re.compile(r"(\d+) (\d+)")
_N_LINE = re.compile(r"\d+")


def parse_edge_list(text: str) -> BalancedBipartiteGraph:
    """Parse the edge-list text format.

    First non-comment line holds ``n``; each later non-comment line is
    ``i j`` with a single space. Lines starting with ``#`` are comments.
    """
    n = None
    edges = []
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()
    for lineno, line in enumerate(lines, 1):
        if line.startswith("#"):
            continue
        if n is None:
            if not _N_LINE.fullmatch(line):
                raise ParseError(f"line {lineno}: expected vertex count, got {line!r}")
            n = int(line)
            continue
        m = _EDGE_LINE.fullmatch(line)
        if m is None:
            raise ParseError(f"line {lineno}: expected 'i j', got {line!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    if n is None:
        raise ParseError("missing vertex count line")
    return from_edge_list(n, edges)


def format_edge_list(g: BalancedBipartiteGraph) -> str:
    return "".join([f"{g.n}\n"] + [f"{i} {j}\n" for i, j in g.edges()])


def read_edge_list(path) -> BalancedBipartiteGraph:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not ASCII") from exc
    return parse_edge_list(text)


def write_edge_list(g: BalancedBipartiteGraph, path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="ascii")


@dataclass(frozen=True)
class CycleWitness:
    """Alternating vertex sequence x, y, x, y, ... closing back to the first x.

    ``vertices[2t]`` is an x index and ``vertices[2t+1]`` a y index.
    """

    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def labelled(self) -> list[Vertex]:
        return [("x" if t % 2 == 0 else "y", v) for t, v in enumerate(self.vertices)]

    def x_indices(self) -> set[int]:
        return set(self.vertices[0::2])

    def y_indices(self) -> set[int]:
        return set(self.vertices[1::2])

    def missing(self, n: int) -> tuple[list[int], list[int]]:
        """x and y indices of 1..n the cycle does not visit."""
        xs, ys = self.x_indices(), self.y_indices()
        return (
            [i for i in range(1, n + 1) if i not in xs],
            [j for j in range(1, n + 1) if j not in ys],
        )

    def __str__(self) -> str:
        return " ".join(f"{s}{v}" for s, v in self.labelled())

    @classmethod
    def from_zero_based(cls, seq) -> "CycleWitness":
        return cls(tuple(int(v) + 1 for v in seq))


def validate_cycle(g: BalancedBipartiteGraph, c: CycleWitness, expected_length: int) -> bool:
    seq = np.array(c.vertices, dtype=np.int64) - 1
    return bool(_kernels.check_cycle(g.array(), g.n, seq, expected_length))


@dataclass(frozen=True)
class HamiltonLabeling:
    """The cycle x_{x_order[0]} y_{y_order[0]} x_{x_order[1]} ... y_{y_order[-1]}."""

    x_order: Tuple[int, ...]
    y_order: Tuple[int, ...]

    def cycle(self) -> CycleWitness:
        return CycleWitness(tuple(v for pair in zip(self.x_order, self.y_order) for v in pair))

    def is_valid_for(self, g: BalancedBipartiteGraph) -> bool:
        full = list(range(1, g.n + 1))
        if sorted(self.x_order) != full or sorted(self.y_order) != full:
            return False
        return validate_cycle(g, self.cycle(), 2 * g.n)


def find_hamilton_cycle(g: BalancedBipartiteGraph) -> Optional[HamiltonLabeling]:
    full = (1 << g.n) - 1
    xo = np.zeros(g.n, np.int64)
    yo = np.zeros(g.n, np.int64)
    if not _kernels.hamilton_search(g.array(), g.n, full, full, xo, yo):
        return None
    return HamiltonLabeling(tuple(int(v) + 1 for v in xo), tuple(int(v) + 1 for v in yo))


def relabel_along_hamilton(g: BalancedBipartiteGraph, h: HamiltonLabeling) -> BalancedBipartiteGraph:
    """Renumber vertices so that ``h`` reads x_1 y_1 x_2 y_2 ... x_n y_n."""
    if len(h.x_order) != g.n or len(h.y_order) != g.n or not h.is_valid_for(g):
        raise InvalidLabeling("labeling is not a Hamilton cycle of the graph")
    xo = np.array(h.x_order, dtype=np.int64) - 1
    yo = np.array(h.y_order, dtype=np.int64) - 1
    rows = _kernels.relabel(g.array(), g.n, xo, yo)
    return BalancedBipartiteGraph(g.n, tuple(int(r) for r in rows))


@dataclass(frozen=True)
class SignedAdjacencyMatrix:
    """n x n matrix with +1 for edges x_i y_j and -1 for non-edges."""

    n: int
    a: np.ndarray

    def __post_init__(self):
        self.a.setflags(write=False)

    def entry(self, i: int, j: int) -> int:
        return int(self.a[wrap(i, self.n) - 1, wrap(j, self.n) - 1])

    def row_sums(self) -> list[int]:
        return self.a.sum(axis=1).tolist()

    def column_sums(self) -> list[int]:
        return self.a.sum(axis=0).tolist()

    def line_sums_vanish(self) -> bool:
        return not self.a.sum(axis=1).any() and not self.a.sum(axis=0).any()

    def first_row_band(self) -> tuple[int, ...]:
        """Entries a^1_3 .. a^1_{n-2}, the free part of a constrained matrix."""
        return tuple(int(v) for v in self.a[0, 2 : self.n - 2])

    def to_graph(self) -> BalancedBipartiteGraph:
        rows = tuple(
            sum(1 << j for j in range(self.n) if self.a[i, j] == 1) for i in range(self.n)
        )
        return BalancedBipartiteGraph(self.n, rows)

    def __eq__(self, other):
        if not isinstance(other, SignedAdjacencyMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.n, self.a.tobytes()))


def signed_matrix(g: BalancedBipartiteGraph) -> SignedAdjacencyMatrix:
    if not g.is_canonical():
        raise NotCanonical("graph is not in canonical Hamilton labeling")
    a = np.where(g.adj, 1, -1).astype(np.int8)
    return SignedAdjacencyMatrix(g.n, a)
