"""Small named graphs used throughout the tests and docs."""

from .census import rebuild_from_first_row
from .graph import BalancedBipartiteGraph, from_edge_list, from_offsets


def g6() -> BalancedBipartiteGraph:
    """n = 6, x_i ~ y_i, y_{i-1}, y_{i+3}."""
    return from_offsets(6, [0, -1, 3])


def g6b() -> BalancedBipartiteGraph:
    """n = 6, x_i ~ y_i, y_{i-1}, y_{i+1}."""
    return from_offsets(6, [0, -1, 1])


def g8m() -> BalancedBipartiteGraph:
    """n = 8, x_i ~ y_i, y_{i-1}, y_{i+1}, y_{i+4}."""
    return from_offsets(8, [0, -1, 1, 4])


def g8s() -> BalancedBipartiteGraph:
    """n = 8 member with no chord shortcut; first band row (+, +, -, -)."""
    return rebuild_from_first_row(8, (1, 1, -1, -1)).to_graph()


def g8s_variant() -> BalancedBipartiteGraph:
    """Like :func:`g8s` with first band row (-, +, +, -)."""
    return rebuild_from_first_row(8, (-1, 1, 1, -1)).to_graph()


def _two_k33(joined: bool) -> BalancedBipartiteGraph:
    edges = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    edges += [(i, j) for i in (4, 5, 6) for j in (4, 5, 6)]
    if joined:
        edges.append((3, 4))
    return from_edge_list(6, edges)


def gdis() -> BalancedBipartiteGraph:
    """Two disjoint copies of K_{3,3}."""
    return _two_k33(joined=False)


def ges() -> BalancedBipartiteGraph:
    """Two copies of K_{3,3} joined by the single edge x_3 y_4."""
    return _two_k33(joined=True)


def k33() -> BalancedBipartiteGraph:
    return from_edge_list(3, [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)])


ALL = {
    "g6": g6,
    "g6b": g6b,
    "g8m": g8m,
    "g8s": g8s,
    "g8s-variant": g8s_variant,
    "gdis": gdis,
    "ges": ges,
    "k33": k33,
}
