"""Brute-force cycle oracle and bipancyclicity predicates.

Every positive answer here comes with an explicit cycle that has been
certified against the graph, so the oracle can serve as ground truth for
:mod:`bipancyclic.extract`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from . import _kernels
from .errors import TheoremViolation
from .extract import require_member
from .graph import BalancedBipartiteGraph, CycleWitness, Vertex, find_hamilton_cycle, validate_cycle


@njit(cache=True)
def lengths_mask_kernel(rows, n):
    """Bit L/2 set iff a certified cycle of length L exists, L = 4, 6, ..., 2n."""
    full = (np.int64(1) << n) - 1
    buf = np.zeros(2 * n, np.int64)
    mask = np.int64(0)
    for half in range(2, n + 1):
        length = 2 * half
        if _kernels.cycle_search(rows, n, length, full, full, buf):
            if _kernels.check_cycle(rows, n, buf[:length], length):
                mask |= np.int64(1) << half
    return mask


@njit(cache=True)
def omitting_pair_kernel(rows, n, xo, yo):
    """First edge (x, y) in (x, y) order whose removal leaves a hamiltonian graph."""
    full = (np.int64(1) << n) - 1
    for x in range(n):
        r = rows[x]
        for y in range(n):
            if (r >> y) & 1:
                xa = full & ~(np.int64(1) << x)
                ya = full & ~(np.int64(1) << y)
                if _kernels.hamilton_search(rows, n, xa, ya, xo, yo):
                    return x, y
    return -1, -1


def find_cycle_of_length(g: BalancedBipartiteGraph, length: int) -> Optional[CycleWitness]:
    if length % 2 or length < 4 or length > 2 * g.n:
        return None
    full = (1 << g.n) - 1
    out = np.zeros(length, np.int64)
    if not _kernels.cycle_search(g.array(), g.n, length, full, full, out):
        return None
    witness = CycleWitness.from_zero_based(out)
    if not validate_cycle(g, witness, length):
        raise TheoremViolation(f"oracle produced an invalid cycle {witness}")
    return witness


def has_cycle_of_length(g: BalancedBipartiteGraph, length: int) -> bool:
    return find_cycle_of_length(g, length) is not None


@dataclass(frozen=True)
class PancyclicityReport:
    n: int
    lengths_present: frozenset
    witnesses: dict = field(compare=False, repr=False)

    @property
    def is_bipancyclic(self) -> bool:
        return self.lengths_present == frozenset(range(4, 2 * self.n + 1, 2))

    @property
    def lengths_missing(self) -> list[int]:
        return [L for L in range(4, 2 * self.n + 1, 2) if L not in self.lengths_present]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lengths_present": sorted(self.lengths_present),
            "is_bipancyclic": self.is_bipancyclic,
        }


def is_bipancyclic(g: BalancedBipartiteGraph) -> PancyclicityReport:
    """Search each even length 4..2n independently."""
    witnesses = {}
    for length in range(4, 2 * g.n + 1, 2):
        w = find_cycle_of_length(g, length)
        if w is not None:
            witnesses[length] = w
    return PancyclicityReport(g.n, frozenset(witnesses), witnesses)


class ESVerdict(str, enum.Enum):
    PREDICT_BIPANCYCLIC = "predict-bipancyclic"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class ESPrediction:
    verdict: ESVerdict
    reason: Optional[str] = None  # "size-too-small" or "not-hamiltonian"

    @property
    def applies(self) -> bool:
        return self.verdict is ESVerdict.PREDICT_BIPANCYCLIC


def es_predict(g: BalancedBipartiteGraph) -> ESPrediction:
    """Hamiltonian with more than n^2/2 edges implies bipancyclic (Entringer-Schmeichel)."""
    if 2 * g.size() <= g.n * g.n:
        return ESPrediction(ESVerdict.NOT_APPLICABLE, "size-too-small")
    if find_hamilton_cycle(g) is None:
        return ESPrediction(ESVerdict.NOT_APPLICABLE, "not-hamiltonian")
    return ESPrediction(ESVerdict.PREDICT_BIPANCYCLIC)


class SecondAssertion(str, enum.Enum):
    CONFIRMED = "bipancyclic-confirmed"
    INCONCLUSIVE = "inconclusive"
    REFUTED = "refuted"


@dataclass(frozen=True)
class SecondAssertionReport:
    pair: Optional[tuple[Vertex, Vertex]]
    witness: Optional[CycleWitness]
    subgraph_size: Optional[int]
    # None until bipancyclicity has been checked, or when no pair exists
    bipancyclic_confirmed: Optional[bool] = None
    pancyclicity: Optional[PancyclicityReport] = field(default=None, compare=False)

    @property
    def outcome(self) -> SecondAssertion:
        if self.pair is None:
            return SecondAssertion.INCONCLUSIVE
        if self.bipancyclic_confirmed:
            return SecondAssertion.CONFIRMED
        if self.bipancyclic_confirmed is None:
            return SecondAssertion.INCONCLUSIVE
        return SecondAssertion.REFUTED

    def to_json(self) -> dict:
        out = {
            "pair": [list(v) for v in self.pair] if self.pair else None,
            "witness": [[s, v] for s, v in self.witness.labelled()] if self.witness else None,
            "subgraph_size": self.subgraph_size,
            "bipancyclic_confirmed": (
                "not-applicable" if self.bipancyclic_confirmed is None else self.bipancyclic_confirmed
            ),
            "outcome": self.outcome.value,
        }
        if self.pancyclicity is not None:
            out["lengths_present"] = sorted(self.pancyclicity.lengths_present)
        return out


def find_near_hamilton_omitting_adjacent_pair(g: BalancedBipartiteGraph) -> SecondAssertionReport:
    """First edge x'y' (by x, then y index) such that g - {x', y'} is hamiltonian."""
    require_member(g)
    n = g.n
    xo = np.zeros(n, np.int64)
    yo = np.zeros(n, np.int64)
    x, y = omitting_pair_kernel(g.array(), n, xo, yo)
    if x < 0:
        return SecondAssertionReport(pair=None, witness=None, subgraph_size=None)
    m = n - 1
    witness = CycleWitness(tuple(int(v) + 1 for pair in zip(xo[:m], yo[:m]) for v in pair))
    if not validate_cycle(g, witness, 2 * n - 2) or witness.missing(n) != ([x + 1], [y + 1]):
        raise TheoremViolation(f"pair scan produced an invalid cycle {witness}")
    xs, ys = g.degrees()
    return SecondAssertionReport(
        pair=(("x", int(x) + 1), ("y", int(y) + 1)),
        witness=witness,
        subgraph_size=g.size() - (xs[x] + ys[y] - 1),
    )


def assess_second_assertion(g: BalancedBipartiteGraph) -> SecondAssertionReport:
    report = find_near_hamilton_omitting_adjacent_pair(g)
    if report.pair is None:
        return report
    pancyclicity = is_bipancyclic(g)
    return SecondAssertionReport(
        pair=report.pair,
        witness=report.witness,
        subgraph_size=report.subgraph_size,
        bipancyclic_confirmed=pancyclicity.is_bipancyclic,
        pancyclicity=pancyclicity,
    )


def check_second_assertion(g: BalancedBipartiteGraph) -> SecondAssertion:
    return assess_second_assertion(g).outcome
