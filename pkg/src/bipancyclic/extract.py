"""Certified extraction of a cycle of length 2n-2.

Works on hamiltonian n/2-regular balanced bipartite graphs with n >= 6.
The graph is renumbered along a Hamilton cycle x_1 y_1 ... x_n y_n. Then
three sources of a long cycle are tried in order:

* a chord x_i y_{i-2} or x_i y_{i+1}, which shortcuts the Hamilton cycle
  past one Hamilton edge (``condition1a`` / ``condition1b``);
* two parallel chords x_i y_j, x_{i+1} y_{j+1} with j - i in {2..n-3},
  which splice the cycle while dropping x_{j+1} and y_i (``condition2``);
* otherwise the signed adjacency matrix is rigid enough to force
  x_{i0-1} y_{i0+1}, x_{i0} y_{i0+k} and x_{i0+k} y_{i0} for some i0 and k
  (``structural``).

Every witness is certified edge by edge before a report is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from . import _kernels
from .errors import (
    InvalidInput,
    NotBalancedRegular,
    NotCanonical,
    NotHamiltonian,
    NotRegular,
    PreconditionFailed,
    TheoremViolation,
    TooSmall,
)
from .graph import (
    BalancedBipartiteGraph,
    CycleWitness,
    HamiltonLabeling,
    Vertex,
    find_hamilton_cycle,
    validate_cycle,
    wrap,
)


class Method(str, enum.Enum):
    CONDITION1A = "condition1a"
    CONDITION1B = "condition1b"
    CONDITION2 = "condition2"
    STRUCTURAL = "structural"


# kernel method codes, index = code
METHODS = (None, Method.CONDITION1A, Method.CONDITION1B, Method.CONDITION2, Method.STRUCTURAL)
M_C1A, M_C1B, M_C2, M_STRUCT = 1, 2, 3, 4

# kernel status codes
S_OK, S_NOT_HAMILTONIAN, S_PRECONDITION, S_NO_K = 0, 1, 2, 3

# layout of the structural flag vector
F_BORDER, F_BAND_PLUS, F_BAND_MINUS, F_BAND_BALANCE, F_ROWS, F_COLS = range(6)
V_BORDER, V_BAND_PLUS_I, V_BAND_PLUS_J, V_BAND_MINUS_I, V_BAND_MINUS_J, V_BAND_BALANCE = range(6, 12)
N_FLAGS = 12


@njit(cache=True)
def _bit(rows, n, i, j):
    return (rows[i % n] >> (j % n)) & 1


@njit(cache=True)
def _sign(rows, n, i, j):
    return 1 if (rows[i % n] >> (j % n)) & 1 else -1


@njit(cache=True)
def condition1_kernel(rows, n, seq):
    """Lowest i with a chord x_i y_{i-2} (code 1) or x_i y_{i+1} (code 2)."""
    for i in range(n):
        if _bit(rows, n, i, i - 2):
            # x_i y_i x_{i+1} ... x_{i-2} y_{i-2}
            for t in range(n - 1):
                seq[2 * t] = (i + t) % n
                seq[2 * t + 1] = (i + t) % n
            return M_C1A, i
        if _bit(rows, n, i, i + 1):
            # x_i y_{i+1} x_{i+2} y_{i+2} ... x_{i-1} y_{i-1}
            seq[0] = i
            seq[1] = (i + 1) % n
            for t in range(1, n - 1):
                seq[2 * t] = (i + t + 1) % n
                seq[2 * t + 1] = (i + t + 1) % n
            return M_C1B, i
    return 0, -1


@njit(cache=True)
def condition2_kernel(rows, n, seq):
    """Lowest (i, j - i) with chords x_i y_j and x_{i+1} y_{j+1} on the band."""
    for i in range(n):
        for off in range(2, n - 2):
            j = (i + off) % n
            if _bit(rows, n, i, j) and _bit(rows, n, i + 1, j + 1):
                p = 0
                seq[p] = i
                p += 1
                # back along H: y_j x_j y_{j-1} ... y_{i+1} x_{i+1}
                for t in range(off):
                    seq[p] = (j - t) % n
                    seq[p + 1] = (j - t) % n
                    p += 2
                # forward along H: y_{j+1} x_{j+2} y_{j+2} ... x_{i-1} y_{i-1}
                seq[p] = (j + 1) % n
                p += 1
                for t in range(2, n - off):
                    seq[p] = (j + t) % n
                    seq[p + 1] = (j + t) % n
                    p += 2
                return True, i, j
    return False, -1, -1


@njit(cache=True)
def structural_flags_kernel(rows, n, flags):
    for t in range(F_COLS + 1):
        flags[t] = 1
    for t in range(V_BORDER, N_FLAGS):
        flags[t] = -1
    for i in range(n):
        if not (
            _bit(rows, n, i, i - 1)
            and _bit(rows, n, i, i)
            and not _bit(rows, n, i, i - 2)
            and not _bit(rows, n, i, i + 1)
        ):
            if flags[F_BORDER]:
                flags[V_BORDER] = i
            flags[F_BORDER] = 0
        for off in range(2, n - 2):
            here = _sign(rows, n, i, i + off)
            nxt = _sign(rows, n, i + 1, i + 1 + off)
            if here == 1 and nxt != -1 and flags[F_BAND_PLUS]:
                flags[F_BAND_PLUS] = 0
                flags[V_BAND_PLUS_I] = i
                flags[V_BAND_PLUS_J] = (i + off) % n
            if here == -1 and nxt != 1 and flags[F_BAND_MINUS]:
                flags[F_BAND_MINUS] = 0
                flags[V_BAND_MINUS_I] = i
                flags[V_BAND_MINUS_J] = (i + off) % n
        even = 0
        odd = 0
        for off in range(2, n - 3, 2):
            even += _sign(rows, n, i, i + off)
        for off in range(3, n - 2, 2):
            odd += _sign(rows, n, i, i + off)
        if (even != 0 or odd != 0) and flags[F_BAND_BALANCE]:
            flags[F_BAND_BALANCE] = 0
            flags[V_BAND_BALANCE] = i
    for i in range(n):
        rs = 0
        cs = 0
        for j in range(n):
            rs += _sign(rows, n, i, j)
            cs += _sign(rows, n, j, i)
        if rs != 0:
            flags[F_ROWS] = 0
        if cs != 0:
            flags[F_COLS] = 0


@njit(cache=True)
def structural_search_kernel(rows, n):
    """i0 with a^{i0}_{i0+2} = -1 and the smallest k with both cross chords; k = -1 if none."""
    i0 = 0 if not _bit(rows, n, 0, 2) else 1
    for k in range(3, n - 2):
        if _bit(rows, n, i0, i0 + k) and _bit(rows, n, i0 + k, i0):
            return i0, k
    return i0, -1


@njit(cache=True)
def structural_witness_kernel(n, i0, k, seq):
    # x_{i0-1} y_{i0+1} x_{i0+2} ... y_{i0+k-1} x_{i0+k} y_{i0} x_{i0} y_{i0+k} x_{i0+k+1} ... y_{i0-2}
    seq[0] = (i0 - 1) % n
    p = 1
    for t in range(1, k):
        seq[p] = (i0 + t) % n
        seq[p + 1] = (i0 + t + 1) % n
        p += 2
    seq[p] = i0 % n
    seq[p + 1] = i0 % n
    p += 2
    for t in range(k, n - 2):
        seq[p] = (i0 + t) % n
        seq[p + 1] = (i0 + t + 1) % n
        p += 2
    seq[p] = (i0 + n - 2) % n


@njit(cache=True)
def extract_canonical_kernel(rows, n, seq, info):
    """Run the three branches on a canonically labeled graph.

    ``info`` receives (method, a, b, c, omitted x, omitted y), 0-based.
    """
    for t in range(6):
        info[t] = -1
    code, i = condition1_kernel(rows, n, seq)
    if code == M_C1A:
        info[0] = M_C1A
        info[1] = i
        info[4] = (i - 1) % n
        info[5] = (i - 1) % n
        return S_OK
    if code == M_C1B:
        info[0] = M_C1B
        info[1] = i
        info[4] = (i + 1) % n
        info[5] = i
        return S_OK
    found, i, j = condition2_kernel(rows, n, seq)
    if found:
        info[0] = M_C2
        info[1] = i
        info[2] = j
        info[4] = (j + 1) % n
        info[5] = i
        return S_OK
    flags = np.zeros(N_FLAGS, np.int64)
    structural_flags_kernel(rows, n, flags)
    for t in range(F_COLS + 1):
        if not flags[t]:
            return S_PRECONDITION
    if n % 4 != 0:
        return S_PRECONDITION
    i0, k = structural_search_kernel(rows, n)
    info[0] = M_STRUCT
    info[1] = i0
    if k < 0:
        return S_NO_K
    structural_witness_kernel(n, i0, k, seq)
    info[2] = k
    info[3] = (n - 4) // 4
    info[4] = (i0 + 1) % n
    info[5] = (i0 - 1) % n
    return S_OK


@njit(cache=True)
def extract_kernel(rows, n, seq, info, xo, yo):
    """Hamilton search, renumbering and branch dispatch; witness in input labels."""
    full = (np.int64(1) << n) - 1
    if not _kernels.hamilton_search(rows, n, full, full, xo, yo):
        return S_NOT_HAMILTONIAN
    canon = _kernels.relabel(rows, n, xo, yo)
    status = extract_canonical_kernel(canon, n, seq, info)
    if status != S_OK:
        return status
    for t in range(2 * n - 2):
        seq[t] = xo[seq[t]] if t % 2 == 0 else yo[seq[t]]
    info[4] = xo[info[4]]
    info[5] = yo[info[5]]
    return S_OK


@dataclass(frozen=True)
class ExtractionReport:
    n: int
    method: Method
    indices: dict
    witness: CycleWitness
    omitted: tuple[Vertex, Vertex]
    omitted_adjacent: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "method": self.method.value,
            "indices": dict(self.indices),
            "cycle": [[s, v] for s, v in self.witness.labelled()],
            "omitted": [list(v) for v in self.omitted],
            "omitted_adjacent": self.omitted_adjacent,
        }


@dataclass(frozen=True)
class StructuralCheck:
    border: bool
    band_plus: bool
    band_minus: bool
    band_balance: bool
    row_sums_zero: bool
    column_sums_zero: bool
    l: Optional[int]
    # law name -> first failing (i,) or (i, j), 1-based
    violations: dict

    @property
    def passes(self) -> bool:
        return (
            self.border
            and self.band_plus
            and self.band_minus
            and self.band_balance
            and self.row_sums_zero
            and self.column_sums_zero
            and self.l is not None
        )


def _require_canonical_even(g: BalancedBipartiteGraph) -> None:
    if g.n % 2 or g.n < 6:
        raise InvalidInput(f"n must be even and at least 6, got {g.n}")
    if not g.is_canonical():
        raise NotCanonical("graph is not in canonical Hamilton labeling")


def _require_regular_class(g: BalancedBipartiteGraph) -> None:
    if not g.is_half_regular():
        raise NotBalancedRegular(f"graph is not {g.n / 2:g}-regular")
    if g.order <= 8:
        raise TooSmall(f"order {g.order} is at most 8")


def require_member(g: BalancedBipartiteGraph) -> HamiltonLabeling:
    """Validate class membership and return the Hamilton labeling found."""
    _require_regular_class(g)
    h = find_hamilton_cycle(g)
    if h is None:
        raise NotHamiltonian("not hamiltonian")
    return h


def _build_report(g, code, info, seq) -> ExtractionReport:
    n = g.n
    witness = CycleWitness.from_zero_based(seq)
    if not validate_cycle(g, witness, 2 * n - 2):
        raise TheoremViolation(f"witness {witness} failed certification")
    omitted_x, omitted_y = int(info[4]) + 1, int(info[5]) + 1
    if witness.missing(n) != ([omitted_x], [omitted_y]):
        raise TheoremViolation(f"witness {witness} does not omit x{omitted_x}, y{omitted_y}")
    method = METHODS[code]
    if method is Method.STRUCTURAL:
        indices = {"i0": int(info[1]) + 1, "k": int(info[2]), "l": int(info[3])}
    elif method is Method.CONDITION2:
        indices = {"i": int(info[1]) + 1, "j": int(info[2]) + 1}
    else:
        indices = {"i": int(info[1]) + 1}
    return ExtractionReport(
        n=n,
        method=method,
        indices=indices,
        witness=witness,
        omitted=(("x", omitted_x), ("y", omitted_y)),
        omitted_adjacent=g.has_edge(omitted_x, omitted_y),
    )


def extract_by_condition1(g: BalancedBipartiteGraph) -> Optional[ExtractionReport]:
    _require_canonical_even(g)
    n = g.n
    seq = np.zeros(2 * n - 2, np.int64)
    code, i = condition1_kernel(g.array(), n, seq)
    if code == 0:
        return None
    info = np.full(6, -1, np.int64)
    info[1] = i
    if code == M_C1A:
        info[4], info[5] = (i - 1) % n, (i - 1) % n
    else:
        info[4], info[5] = (i + 1) % n, i
    return _build_report(g, code, info, seq)


def extract_by_condition2(g: BalancedBipartiteGraph) -> Optional[ExtractionReport]:
    _require_canonical_even(g)
    n = g.n
    seq = np.zeros(2 * n - 2, np.int64)
    found, i, j = condition2_kernel(g.array(), n, seq)
    if not found:
        return None
    info = np.array([M_C2, i, j, -1, (j + 1) % n, i], np.int64)
    return _build_report(g, M_C2, info, seq)


def check_structural_constraints(g: BalancedBipartiteGraph) -> StructuralCheck:
    """Evaluate the sign-matrix laws on a canonical n/2-regular graph.

    border: a^i_{i-1} = a^i_i = 1 and a^i_{i-2} = a^i_{i+1} = -1;
    band_plus/band_minus: a^{i+1}_{j+1} = -a^i_j on the band j - i in {2..n-3};
    band_balance: for every i0 the even-offset and odd-offset band entries of
    row i0 each sum to zero.
    """
    if not g.is_half_regular():
        raise NotRegular(f"graph is not {g.n / 2:g}-regular")
    flags = np.zeros(N_FLAGS, np.int64)
    structural_flags_kernel(g.array(), g.n, flags)
    violations = {}
    if flags[V_BORDER] >= 0:
        violations["border"] = (int(flags[V_BORDER]) + 1,)
    if flags[V_BAND_PLUS_I] >= 0:
        violations["band_plus"] = (int(flags[V_BAND_PLUS_I]) + 1, int(flags[V_BAND_PLUS_J]) + 1)
    if flags[V_BAND_MINUS_I] >= 0:
        violations["band_minus"] = (int(flags[V_BAND_MINUS_I]) + 1, int(flags[V_BAND_MINUS_J]) + 1)
    if flags[V_BAND_BALANCE] >= 0:
        violations["band_balance"] = (int(flags[V_BAND_BALANCE]) + 1,)
    return StructuralCheck(
        border=bool(flags[F_BORDER]),
        band_plus=bool(flags[F_BAND_PLUS]),
        band_minus=bool(flags[F_BAND_MINUS]),
        band_balance=bool(flags[F_BAND_BALANCE]),
        row_sums_zero=bool(flags[F_ROWS]),
        column_sums_zero=bool(flags[F_COLS]),
        l=(g.n - 4) // 4 if g.n % 4 == 0 else None,
        violations=violations,
    )


def structural_indices(g: BalancedBipartiteGraph) -> tuple[int, Optional[int]]:
    """(i0, k), 1-based i0; k is None when no admissible k exists."""
    i0, k = structural_search_kernel(g.array(), g.n)
    return int(i0) + 1, (int(k) if k >= 0 else None)


def extract_structural(g: BalancedBipartiteGraph) -> ExtractionReport:
    _require_canonical_even(g)
    check = check_structural_constraints(g)
    if not check.passes:
        failed = sorted(check.violations) or ["n mod 4"]
        raise PreconditionFailed(f"structural constraints fail: {', '.join(failed)}")
    n = g.n
    i0, k = structural_search_kernel(g.array(), n)
    if k < 0:
        raise TheoremViolation(f"no admissible k for i0 = {i0 + 1}")
    seq = np.zeros(2 * n - 2, np.int64)
    structural_witness_kernel(n, i0, k, seq)
    info = np.array([M_STRUCT, i0, k, (n - 4) // 4, (i0 + 1) % n, (i0 - 1) % n], np.int64)
    return _build_report(g, M_STRUCT, info, seq)


def extract(g: BalancedBipartiteGraph) -> ExtractionReport:
    """Return a certified cycle of length 2n-2 for a class member.

    Branch indices refer to the graph renumbered along the Hamilton cycle
    found by :func:`find_hamilton_cycle`; for an already canonical graph
    that renumbering is the identity. The witness and omitted pair are in
    the input's own labels.
    """
    _require_regular_class(g)
    n = g.n
    seq = np.zeros(2 * n - 2, np.int64)
    info = np.zeros(6, np.int64)
    xo = np.zeros(n, np.int64)
    yo = np.zeros(n, np.int64)
    status = extract_kernel(g.array(), n, seq, info, xo, yo)
    if status == S_NOT_HAMILTONIAN:
        raise NotHamiltonian("not hamiltonian")
    if status == S_PRECONDITION:
        raise TheoremViolation("no chord shortcut exists and the sign matrix is not rigid")
    if status == S_NO_K:
        raise TheoremViolation(f"no admissible k for i0 = {info[1] + 1}")
    return _build_report(g, int(info[0]), info, seq)


def describe_indices(report: ExtractionReport) -> str:
    return " ".join(f"{k}={v}" for k, v in report.indices.items())


__all__ = [
    "ExtractionReport",
    "Method",
    "StructuralCheck",
    "check_structural_constraints",
    "extract",
    "extract_by_condition1",
    "extract_by_condition2",
    "extract_structural",
    "require_member",
    "structural_indices",
]
